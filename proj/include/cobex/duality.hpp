#pragma once
// Combinatorial Poincare duality for closed triangulated manifolds. The
// dual complex is the arrow-reversed primal, so the k-simplices and the
// (n-k)-dual-cells share ids and the transfer maps are relabelings. Over
// Z_2 that makes the boundary of a dual chain literally the same matrix
// as the primal codifferential, which is the identity the filling
// pipeline relies on.

#include "cobex/cochain.hpp"
#include "cobex/complex.hpp"
#include "cobex/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace cobex {

struct DualStructure {
  const CellComplex* primal = nullptr;
  std::shared_ptr<const CellComplex> dual;
  int n = 0;

  // id bijection between primal k-cells and dual (n-k)-cells
  int pd_index(int, int id) const { return id; }
};

namespace detail {

inline bool vertex_subset(const std::vector<int>& small,
                          const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// every n-cell containing the given k-simplex, by vertex containment
inline std::vector<int> star_top_cells(const CellComplex& X, int k, int cell) {
  const auto& vs = X.vertex_set(k, cell);
  std::vector<int> out;
  for (int t = 0; t < X.cells(X.dim()); ++t)
    if (vertex_subset(vs, X.vertex_set(X.dim(), t))) out.push_back(t);
  return out;
}

}  // namespace detail

// Partial closed-manifold check: simpliciality, every (n-1)-simplex on
// exactly two top cells, and connectivity of the link of every simplex of
// codimension >= 2 (walking between top cells through shared facets that
// still contain the simplex). Full PL-manifold recognition is not
// attempted.
inline void check_closed_manifold(const CellComplex& X) {
  int n = X.dim();
  require(n >= 1, errc::bad_parameters, "duality needs dimension >= 1");
  for (int k = 0; k <= n; ++k)
    for (int c = 0; c < X.cells(k); ++c)
      require(int(X.vertex_set(k, c).size()) == k + 1, errc::bad_parameters,
              "duality needs a simplicial complex; cell " + std::to_string(c) +
                  " of dimension " + std::to_string(k) + " of '" + X.name() +
                  "' is not a simplex");

  for (int f = 0; f < X.cells(n - 1); ++f)
    require(X.cofaces(n - 1, f).size() == 2, errc::not_closed_manifold,
            "simplex " + std::to_string(f) + " of dimension " +
                std::to_string(n - 1) + " lies in " +
                std::to_string(X.cofaces(n - 1, f).size()) +
                " top cells; a closed manifold needs exactly 2");

  for (int k = 0; k <= n - 2; ++k)
    for (int c = 0; c < X.cells(k); ++c) {
      auto star = detail::star_top_cells(X, k, c);
      require(!star.empty(), errc::not_closed_manifold,
              "simplex " + std::to_string(c) + " of dimension " +
                  std::to_string(k) + " lies in no top cell");
      // union-find over the star through facets still containing the simplex
      std::map<int, int> comp;
      for (int t : star) comp[t] = t;
      auto find = [&](int t) {
        while (comp[t] != t) t = comp[t] = comp[comp[t]];
        return t;
      };
      const auto& vs = X.vertex_set(k, c);
      for (int t : star)
        for (auto& [f, coeff] : X.faces(n, t)) {
          if (!detail::vertex_subset(vs, X.vertex_set(n - 1, f))) continue;
          for (auto& [t2, coeff2] : X.cofaces(n - 1, f))
            if (comp.count(t2)) comp[find(t)] = find(t2);
        }
      for (int t : star)
        require(find(t) == find(star.front()), errc::disconnected_link,
                "link of simplex " + std::to_string(c) + " of dimension " +
                    std::to_string(k) + " is disconnected");
    }
}

inline DualStructure dual_complex(const CellComplex& X) {
  check_closed_manifold(X);
  DualStructure ds;
  ds.primal = &X;
  ds.n = X.dim();
  ds.dual = std::make_shared<CellComplex>(
      transpose_complex(X, "dual(" + X.name() + ")"));
  return ds;
}

namespace detail {

inline void check_z2(const CoefficientGroup& A) {
  require(A.order() == 2, errc::coefficient_not_supported,
          "duality transfer is implemented over Z2 only (general "
          "coefficients need an orientation system); got " + A.name());
}

}  // namespace detail

// dual k-chain -> primal (n-k)-cochain, a pure relabeling
inline Cochain pd_to_primal(const DualStructure& ds, const Cochain& x) {
  require(x.complex().instance_id() == ds.dual->instance_id(),
          errc::complex_mismatch, "chain does not live on the dual complex");
  detail::check_z2(x.group());
  Cochain out(*ds.primal, ds.n - x.degree(), x.group());
  for (auto& [cell, v] : x.entries()) out.set(ds.pd_index(x.degree(), cell), v);
  return out;
}

// primal k-cochain -> dual (n-k)-chain
inline Cochain pd_to_dual(const DualStructure& ds, const Cochain& c) {
  require(c.complex().instance_id() == ds.primal->instance_id(),
          errc::complex_mismatch, "cochain does not live on the primal");
  detail::check_z2(c.group());
  Cochain out(*ds.dual, ds.n - c.degree(), c.group());
  for (auto& [cell, v] : c.entries()) out.set(ds.pd_index(c.degree(), cell), v);
  return out;
}

}  // namespace cobex
