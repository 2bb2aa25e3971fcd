#pragma once
// Test-side oracles, written independently of the library's engines on
// purpose: everything here enumerates whole cochain spaces with the
// dumbest possible loops and computes norms straight from definitions.
// Intentionally shares no helper code with include/cobex.

#include "cobex/cochain.hpp"
#include "cobex/complex.hpp"
#include "cobex/group.hpp"
#include "cobex/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

using cobex::CellComplex;
using cobex::Cochain;
using cobex::CoefficientGroup;
using cobex::GroupElem;
using cobex::Rational;

// every degree-k cochain as a dense value vector, odometer order
inline std::vector<std::vector<GroupElem>> all_cochains(
    const CellComplex& X, int k, const CoefficientGroup& A) {
  std::size_t n = std::size_t(X.cells(k));
  std::vector<std::vector<GroupElem>> out;
  std::vector<GroupElem> cur(n, 0);
  for (;;) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < n) {
      if (++cur[i] < A.order()) break;
      cur[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

inline std::size_t weight(const std::vector<GroupElem>& v) {
  std::size_t w = 0;
  for (auto x : v)
    if (x) ++w;
  return w;
}

// d* straight from the coface lists
inline std::vector<GroupElem> apply_d(const CellComplex& X, int k,
                                      const CoefficientGroup& A,
                                      const std::vector<GroupElem>& c) {
  std::vector<GroupElem> out(std::size_t(X.cells(k + 1)), 0);
  for (int t = 0; t < X.cells(k + 1); ++t) {
    GroupElem acc = 0;
    for (auto& [cell, coeff] : X.faces(k + 1, t))
      acc = A.add(acc, A.scale(coeff, c[std::size_t(cell)]));
    out[std::size_t(t)] = acc;
  }
  return out;
}

inline std::size_t dstar_norm(const CellComplex& X, int k,
                              const CoefficientGroup& A,
                              const std::vector<GroupElem>& c) {
  if (k == X.dim()) return 0;
  return weight(apply_d(X, k, A, c));
}

// the full cocycle subgroup of degree k, as dense vectors
inline std::vector<std::vector<GroupElem>> all_cocycles(
    const CellComplex& X, int k, const CoefficientGroup& A) {
  std::vector<std::vector<GroupElem>> out;
  for (auto& c : all_cochains(X, k, A))
    if (dstar_norm(X, k, A, c) == 0) out.push_back(c);
  return out;
}

// the full coboundary subgroup of degree k (zero subgroup when k == 0)
inline std::vector<std::vector<GroupElem>> all_coboundaries(
    const CellComplex& X, int k, const CoefficientGroup& A) {
  std::vector<std::vector<GroupElem>> out;
  if (k == 0) {
    out.emplace_back(std::size_t(X.cells(0)), 0);
    return out;
  }
  std::map<std::vector<GroupElem>, bool> seen;
  for (auto& b : all_cochains(X, k - 1, A)) seen[apply_d(X, k - 1, A, b)] = true;
  for (auto& [v, _] : seen) out.push_back(v);
  return out;
}

inline std::size_t hamming(const std::vector<GroupElem>& a,
                           const std::vector<GroupElem>& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++d;
  return d;
}

inline std::size_t distance_to(const std::vector<std::vector<GroupElem>>& set,
                               const std::vector<GroupElem>& c) {
  std::size_t best = std::size_t(-1);
  for (auto& z : set) best = std::min(best, hamming(c, z));
  return best;
}

// minimum of ||d c|| / dist(c, subgroup) over all cochains at positive
// distance; empty optional when no cochain has positive distance
inline std::optional<Rational> lambda(
    const CellComplex& X, int k, const CoefficientGroup& A,
    const std::vector<std::vector<GroupElem>>& subgroup) {
  std::optional<Rational> best;
  for (auto& c : all_cochains(X, k, A)) {
    std::size_t dist = distance_to(subgroup, c);
    if (dist == 0) continue;
    Rational r(std::int64_t(dstar_norm(X, k, A, c)), std::int64_t(dist));
    if (!best || r < *best) best = r;
  }
  return best;
}

inline std::optional<Rational> lambda_cocycle(const CellComplex& X, int k,
                                              const CoefficientGroup& A) {
  return lambda(X, k, A, all_cocycles(X, k, A));
}

inline std::optional<Rational> lambda_coboundary(const CellComplex& X, int k,
                                                 const CoefficientGroup& A) {
  // degree 0 measures against the cocycles (there are no (-1)-cochains)
  if (k == 0) return lambda_cocycle(X, 0, A);
  return lambda(X, k, A, all_coboundaries(X, k, A));
}

// boundary operator straight from the face lists: a k-chain goes to the
// signed sum of its faces
inline std::vector<GroupElem> apply_boundary(const CellComplex& X, int k,
                                             const CoefficientGroup& A,
                                             const std::vector<GroupElem>& q) {
  std::vector<GroupElem> out(std::size_t(X.cells(k - 1)), 0);
  for (int cell = 0; cell < X.cells(k); ++cell) {
    if (!q[std::size_t(cell)]) continue;
    for (auto& [face, coeff] : X.faces(k, cell))
      out[std::size_t(face)] =
          A.add(out[std::size_t(face)],
                A.scale(coeff, q[std::size_t(cell)]));
  }
  return out;
}

// smallest norm of a (k+1)-chain with the given boundary, by trying every
// single one; empty optional when nothing fills
inline std::optional<std::size_t> min_fill_norm(
    const CellComplex& X, int k, const CoefficientGroup& A,
    const std::vector<GroupElem>& p) {
  std::optional<std::size_t> best;
  for (auto& q : all_cochains(X, k + 1, A))
    if (apply_boundary(X, k + 1, A, q) == p) {
      std::size_t w = weight(q);
      if (!best || w < *best) best = w;
    }
  return best;
}

}  // namespace oracle
