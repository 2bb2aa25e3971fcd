#pragma once
// Coboundary membership. The coboundaries in degree k are the column
// space of the codifferential matrix from degree k-1; we keep that space
// in canonical form (bit basis over Z/2, Howell basis per cyclic factor
// otherwise) so membership, witness extraction, coset labels, and the
// subgroup size all come from one structure.

#include "cobex/cochain.hpp"
#include "cobex/complex.hpp"
#include "cobex/errors.hpp"
#include "cobex/gf2.hpp"
#include "cobex/group.hpp"
#include "cobex/zmod.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace cobex {

class CoboundarySolver {
 public:
  // use_generic forces the modular path even for Z/2 (used by tests to
  // cross-check the bit-packed path)
  CoboundarySolver(const CellComplex& X, int degree,
                   const CoefficientGroup& A, bool use_generic = false)
      : X_(&X), degree_(degree), group_(A) {
    require(degree >= 0 && degree <= X.dim(), errc::bad_parameters,
            "degree out of range");
    int ncells = X.cells(degree);
    int nfaces = degree >= 1 ? X.cells(degree - 1) : 0;
    if (A.is_z2() && !use_generic) {
      std::vector<BitVec> rows(std::size_t(nfaces), BitVec{std::size_t(ncells)});
      for (int f = 0; f < nfaces; ++f)
        for (auto& [cell, coeff] : X.cofaces(degree - 1, f))
          if (coeff % 2) rows[std::size_t(f)].flip(std::size_t(cell));
      gf2_ = std::make_unique<Gf2RowBasis>(rows, std::size_t(ncells));
    } else {
      for (auto m : A.factors()) {
        std::vector<std::vector<std::int64_t>> rows(
            std::size_t(nfaces), std::vector<std::int64_t>(std::size_t(ncells), 0));
        for (int f = 0; f < nfaces; ++f)
          for (auto& [cell, coeff] : X.cofaces(degree - 1, f))
            rows[std::size_t(f)][std::size_t(cell)] =
                ((coeff % m) + m) % m;
        zm_.push_back(
            std::make_unique<ZmRowBasis>(rows, std::size_t(ncells), m));
      }
    }
  }

  const CellComplex& complex() const { return *X_; }
  int degree() const { return degree_; }
  const CoefficientGroup& group() const { return group_; }
  bool uses_bit_path() const { return gf2_ != nullptr; }
  const Gf2RowBasis* bit_basis() const { return gf2_.get(); }
  const ZmRowBasis& factor_basis(std::size_t j) const { return *zm_[j]; }

  // number of coboundaries |B^k|
  std::uint64_t subgroup_size() const {
    if (gf2_) return std::uint64_t(1) << gf2_->rank();
    std::uint64_t s = 1;
    for (auto& b : zm_) s *= b->subgroup_size();
    return s;
  }

  // canonical label of c + B^k; equal labels <=> same coset
  std::vector<std::int64_t> label(const Cochain& c) const {
    check(c);
    std::vector<std::int64_t> out;
    int n = X_->cells(degree_);
    if (gf2_) {
      BitVec v{std::size_t(n)};
      for (auto& [cell, val] : c.entries()) v.set(std::size_t(cell), val & 1);
      BitVec r = gf2_->reduce(v);
      out.reserve(std::size_t(n));
      for (int i = 0; i < n; ++i) out.push_back(r.get(std::size_t(i)));
      return out;
    }
    for (std::size_t j = 0; j < zm_.size(); ++j) {
      std::vector<std::int64_t> v(std::size_t(n), 0);
      for (auto& [cell, val] : c.entries())
        v[std::size_t(cell)] = group_.residue(val, j);
      auto r = zm_[j]->reduce(v);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }

  bool is_coboundary(const Cochain& c) const {
    for (auto x : label(c))
      if (x) return false;
    return true;
  }

  // witness b of degree k-1 with codifferential(b) == c, if one exists;
  // degree 0 has only the zero coboundary and no witness degree, so the
  // witness is omitted there even when c == 0
  std::optional<Cochain> solve(const Cochain& c) const {
    check(c);
    if (degree_ == 0) return std::nullopt;
    int n = X_->cells(degree_);
    int nfaces = X_->cells(degree_ - 1);
    Cochain b(*X_, degree_ - 1, group_);
    if (gf2_) {
      BitVec v{std::size_t(n)};
      for (auto& [cell, val] : c.entries()) v.set(std::size_t(cell), val & 1);
      auto combo = gf2_->express(v);
      if (!combo) return std::nullopt;
      for (auto f : combo->support()) b.set(int(f), 1);
    } else {
      std::vector<std::vector<std::int64_t>> per_factor;
      for (std::size_t j = 0; j < zm_.size(); ++j) {
        std::vector<std::int64_t> v(std::size_t(n), 0);
        for (auto& [cell, val] : c.entries())
          v[std::size_t(cell)] = group_.residue(val, j);
        auto coeff = zm_[j]->express(v);
        if (!coeff) return std::nullopt;
        per_factor.push_back(std::move(*coeff));
      }
      std::vector<std::int64_t> residues(group_.num_factors());
      for (int f = 0; f < nfaces; ++f) {
        for (std::size_t j = 0; j < zm_.size(); ++j)
          residues[j] = per_factor[j][std::size_t(f)];
        GroupElem e = group_.encode(residues);
        if (e) b.set(f, e);
      }
    }
    return b;
  }

 private:
  void check(const Cochain& c) const {
    require_same_complex(*X_, c.complex(), "coboundary test");
    require(c.degree() == degree_ && c.group() == group_,
            errc::complex_mismatch,
            "cochain shape does not match this solver");
  }

  const CellComplex* X_;
  int degree_;
  CoefficientGroup group_;
  std::unique_ptr<Gf2RowBasis> gf2_;
  std::vector<std::unique_ptr<ZmRowBasis>> zm_;
};

struct CochainClass {
  bool cocycle = false;
  bool coboundary = false;
  std::optional<Cochain> witness;  // degree k-1, present iff coboundary && k>=1
};

inline CochainClass classify_cochain(const Cochain& c,
                                     const CoboundarySolver& solver) {
  CochainClass out;
  out.cocycle = is_cocycle(c);
  if (c.degree() == 0) {
    out.coboundary = c.is_zero();
    return out;
  }
  out.witness = solver.solve(c);
  out.coboundary = out.witness.has_value();
  if (out.witness) {
    // paranoia: a claimed witness must actually map onto c
    require(codifferential(*out.witness) == c, errc::bad_parameters,
            "internal: coboundary witness failed verification");
  }
  return out;
}

inline CochainClass classify_cochain(const Cochain& c) {
  CoboundarySolver solver(c.complex(), c.degree(), c.group());
  return classify_cochain(c, solver);
}

}  // namespace cobex
