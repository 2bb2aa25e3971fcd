#pragma once
// Sparse cochains (and, by reuse, chains) with values in a finite abelian
// group. Values are stored per cell in a sorted map so iteration order —
// and therefore every report derived from it — is deterministic.
//
// Convention: the same container serves cochains and chains. The
// codifferential of a degree-k cochain sums over cofaces; the boundary of
// a k-chain sums over faces. Both are plain incidence-weighted sums.

#include "cobex/complex.hpp"
#include "cobex/errors.hpp"
#include "cobex/group.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cobex {

class Cochain {
 public:
  Cochain(const CellComplex& X, int degree, CoefficientGroup group)
      : X_(&X), degree_(degree), group_(std::move(group)) {
    require(degree >= 0 && degree <= X.dim(), errc::bad_parameters,
            "degree " + std::to_string(degree) + " out of range for '" +
                X.name() + "' (dimension " + std::to_string(X.dim()) + ")");
  }

  const CellComplex& complex() const { return *X_; }
  int degree() const { return degree_; }
  const CoefficientGroup& group() const { return group_; }

  GroupElem value(int cell) const {
    auto it = vals_.find(cell);
    return it == vals_.end() ? 0 : it->second;
  }

  void set(int cell, GroupElem v) {
    X_->check_cell(degree_, cell);
    if (v == 0)
      vals_.erase(cell);
    else
      vals_[cell] = v;
  }

  void add_to(int cell, GroupElem v) { set(cell, group_.add(value(cell), v)); }

  // Hamming norm: number of cells with nonzero value
  std::size_t norm() const { return vals_.size(); }
  bool is_zero() const { return vals_.empty(); }

  const std::map<int, GroupElem>& entries() const { return vals_; }

  std::vector<int> support() const {
    std::vector<int> s;
    s.reserve(vals_.size());
    for (auto& [cell, v] : vals_) s.push_back(cell);
    return s;
  }

  Cochain operator+(const Cochain& o) const {
    check_compatible(o, "cochain sum");
    Cochain out = *this;
    for (auto& [cell, v] : o.vals_) out.add_to(cell, v);
    return out;
  }

  Cochain operator-(const Cochain& o) const {
    check_compatible(o, "cochain difference");
    Cochain out = *this;
    for (auto& [cell, v] : o.vals_) out.add_to(cell, group_.neg(v));
    return out;
  }

  Cochain operator-() const {
    Cochain out(*X_, degree_, group_);
    for (auto& [cell, v] : vals_) out.vals_[cell] = group_.neg(v);
    return out;
  }

  bool operator==(const Cochain& o) const {
    return X_->instance_id() == o.X_->instance_id() && degree_ == o.degree_ &&
           group_ == o.group_ && vals_ == o.vals_;
  }
  bool operator!=(const Cochain& o) const { return !(*this == o); }

  // Hamming distance between two cochains of the same shape
  std::size_t distance(const Cochain& o) const {
    check_compatible(o, "cochain distance");
    std::size_t d = 0;
    auto it = vals_.begin();
    auto jt = o.vals_.begin();
    while (it != vals_.end() || jt != o.vals_.end()) {
      if (jt == o.vals_.end() || (it != vals_.end() && it->first < jt->first)) {
        ++d;
        ++it;
      } else if (it == vals_.end() || jt->first < it->first) {
        ++d;
        ++jt;
      } else {
        if (it->second != jt->second) ++d;
        ++it;
        ++jt;
      }
    }
    return d;
  }

  void check_compatible(const Cochain& o, const std::string& context) const {
    require_same_complex(*X_, *o.X_, context);
    require(degree_ == o.degree_, errc::complex_mismatch,
            context + ": degrees " + std::to_string(degree_) + " and " +
                std::to_string(o.degree_) + " differ");
    require(group_ == o.group_, errc::complex_mismatch,
            context + ": coefficient groups " + group_.name() + " and " +
                o.group_.name() + " differ");
  }

 private:
  const CellComplex* X_;
  int degree_;
  CoefficientGroup group_;
  std::map<int, GroupElem> vals_;
};

// codifferential: (delta c)(cocell) = sum over cells under it of coeff *
// c(cell); lands in degree k+1. At top degree the result is identically
// zero and has no home degree, so callers must branch there (is_cocycle
// does).
inline Cochain codifferential(const Cochain& c) {
  const CellComplex& X = c.complex();
  int k = c.degree();
  require(k < X.dim(), errc::bad_parameters,
          "codifferential at top degree is identically zero; callers "
          "should branch instead");
  Cochain out(X, k + 1, c.group());
  const auto& A = c.group();
  for (auto& [cell, v] : c.entries())
    for (auto& [cocell, coeff] : X.cofaces(k, cell))
      out.add_to(cocell, A.scale(coeff, v));
  return out;
}

// boundary: (d q)(face) = sum over cells carrying q of coeff * q(cell),
// for a degree-k chain this lands in degree k-1; at degree 0 it is empty.
inline Cochain boundary(const Cochain& q) {
  const CellComplex& X = q.complex();
  int k = q.degree();
  require(k >= 1, errc::bad_parameters,
          "boundary of a degree-0 chain is not defined here");
  Cochain out(X, k - 1, q.group());
  const auto& A = q.group();
  for (auto& [cell, v] : q.entries())
    for (auto& [face, coeff] : X.faces(k, cell))
      out.add_to(face, A.scale(coeff, v));
  return out;
}

inline bool is_cocycle(const Cochain& c) {
  if (c.degree() == c.complex().dim()) return true;
  return codifferential(c).is_zero();
}

inline bool is_cycle(const Cochain& q) {
  if (q.degree() == 0) return true;
  return boundary(q).is_zero();
}

}  // namespace cobex
