#pragma once
// Linear algebra over Z/m for composite m. Row spaces are kept in Howell
// form: an echelon basis closed under the row operations available mod m,
// which makes coset representatives canonical (equal label <=> equal
// coset) and makes subgroup sizes a product over pivots. Transform rows
// are tracked so membership tests can emit witness combinations.

#include "cobex/errors.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cobex {

inline std::int64_t egcd(std::int64_t a, std::int64_t b, std::int64_t& x,
                         std::int64_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  std::int64_t x1, y1;
  std::int64_t g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline std::int64_t mod_gcd(std::int64_t a, std::int64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a < 0 ? -a : a;
}

// Unit u mod m with u*a == gcd(a,m) mod m. Exists because a/g is
// invertible mod m/g and units mod m/g lift to units mod m.
inline std::int64_t unit_for(std::int64_t a, std::int64_t m) {
  a = ((a % m) + m) % m;
  if (a == 0) return 1;
  std::int64_t g = mod_gcd(a, m);
  std::int64_t ap = a / g, mp = m / g;
  std::int64_t u;
  if (mp == 1) {
    u = 1;
  } else {
    std::int64_t x, y;
    egcd(ap % mp, mp, x, y);
    u = ((x % mp) + mp) % mp;
    if (u == 0) u = mp;  // keep u nonzero; adjusted below if not a unit
  }
  // lift to a unit mod m
  while (mod_gcd(u, m) != 1) u += mp;
  return u % m;
}

class ZmRowBasis {
 public:
  // gens: generator rows with arbitrary integer entries; reduced mod m here.
  ZmRowBasis(const std::vector<std::vector<std::int64_t>>& gens,
             std::size_t ncols, std::int64_t m)
      : m_(m), ncols_(ncols), ngens_(gens.size()) {
    require(m >= 2, errc::bad_parameters, "modulus must be at least 2");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::vector<std::int64_t> v(ncols_, 0);
      for (std::size_t j = 0; j < ncols_ && j < gens[i].size(); ++j)
        v[j] = norm(gens[i][j]);
      std::vector<std::int64_t> combo(ngens_, 0);
      combo[i] = 1;
      add_row(std::move(v), std::move(combo));
    }
    canonicalize();
  }

  std::int64_t modulus() const { return m_; }
  std::size_t ncols() const { return ncols_; }
  std::size_t num_pivots() const { return rows_.size(); }
  const std::vector<std::size_t>& pivot_cols() const { return pivot_col_; }
  std::int64_t pivot_value(std::size_t r) const {
    return rows_[r][pivot_col_[r]];
  }

  // |row space| = product over pivots of m / pivot_value
  std::uint64_t subgroup_size() const {
    std::uint64_t s = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      s *= std::uint64_t(m_ / pivot_value(r));
    return s;
  }

  // canonical coset representative; equal vectors <=> equal cosets
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const {
    normalize(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::int64_t t = v[pivot_col_[r]] / pivot_value(r);
      if (t) submul(v, rows_[r], t);
    }
    return v;
  }

  bool contains(const std::vector<std::int64_t>& v) const {
    auto res = reduce(v);
    for (auto x : res)
      if (x) return false;
    return true;
  }

  // coefficients c (one per original generator) with sum c_i * gen_i == v
  std::optional<std::vector<std::int64_t>> express(
      std::vector<std::int64_t> v) const {
    normalize(v);
    std::vector<std::int64_t> coeff(ngens_, 0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::int64_t t = v[pivot_col_[r]] / pivot_value(r);
      if (t) {
        submul(v, rows_[r], t);
        for (std::size_t i = 0; i < ngens_; ++i)
          coeff[i] = norm(coeff[i] + t * combos_[r][i]);
      }
    }
    for (auto x : v)
      if (x) return std::nullopt;
    return coeff;
  }

 private:
  std::int64_t norm(std::int64_t a) const { return ((a % m_) + m_) % m_; }

  void normalize(std::vector<std::int64_t>& v) const {
    require(v.size() == ncols_, errc::bad_parameters,
            "vector length does not match basis columns");
    for (auto& x : v) x = norm(x);
  }

  // v -= t * row (mod m)
  void submul(std::vector<std::int64_t>& v,
              const std::vector<std::int64_t>& row, std::int64_t t) const {
    t = norm(t);
    if (!t) return;
    for (std::size_t j = 0; j < ncols_; ++j)
      if (row[j]) v[j] = norm(v[j] - t * row[j]);
  }

  void scale_row(std::vector<std::int64_t>& v, std::int64_t u) const {
    for (auto& x : v) x = norm(x * u);
  }

  std::size_t first_nonzero(const std::vector<std::int64_t>& v) const {
    for (std::size_t j = 0; j < ncols_; ++j)
      if (v[j]) return j;
    return ncols_;
  }

  std::size_t row_at_col(std::size_t j) const {
    for (std::size_t r = 0; r < pivot_col_.size(); ++r)
      if (pivot_col_[r] == j) return r;
    return std::size_t(-1);
  }

  void add_row(std::vector<std::int64_t> v, std::vector<std::int64_t> combo) {
    for (;;) {
      std::size_t j = first_nonzero(v);
      if (j == ncols_) return;  // reduced to zero
      std::size_t r = row_at_col(j);
      if (r == std::size_t(-1)) {
        // new pivot: scale by a unit so the pivot divides m
        std::int64_t u = unit_for(v[j], m_);
        scale_row(v, u);
        scale_row(combo, u);
        insert_row(j, v, combo);
        // queue the pivot annihilator so echelon structure stays Howell
        std::int64_t t = m_ / v[j];
        std::vector<std::int64_t> ann = v, anncombo = combo;
        scale_row(ann, t);
        scale_row(anncombo, t);
        add_row(std::move(ann), std::move(anncombo));
        return;
      }
      std::int64_t g = rows_[r][j];
      if (v[j] % g == 0) {
        std::int64_t t = v[j] / g;
        std::vector<std::int64_t> cr = combos_[r];
        submul(v, rows_[r], t);
        for (std::size_t i = 0; i < ngens_; ++i)
          combo[i] = norm(combo[i] - t * cr[i]);
        continue;
      }
      // pivot refinement: replace row r by gcd combination, re-add leftover
      std::int64_t x, y;
      std::int64_t g2 = egcd(g, v[j], x, y);
      std::vector<std::int64_t> merged(ncols_, 0), mcombo(ngens_, 0);
      for (std::size_t t2 = 0; t2 < ncols_; ++t2)
        merged[t2] = norm(x * rows_[r][t2] + y * v[t2]);
      for (std::size_t i = 0; i < ngens_; ++i)
        mcombo[i] = norm(x * combos_[r][i] + y * combo[i]);
      std::vector<std::int64_t> rest(ncols_, 0), rcombo(ngens_, 0);
      for (std::size_t t2 = 0; t2 < ncols_; ++t2)
        rest[t2] = norm((g / g2) * v[t2] - (v[j] / g2) * rows_[r][t2]);
      for (std::size_t i = 0; i < ngens_; ++i)
        rcombo[i] = norm((g / g2) * combo[i] - (v[j] / g2) * combos_[r][i]);
      remove_row(r);
      add_row(std::move(merged), std::move(mcombo));
      add_row(std::move(rest), std::move(rcombo));
      return;
    }
  }

  void insert_row(std::size_t col, std::vector<std::int64_t>& v,
                  std::vector<std::int64_t>& combo) {
    std::size_t at = 0;
    while (at < pivot_col_.size() && pivot_col_[at] < col) ++at;
    pivot_col_.insert(pivot_col_.begin() + std::ptrdiff_t(at), col);
    rows_.insert(rows_.begin() + std::ptrdiff_t(at), v);
    combos_.insert(combos_.begin() + std::ptrdiff_t(at), combo);
  }

  void remove_row(std::size_t r) {
    pivot_col_.erase(pivot_col_.begin() + std::ptrdiff_t(r));
    rows_.erase(rows_.begin() + std::ptrdiff_t(r));
    combos_.erase(combos_.begin() + std::ptrdiff_t(r));
  }

  // bring entries above every pivot into [0, pivot): canonical echelon
  void canonicalize() {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::size_t j = pivot_col_[r];
      std::int64_t g = rows_[r][j];
      for (std::size_t s = 0; s < r; ++s) {
        std::int64_t t = rows_[s][j] / g;
        if (t) {
          submul(rows_[s], rows_[r], t);
          std::vector<std::int64_t> cr = combos_[r];
          for (std::size_t i = 0; i < ngens_; ++i)
            combos_[s][i] = norm(combos_[s][i] - t * cr[i]);
        }
      }
    }
  }

  std::int64_t m_;
  std::size_t ncols_;
  std::size_t ngens_;
  std::vector<std::size_t> pivot_col_;               // increasing
  std::vector<std::vector<std::int64_t>> rows_;      // echelon rows
  std::vector<std::vector<std::int64_t>> combos_;    // over original gens
};

}  // namespace cobex
