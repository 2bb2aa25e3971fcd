#pragma once
// Bit-packed GF(2) vectors and row-reduction. This is the fast path for
// Z/2 coefficients; results must agree bit-for-bit with the generic
// modular path, which the test suite checks.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace cobex {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v) {
    std::uint64_t mask = std::uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= mask;
    else
      w_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  void operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::size_t(std::popcount(w));
    return c;
  }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }

  // index of lowest set bit, or npos
  static constexpr std::size_t npos = std::size_t(-1);
  std::size_t lowest() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return (k << 6) + std::size_t(std::countr_zero(w_[k]));
    return npos;
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        s.push_back((k << 6) + std::size_t(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return s;
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Row space of a GF(2) matrix in reduced row echelon form, with the row
// operations tracked so membership tests can also emit a witness
// combination of the original generator rows.
class Gf2RowBasis {
 public:
  // rows: generators, each of length ncols
  Gf2RowBasis(const std::vector<BitVec>& rows, std::size_t ncols)
      : ncols_(ncols) {
    std::size_t ngen = rows.size();
    for (std::size_t i = 0; i < ngen; ++i) {
      BitVec v = rows[i];
      BitVec combo(ngen);
      combo.set(i, true);
      reduce_tracked(v, combo);
      if (v.any()) insert(std::move(v), std::move(combo));
    }
  }

  std::size_t rank() const { return basis_.size(); }
  std::size_t ncols() const { return ncols_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // canonical representative of v + rowspace (zero iff v is in the space)
  BitVec reduce(BitVec v) const {
    for (std::size_t r = 0; r < basis_.size(); ++r)
      if (v.get(pivots_[r])) v ^= basis_[r];
    return v;
  }

  // if v lies in the row space, the set of generator indices whose sum is v
  std::optional<BitVec> express(BitVec v) const {
    BitVec combo(gen_count());
    reduce_tracked(v, combo);
    if (v.any()) return std::nullopt;
    return combo;
  }

 private:
  std::size_t gen_count() const {
    return combos_.empty() ? 0 : combos_[0].size();
  }

  void reduce_tracked(BitVec& v, BitVec& combo) const {
    for (std::size_t r = 0; r < basis_.size(); ++r)
      if (v.get(pivots_[r])) {
        v ^= basis_[r];
        combo ^= combos_[r];
      }
  }

  void insert(BitVec v, BitVec combo) {
    std::size_t p = v.lowest();
    // keep reduced form: clear column p in existing rows
    for (std::size_t r = 0; r < basis_.size(); ++r)
      if (basis_[r].get(p)) {
        basis_[r] ^= v;
        combos_[r] ^= combo;
      }
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    pivots_.insert(pivots_.begin() + std::ptrdiff_t(at), p);
    basis_.insert(basis_.begin() + std::ptrdiff_t(at), std::move(v));
    combos_.insert(combos_.begin() + std::ptrdiff_t(at), std::move(combo));
  }

  std::size_t ncols_;
  std::vector<std::size_t> pivots_;  // strictly increasing
  std::vector<BitVec> basis_;        // RREF rows
  std::vector<BitVec> combos_;       // combo[r] over generators = basis[r]
};

}  // namespace cobex
