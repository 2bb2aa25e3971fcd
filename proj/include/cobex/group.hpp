#pragma once
// Finite abelian coefficient groups, given as products of cyclic factors
// Z_{m1} x ... x Z_{mk}. Elements are packed into a single u64 in mixed
// radix so cochain values stay cheap to store, hash, and compare.

#include "cobex/errors.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace cobex {

using GroupElem = std::uint64_t;  // mixed-radix encoding, 0 = identity

class CoefficientGroup {
 public:
  CoefficientGroup() = default;

  explicit CoefficientGroup(std::vector<std::int64_t> factors)
      : factors_(std::move(factors)) {
    require(!factors_.empty(), errc::bad_parameters,
            "coefficient group needs at least one cyclic factor");
    order_ = 1;
    exponent_ = 1;
    for (auto m : factors_) {
      require(m >= 2, errc::bad_parameters,
              "cyclic factor must be at least 2, got " + std::to_string(m));
      require(order_ <= (std::uint64_t(1) << 62) / std::uint64_t(m),
              errc::bad_parameters, "coefficient group order overflows");
      order_ *= std::uint64_t(m);
      exponent_ = std::lcm(exponent_, m);
    }
  }

  const std::vector<std::int64_t>& factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  std::uint64_t order() const { return order_; }
  // Smallest e > 0 with e*a = 0 for all a; an integer incidence coefficient
  // acts as zero on the whole group exactly when e divides it.
  std::int64_t exponent() const { return exponent_; }

  bool operator==(const CoefficientGroup& o) const {
    return factors_ == o.factors_;
  }
  bool operator!=(const CoefficientGroup& o) const { return !(*this == o); }

  bool is_z2() const { return factors_.size() == 1 && factors_[0] == 2; }

  // residue of element e in factor j, in [0, m_j)
  std::int64_t residue(GroupElem e, std::size_t j) const {
    for (std::size_t i = 0; i < j; ++i) e /= std::uint64_t(factors_[i]);
    return std::int64_t(e % std::uint64_t(factors_[j]));
  }

  GroupElem encode(const std::vector<std::int64_t>& residues) const {
    require(residues.size() == factors_.size(), errc::bad_parameters,
            "residue tuple length does not match factor count");
    GroupElem e = 0;
    for (std::size_t j = factors_.size(); j-- > 0;) {
      std::int64_t m = factors_[j];
      std::int64_t r = ((residues[j] % m) + m) % m;
      e = e * std::uint64_t(m) + std::uint64_t(r);
    }
    return e;
  }

  std::vector<std::int64_t> decode(GroupElem e) const {
    std::vector<std::int64_t> r(factors_.size());
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      r[j] = std::int64_t(e % std::uint64_t(factors_[j]));
      e /= std::uint64_t(factors_[j]);
    }
    return r;
  }

  GroupElem add(GroupElem a, GroupElem b) const {
    GroupElem out = 0, mul = 1;
    for (auto m : factors_) {
      std::uint64_t um = std::uint64_t(m);
      std::uint64_t s = (a % um + b % um) % um;
      out += s * mul;
      mul *= um;
      a /= um;
      b /= um;
    }
    return out;
  }

  GroupElem neg(GroupElem a) const {
    GroupElem out = 0, mul = 1;
    for (auto m : factors_) {
      std::uint64_t um = std::uint64_t(m);
      std::uint64_t r = a % um;
      out += (r == 0 ? 0 : um - r) * mul;
      mul *= um;
      a /= um;
    }
    return out;
  }

  GroupElem sub(GroupElem a, GroupElem b) const { return add(a, neg(b)); }

  // integer scalar action t*a (t may be negative)
  GroupElem scale(std::int64_t t, GroupElem a) const {
    GroupElem out = 0, mul = 1;
    for (auto m : factors_) {
      std::uint64_t um = std::uint64_t(m);
      std::int64_t tm = ((t % m) + m) % m;
      out += (std::uint64_t(tm) * (a % um)) % um * mul;
      mul *= um;
      a /= um;
    }
    return out;
  }

  // whether the integer t acts as zero on every element
  bool annihilates(std::int64_t t) const { return t % exponent_ == 0; }

  std::string name() const {
    std::string s;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      if (j) s += "x";
      s += "z" + std::to_string(factors_[j]);
    }
    return s;
  }

  // parses "z2", "z6", "z2xz2", "z4xz2", ...
  static CoefficientGroup parse(const std::string& text) {
    std::vector<std::int64_t> factors;
    std::size_t pos = 0;
    while (pos < text.size()) {
      require(text[pos] == 'z' || text[pos] == 'Z', errc::bad_parameters,
              "cannot parse coefficient group '" + text + "'");
      ++pos;
      std::size_t end = pos;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      require(end > pos, errc::bad_parameters,
              "cannot parse coefficient group '" + text + "'");
      factors.push_back(std::stoll(text.substr(pos, end - pos)));
      pos = end;
      if (pos < text.size()) {
        require(text[pos] == 'x' || text[pos] == 'X', errc::bad_parameters,
                "cannot parse coefficient group '" + text + "'");
        ++pos;
      }
    }
    return CoefficientGroup(std::move(factors));
  }

 private:
  std::vector<std::int64_t> factors_;
  std::uint64_t order_ = 0;
  std::int64_t exponent_ = 1;
};

inline const CoefficientGroup& Z2() {
  static const CoefficientGroup g({2});
  return g;
}

}  // namespace cobex
