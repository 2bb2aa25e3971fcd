#pragma once
// Exact rational arithmetic for expansion ratios. All reported constants are
// quotients of cell counts, so 64-bit numerator/denominator is plenty.

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace cobex {

using Rational = boost::rational<std::int64_t>;

// Expansion constants live in [0, inf]; an empty optional encodes +infinity
// (no cochain at positive distance from the subgroup exists).
using ExtRational = std::optional<Rational>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline std::string to_string(const ExtRational& r) {
  return r ? to_string(*r) : std::string("inf");
}

// Parses "a", "a/b", or "inf". Returns nullopt-wrapped infinity for "inf".
inline ExtRational parse_ext_rational(const std::string& s) {
  if (s == "inf" || s == "+inf") return std::nullopt;
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  std::int64_t num = std::stoll(s.substr(0, slash));
  std::int64_t den = std::stoll(s.substr(slash + 1));
  return Rational(num, den);
}

// floor(r) for nonnegative r.
inline std::int64_t floor_nonneg(const Rational& r) {
  return r.numerator() / r.denominator();
}

}  // namespace cobex
