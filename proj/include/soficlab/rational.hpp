#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// rational == integer, which Boost 1.74 sends into endless recursion under
// C++20 rewritten comparisons.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == static_cast<std::int64_t>(b); }
}  // namespace boost

namespace soficlab {

using Rational = boost::rational<std::int64_t>;

// Parses "p/q" (q > 0) or a bare integer "p". Throws InputError otherwise.
Rational parse_rational(std::string_view text);

// Always "p/q" in lowest terms with q > 0, including "0/1" and "1/1".
std::string to_string(const Rational& value);

inline Rational abs_diff(const Rational& a, const Rational& b) {
  return a < b ? b - a : a - b;
}

std::int64_t lcm_of_denominators(std::span<const Rational> values);

}  // namespace soficlab
