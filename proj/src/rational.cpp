#include "soficlab/rational.hpp"

#include <charconv>
#include <numeric>

#include "soficlab/errors.hpp"

namespace soficlab {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto const* begin = text.data();
  auto const* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw InputError("malformed rational \"" + std::string(whole) + "\"");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  auto num = parse_int(text.substr(0, slash), text);
  auto den = parse_int(text.substr(slash + 1), text);
  if (den <= 0) {
    throw InputError("rational \"" + std::string(text) + "\" needs a positive denominator");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::int64_t lcm_of_denominators(std::span<const Rational> values) {
  std::int64_t result = 1;
  for (auto const& v : values) result = std::lcm(result, v.denominator());
  return result;
}

}  // namespace soficlab
