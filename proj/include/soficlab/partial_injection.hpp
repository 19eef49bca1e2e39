#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "soficlab/bisection.hpp"
#include "soficlab/rational.hpp"

namespace soficlab {

// An element of the symmetric inverse monoid [[n]]: an injective partial map
// on {0, ..., n-1} with the normalized counting measure.
class PartialInjection {
 public:
  // Throws InputError for n == 0, out-of-range images or a non-injective map.
  PartialInjection(std::size_t n, std::vector<std::optional<std::size_t>> map);

  static PartialInjection identity(std::size_t n);
  static PartialInjection empty(std::size_t n);
  // Identity on `domain`, undefined elsewhere.
  static PartialInjection partial_identity(std::size_t n, const std::vector<std::size_t>& domain);
  // The transposition (a b), fixing everything else.
  static PartialInjection transposition(std::size_t n, std::size_t a, std::size_t b);

  [[nodiscard]] std::size_t n() const noexcept { return map_.size(); }
  [[nodiscard]] std::optional<std::size_t> operator()(std::size_t x) const { return map_.at(x); }
  [[nodiscard]] const std::vector<std::optional<std::size_t>>& map() const noexcept { return map_; }
  [[nodiscard]] std::size_t domain_size() const;

  auto operator<=>(const PartialInjection&) const = default;

 private:
  std::vector<std::optional<std::size_t>> map_;
};

// (a * b)(x) = a(b(x)); b acts first.
PartialInjection compose(const PartialInjection& a, const PartialInjection& b);
inline PartialInjection operator*(const PartialInjection& a, const PartialInjection& b) { return compose(a, b); }
PartialInjection invert(const PartialInjection& a);
// |{x : a(x) = x}| / n.
Rational trace(const PartialInjection& a);
// |{x : a and b differ at x, definedness included}| / n.
Rational distance(const PartialInjection& a, const PartialInjection& b);

// All of [[n]]: the empty map first, then by increasing domain in a fixed order.
std::vector<PartialInjection> enumerate_partial_injections(std::size_t n);
// Sum over k of C(n,k)^2 k!.
std::uint64_t symmetric_inverse_order(std::size_t n);

// [[n]] <-> bisections of the full relation on n points; x -> y becomes the
// arrow (0, 0, y, x).
Bisection to_bisection(const PartialInjection& a, const GroupoidPtr& full_relation);
PartialInjection to_partial_injection(const Bisection& alpha);

// Literal inclusion [[n]] -> [[n+1]]; the new point is left undefined.
PartialInjection embed_step(const PartialInjection& a);
// Block copies: q*n + j -> q*n + a(j) for 0 <= q < k.
PartialInjection embed_multiple(const PartialInjection& a, std::size_t k);
// p = q*n + r with 0 <= r < n: embed_multiple by q, then r steps. Throws
// InputError for p < n.
PartialInjection embed_general(const PartialInjection& a, std::size_t p);

struct DistortionReport {
  std::size_t n = 0;
  std::size_t p = 0;
  Rational observed_sup{0};        // max |d_p(pi a, pi b) - d_n(a, b)|
  Rational observed_trace_sup{0};  // max |tr_p(pi a) - tr_n(a)|
  std::optional<Rational> bound;   // n / (p - n); absent when p == n
  std::uint64_t pairs_tested = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
};

// For each p, compares d and tr before and after embed_general. Exhaustive
// over [[n]]^2 when it has at most pair_budget pairs, otherwise pair_budget
// pairs drawn with the given seed.
std::vector<DistortionReport> ladder_profile(std::size_t n, const std::vector<std::size_t>& p_list,
                                             std::uint64_t pair_budget, std::uint64_t seed);

PartialInjection random_partial_injection(std::size_t n, std::mt19937_64& rng);

}  // namespace soficlab
