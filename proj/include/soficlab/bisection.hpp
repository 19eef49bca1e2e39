#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "soficlab/errors.hpp"
#include "soficlab/groupoid.hpp"
#include "soficlab/malg.hpp"
#include "soficlab/rational.hpp"

namespace soficlab {

// An element of the full semigroup [[G]]: a set of arrows on which both the
// source and the range maps are injective. Arrows are kept sorted, so equal
// sets compare equal. The empty bisection is the zero of the monoid.
class Bisection {
 public:
  // Throws InputError if an arrow is foreign or two arrows share a source or a
  // range. Duplicated arrows are merged.
  Bisection(GroupoidPtr groupoid, std::vector<Arrow> arrows);

  static Bisection identity(GroupoidPtr groupoid);
  static Bisection empty(GroupoidPtr groupoid);
  static Bisection idempotent(GroupoidPtr groupoid, const MAlgElement& units);

  [[nodiscard]] const GroupoidPtr& groupoid_ptr() const noexcept { return groupoid_; }
  [[nodiscard]] const FiniteGroupoid& groupoid() const noexcept { return *groupoid_; }
  [[nodiscard]] std::span<const Arrow> arrows() const noexcept { return arrows_; }
  [[nodiscard]] std::size_t size() const noexcept { return arrows_.size(); }
  [[nodiscard]] bool empty() const noexcept { return arrows_.empty(); }
  [[nodiscard]] bool contains(const Arrow& a) const;

  // Same groupoid (by identity or by value) and the same arrows.
  friend bool operator==(const Bisection& a, const Bisection& b);
  // Orders by arrows only; for use as a map key within one groupoid.
  friend bool operator<(const Bisection& a, const Bisection& b) { return a.arrows_ < b.arrows_; }

 private:
  struct Trusted {};
  Bisection(GroupoidPtr groupoid, std::vector<Arrow> sorted_arrows, Trusted);

  GroupoidPtr groupoid_;
  std::vector<Arrow> arrows_;

  friend Bisection compose(const Bisection&, const Bisection&);
  friend Bisection invert(const Bisection&);
};

bool same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);
void require_same_groupoid(const Bisection& a, const Bisection& b);

// alpha * beta = {ab : (a, b) composable}; beta acts first.
Bisection compose(const Bisection& alpha, const Bisection& beta);
inline Bisection operator*(const Bisection& alpha, const Bisection& beta) { return compose(alpha, beta); }
Bisection invert(const Bisection& alpha);

// mu(alpha cap G^(0)).
Rational trace(const Bisection& alpha);
// mu(s(alpha symmetric-difference beta)), s taken as a set image.
Rational distance(const Bisection& alpha, const Bisection& beta);
// mu(r(alpha symmetric-difference beta)). Equals distance(alpha^-1, beta^-1);
// agrees with distance() on full-group elements but not in general.
Rational range_distance(const Bisection& alpha, const Bisection& beta);

MAlgElement source_set(const Bisection& alpha);
MAlgElement range_set(const Bisection& alpha);
MAlgElement fix(const Bisection& alpha);
MAlgElement supp(const Bisection& alpha);

struct Projections {
  MAlgElement source;
  MAlgElement range;
  MAlgElement fix;
  MAlgElement supp;
};
Projections projections(const Bisection& alpha);

[[nodiscard]] bool is_idempotent(const Bisection& alpha);
[[nodiscard]] bool is_full(const Bisection& alpha);

// alpha restricted to sources in A, i.e. alpha * 1_A.
Bisection restrict_source(const Bisection& alpha, const MAlgElement& units);

// Plain set operations on arrow sets; the results are bisections because
// [[G]] is closed below.
Bisection intersect(const Bisection& alpha, const Bisection& beta);
Bisection intersect(const Bisection& alpha, std::span<const Arrow> arrows);

// An element of the full group [G]: s(alpha) = r(alpha) = G^(0).
class FullGroupElement {
 public:
  // Throws InputError if alpha is not full.
  explicit FullGroupElement(Bisection alpha);
  [[nodiscard]] const Bisection& bisection() const noexcept { return alpha_; }
  operator const Bisection&() const noexcept { return alpha_; }  // NOLINT(google-explicit-constructor)

 private:
  Bisection alpha_;
};

// alpha . A = r(s|_alpha^{-1}(A)).
MAlgElement act(const FullGroupElement& alpha, const MAlgElement& units);

// Thrown by union_compatible; the witness arrows share a source or a range.
class IncompatibleUnion : public InputError {
 public:
  IncompatibleUnion(Arrow first, Arrow second, bool shared_source);
  Arrow first;
  Arrow second;
  bool shared_source;
};

// alpha cup beta, provided beta^-1 alpha and beta alpha^-1 are idempotents.
Bisection union_compatible(const Bisection& alpha, const Bisection& beta);

// Extends gamma to a full-group element gamma~ containing it, from the chains
// gamma_n = {g in gamma^-n : s(g) not in s(gamma), r(g) not in r(gamma)}
// together with the units outside s(gamma) cup r(gamma). Disjointness of the
// pieces is asserted.
FullGroupElement extend_to_full_group(const Bisection& gamma);

// ---------------------------------------------------------------------------
// Enumeration

enum class EnumerationKind { semigroup, group, malg };

// Saturates at UINT64_MAX.
std::uint64_t predicted_count(const FiniteGroupoid& g, EnumerationKind kind);

class CapExceeded : public InputError {
 public:
  CapExceeded(std::uint64_t predicted, std::uint64_t cap);
  std::uint64_t predicted;
  std::uint64_t cap;
};

// Every bisection (kind semigroup) or full-group element (kind group), in a
// fixed order without repeats. Throws CapExceeded before doing any work if the
// predicted count is above cap.
std::vector<Bisection> enumerate_bisections(const GroupoidPtr& g, EnumerationKind kind, std::uint64_t cap);
std::vector<MAlgElement> enumerate_malg(const FiniteGroupoid& g, std::uint64_t cap);

// Visits the same sequence as enumerate_bisections without storing it.
void for_each_bisection(const GroupoidPtr& g, EnumerationKind kind, const std::function<void(const Bisection&)>& visit);

// A random element: each component gets an independent random partial
// injection (or permutation when full is set) with uniform group labels.
Bisection random_bisection(const GroupoidPtr& g, std::mt19937_64& rng, bool full);
MAlgElement random_malg(const FiniteGroupoid& g, std::mt19937_64& rng);

}  // namespace soficlab
