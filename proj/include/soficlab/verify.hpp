#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "soficlab/bisection.hpp"
#include "soficlab/constructions.hpp"
#include "soficlab/rational.hpp"

namespace soficlab {

// A named bisection inside a counterexample or a worst case.
struct WitnessEntry {
  std::string role;
  Bisection value;
};

struct Witness {
  std::string what;
  Rational deviation{0};
  std::vector<WitnessEntry> entries;
};

struct AlmostMorphismReport {
  std::size_t k_size = 0;
  Rational epsilon{0};
  Rational max_product_deviation{0};   // d(pi(ab), pi(a) pi(b))
  Rational max_trace_deviation{0};     // |tr(a) - tr(pi(a))|
  Rational max_distance_deviation{0};  // |d(a, b) - d(pi a, pi b)|
  bool pass = false;                   // product and trace deviations both < epsilon
  std::vector<Witness> witnesses;      // worst product pair, trace element, distance pair
};

// pi given on a finite set by (argument, image) pairs, all from one domain
// groupoid and one codomain groupoid.
using FiniteMap = std::vector<std::pair<Bisection, Bisection>>;

AlmostMorphismReport check_almost_morphism(const SemigroupMap& pi, std::span<const Bisection> k,
                                           const Rational& epsilon);
// Throws InputError when the list misses some a in K or some product ab.
AlmostMorphismReport check_almost_morphism(const FiniteMap& pi, std::span<const Bisection> k,
                                           const Rational& epsilon);

struct SuiteBudget {
  std::uint64_t exhaustive_cap = 2'000'000;  // cases; above this, sample
  std::uint64_t sample_count = 20'000;
  std::uint64_t seed = 1;
};

struct EmbeddingReport {
  std::string label;
  std::uint64_t elements_tested = 0;
  std::uint64_t pairs_tested = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
  bool multiplicative = true;
  bool trace_preserving = true;
  bool isometric = true;
  bool injective = true;
  bool consistent = true;  // trace_preserving == isometric
  Rational max_product_deviation{0};
  Rational max_trace_deviation{0};
  Rational max_distance_deviation{0};
  std::vector<Witness> witnesses;

  [[nodiscard]] bool pass() const noexcept {
    return multiplicative && trace_preserving && isometric && injective && consistent;
  }
};

// Tests pi on all of [[domain]] when its square fits exhaustive_cap, otherwise
// on sample_count seeded random pairs.
EmbeddingReport check_embedding(const SemigroupMap& pi, const SuiteBudget& budget);

struct CheckResult {
  std::string name;
  bool pass = true;
  std::uint64_t cases = 0;
  bool exhaustive = true;
  std::string detail;
  std::vector<Witness> witnesses;  // first few failures
};

struct SuiteReport {
  std::string suite;
  std::vector<std::string> instances;  // what the checks ran on
  SuiteBudget budget;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool pass() const noexcept;
};

std::vector<std::string> suite_names();

// Runs a named suite on `groupoid`, or on the suite's built-in instances when
// none is given. Throws InputError for an unknown suite or an unusable
// groupoid.
SuiteReport run_suite(const std::string& name, const std::optional<GroupoidPtr>& groupoid, const SuiteBudget& budget);

}  // namespace soficlab
