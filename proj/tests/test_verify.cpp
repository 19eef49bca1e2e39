#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "soficlab/constructions.hpp"
#include "soficlab/errors.hpp"
#include "soficlab/io.hpp"
#include "soficlab/verify.hpp"

using namespace soficlab;

namespace {

GroupoidPtr pairs(std::size_t n) { return share(FiniteGroupoid::full_relation(n)); }

const CheckResult* find_check(const SuiteReport& r, const std::string& prefix) {
  for (auto const& c : r.checks) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("almost morphism examples") {
  auto const g = pairs(2);
  auto const all = enumerate_bisections(g, EnumerationKind::semigroup, 100);
  auto const id = check_almost_morphism(identity_map(g), all, Rational(1, 100));
  CHECK(id.pass);
  CHECK(id.k_size == 7);
  CHECK(id.max_product_deviation == 0);
  CHECK(id.max_trace_deviation == 0);
  CHECK(id.max_distance_deviation == 0);

  auto const k3 = enumerate_bisections(pairs(3), EnumerationKind::semigroup, 100);
  auto const lad = check_almost_morphism(ladder_map(3, 7), k3, Rational(4, 5));
  CHECK(lad.pass);
  CHECK(lad.max_distance_deviation <= Rational(3, 4));
  CHECK(lad.max_product_deviation == 0);

  auto const one = Bisection::identity(g);
  auto const swap = Bisection(g, {Arrow{0, 0, 1, 0}, Arrow{0, 0, 0, 1}});
  FiniteMap const collapse{{swap, one}, {one, one}};
  std::vector<Bisection> const k{swap};
  auto const bad = check_almost_morphism(collapse, k, Rational(1, 2));
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_trace_deviation == 1);
  CHECK_FALSE(bad.witnesses.empty());

  FiniteMap const partial{{swap, one}};
  CHECK_THROWS_WITH_AS(check_almost_morphism(partial, k, Rational(1, 2)), doctest::Contains("incomplete"),
                       InputError);
}

TEST_CASE("pass is exactly the strict epsilon comparison") {
  auto const k3 = enumerate_bisections(pairs(3), EnumerationKind::semigroup, 100);
  auto const r = check_almost_morphism(ladder_map(3, 4), k3, Rational(1));
  auto const worst = std::max(r.max_product_deviation, r.max_trace_deviation);
  REQUIRE(worst > 0);
  CHECK_FALSE(check_almost_morphism(ladder_map(3, 4), k3, worst).pass);
  CHECK(check_almost_morphism(ladder_map(3, 4), k3, worst + Rational(1, 1000)).pass);
}

TEST_CASE("check_embedding examples") {
  auto const sq = share(FiniteGroupoid::connected(CayleyTable::cyclic(2), 2));
  auto const e = check_embedding(embed_connected(sq), SuiteBudget{});
  CHECK(e.pass());
  CHECK(e.exhaustive);
  CHECK(e.elements_tested == 17);

  auto const step = check_embedding(ladder_map(2, 3), SuiteBudget{});
  CHECK_FALSE(step.pass());
  CHECK(step.multiplicative);
  CHECK_FALSE(step.trace_preserving);
  CHECK_FALSE(step.isometric);
  CHECK(step.consistent);
  CHECK(step.max_trace_deviation <= Rational(1, 3));
  CHECK(step.max_trace_deviation > 0);

  CHECK(check_embedding(identity_map(pairs(3)), SuiteBudget{}).pass());

  auto const s3 = share(FiniteGroupoid::connected(CayleyTable::symmetric(3), 2));
  SuiteBudget small;
  small.exhaustive_cap = 1'000;
  small.sample_count = 500;
  small.seed = 9;
  auto const sampled = check_embedding(embed_connected(s3), small);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.seed == 9);
  CHECK(sampled.pass());
}

TEST_CASE("every suite runs, and all but metric-prop pass") {
  for (auto const& name : suite_names()) {
    CAPTURE(name);
    auto const r = run_suite(name, std::nullopt, SuiteBudget{});
    CHECK_FALSE(r.checks.empty());
    if (name == "metric-prop") {
      CHECK_FALSE(r.pass());
    } else {
      CHECK(r.pass());
    }
  }
  CHECK_THROWS_AS(run_suite("no-such-suite", std::nullopt, SuiteBudget{}), InputError);
}

TEST_CASE("metric-prop isolates the inverse-invariance failure") {
  auto const r = run_suite("metric-prop", std::nullopt, SuiteBudget{});
  for (auto const& c : r.checks) {
    CAPTURE(c.name);
    if (c.name.find("item 1,") != std::string::npos) {
      CHECK_FALSE(c.pass);
      CHECK_FALSE(c.witnesses.empty());
    } else {
      CHECK(c.pass);
    }
  }
}

TEST_CASE("suites are deterministic in seed and budget") {
  SuiteBudget b;
  b.exhaustive_cap = 50;
  b.sample_count = 50;
  b.seed = 4;
  for (auto const& name : {"trace-distance", "metric-prop", "embed-connected"}) {
    auto const x = render(to_json(run_suite(name, std::nullopt, b)));
    auto const y = render(to_json(run_suite(name, std::nullopt, b)));
    CHECK(x == y);
  }
  auto const td = run_suite("trace-distance", std::nullopt, b);
  auto const* c = find_check(td, "[[3]]: d(a, b) =");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->exhaustive);
  CHECK(c->cases == 50);
}

TEST_CASE("suites accept a user groupoid") {
  auto const g = share(FiniteGroupoid::full_relation(3));
  auto const r = run_suite("trace-distance", g, SuiteBudget{});
  CHECK(r.pass());
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[1].cases == 1156);
  CHECK(r.checks[1].exhaustive);
  CHECK(run_suite("finite-index", share(FiniteGroupoid::group(CayleyTable::cyclic(4))), SuiteBudget{}).pass());
}
