#include "soficlab/verify.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "soficlab/errors.hpp"
#include "soficlab/partial_injection.hpp"

namespace soficlab {

namespace {

constexpr std::size_t max_witnesses = 5;
constexpr std::size_t max_sampled_pool = 4096;

Witness witness(std::string what, std::vector<WitnessEntry> entries, Rational deviation = Rational(0)) {
  return Witness{std::move(what), deviation, std::move(entries)};
}

// Keeps the first witness reaching the running maximum.
struct Worst {
  Rational value{0};
  std::optional<Witness> witness;

  void offer(const Rational& v, const std::function<Witness()>& make) {
    if (v > value || (!witness && v > 0)) {
      value = v;
      witness = make();
    }
  }
};

// ---------------------------------------------------------------------------
// Element pools and tuple iteration

struct Pool {
  std::vector<Bisection> elements;
  bool exhaustive = true;
};

Pool make_pool(const GroupoidPtr& g, EnumerationKind kind, const SuiteBudget& budget, std::mt19937_64& rng) {
  Pool pool;
  if (predicted_count(*g, kind) <= budget.exhaustive_cap) {
    pool.elements = enumerate_bisections(g, kind, budget.exhaustive_cap);
    return pool;
  }
  pool.exhaustive = false;
  auto const count = std::min<std::uint64_t>(budget.sample_count, max_sampled_pool);
  for (std::uint64_t i = 0; i < count; ++i) {
    pool.elements.push_back(random_bisection(g, rng, kind == EnumerationKind::group));
  }
  return pool;
}

struct MalgPool {
  std::vector<MAlgElement> elements;
  bool exhaustive = true;
};

MalgPool make_malg_pool(const FiniteGroupoid& g, const SuiteBudget& budget, std::mt19937_64& rng) {
  MalgPool pool;
  if (predicted_count(g, EnumerationKind::malg) <= budget.exhaustive_cap) {
    pool.elements = enumerate_malg(g, budget.exhaustive_cap);
    return pool;
  }
  pool.exhaustive = false;
  auto const count = std::min<std::uint64_t>(budget.sample_count, max_sampled_pool);
  for (std::uint64_t i = 0; i < count; ++i) pool.elements.push_back(random_malg(g, rng));
  return pool;
}

std::uint64_t saturating_power(std::uint64_t base, unsigned exponent) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    out *= base;
  }
  return out;
}

// Visits every arity-tuple of indices below n when the pool is complete and
// the tuple count fits the cap, otherwise sample_count random tuples. Returns
// whether the run was exhaustive.
bool for_tuples(std::size_t n, bool pool_exhaustive, unsigned arity, const SuiteBudget& budget, std::mt19937_64& rng,
                const std::function<void(std::span<const std::size_t>)>& visit) {
  std::vector<std::size_t> idx(arity, 0);
  if (n == 0) return pool_exhaustive;
  if (pool_exhaustive && saturating_power(n, arity) <= budget.exhaustive_cap) {
    while (true) {
      visit(idx);
      std::size_t pos = arity;
      while (pos > 0) {
        --pos;
        if (++idx[pos] < n) break;
        idx[pos] = 0;
        if (pos == 0) return true;
      }
      if (arity == 0) return true;
    }
  }
  for (std::uint64_t k = 0; k < budget.sample_count; ++k) {
    for (auto& i : idx) i = rng() % n;
    visit(idx);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Checks

class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  void expect(bool ok, const std::function<Witness()>& make) {
    ++result_.cases;
    if (ok) return;
    ++failures_;
    result_.pass = false;
    if (result_.witnesses.size() < max_witnesses) result_.witnesses.push_back(make());
  }

  CheckResult finish(bool exhaustive, std::string detail = {}) {
    result_.exhaustive = exhaustive;
    if (failures_ > 0) {
      auto counts = std::to_string(failures_) + " of " + std::to_string(result_.cases) + " cases fail";
      detail = detail.empty() ? counts : counts + "; " + detail;
    }
    result_.detail = std::move(detail);
    return std::move(result_);
  }

 private:
  CheckResult result_;
  std::uint64_t failures_ = 0;
};

// All products, inverses, traces and distances of a complete element list.
struct MonoidTable {
  const std::vector<Bisection>* elements = nullptr;
  std::size_t n = 0;
  std::vector<std::size_t> product;
  std::vector<std::size_t> inverse;
  std::vector<Rational> trace;
  std::vector<Rational> dist;

  [[nodiscard]] std::size_t mul(std::size_t i, std::size_t j) const { return product[i * n + j]; }
  [[nodiscard]] const Rational& d(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
  [[nodiscard]] const Bisection& at(std::size_t i) const { return (*elements)[i]; }
};

MonoidTable build_table(const std::vector<Bisection>& elements) {
  MonoidTable t;
  t.elements = &elements;
  t.n = elements.size();
  std::map<Bisection, std::size_t> index;
  for (std::size_t i = 0; i < t.n; ++i) index.emplace(elements[i], i);
  auto lookup = [&](const Bisection& b) {
    auto it = index.find(b);
    check_invariant(it != index.end(), "product left the enumerated monoid");
    return it->second;
  };
  t.product.resize(t.n * t.n);
  t.dist.resize(t.n * t.n);
  for (std::size_t i = 0; i < t.n; ++i) {
    t.inverse.push_back(lookup(invert(elements[i])));
    t.trace.push_back(soficlab::trace(elements[i]));
    for (std::size_t j = 0; j < t.n; ++j) {
      t.product[i * t.n + j] = lookup(elements[i] * elements[j]);
      t.dist[i * t.n + j] = distance(elements[i], elements[j]);
    }
  }
  return t;
}

Bisection as_bisection(const GroupoidPtr& g, const MAlgElement& a) { return Bisection::idempotent(g, a); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string describe(const FiniteGroupoid& g) {
  std::vector<std::string> parts;
  for (auto const& c : g.components()) {
    parts.push_back(to_string(c.weight) + " (|Gamma|=" + std::to_string(c.group.order()) +
                    ", |Y|=" + std::to_string(c.base_size) + ")");
  }
  return join(parts, " + ");
}

struct Instance {
  std::string label;
  GroupoidPtr groupoid;
};

GroupoidPtr full_relation(std::size_t n) { return share(FiniteGroupoid::full_relation(n)); }
GroupoidPtr z2_over(std::size_t y) { return share(FiniteGroupoid::connected(CayleyTable::cyclic(2), y)); }

std::vector<Instance> instances_or(const std::optional<GroupoidPtr>& given, std::vector<Instance> defaults) {
  if (given) return {Instance{describe(**given), *given}};
  return defaults;
}

void append_embedding(SuiteReport& rep, const std::string& prefix, const EmbeddingReport& e,
                      const std::vector<std::string>& which = {"multiplicative", "trace-preserving", "isometric",
                                                               "injective", "consistent"}) {
  auto add = [&](const std::string& name, bool ok, const Rational& dev, const std::string& witness_kind) {
    CheckResult r;
    r.name = prefix + " " + name;
    r.pass = ok;
    r.cases = name == "trace-preserving" || name == "injective" ? e.elements_tested : e.pairs_tested;
    r.exhaustive = e.exhaustive;
    r.detail = "max deviation " + to_string(dev);
    for (auto const& w : e.witnesses) {
      if (w.what == witness_kind) r.witnesses.push_back(w);
    }
    rep.checks.push_back(std::move(r));
  };
  for (auto const& w : which) {
    if (w == "multiplicative") add(w, e.multiplicative, e.max_product_deviation, "product");
    if (w == "trace-preserving") add(w, e.trace_preserving, e.max_trace_deviation, "trace");
    if (w == "isometric") add(w, e.isometric, e.max_distance_deviation, "distance");
    if (w == "injective") add(w, e.injective, Rational(0), "injectivity");
    if (w == "consistent") {
      CheckResult r;
      r.name = prefix + " trace-preserving iff isometric";
      r.pass = e.consistent;
      r.cases = e.pairs_tested;
      r.exhaustive = e.exhaustive;
      r.detail = std::string("trace-preserving=") + (e.trace_preserving ? "true" : "false") +
                 ", isometric=" + (e.isometric ? "true" : "false");
      rep.checks.push_back(std::move(r));
    }
  }
}

// ---------------------------------------------------------------------------
// Suites

void suite_inverse_monoid(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                          std::mt19937_64& rng) {
  for (auto const& [label, g] : instances_or(given, {{"[[2]]", full_relation(2)}, {"[[3]]", full_relation(3)}})) {
    rep.instances.push_back(label);
    auto const pool = make_pool(g, EnumerationKind::semigroup, budget, rng);
    auto const& el = pool.elements;
    auto const n = el.size();
    std::optional<MonoidTable> table;
    if (pool.exhaustive && n * n <= budget.exhaustive_cap) table = build_table(el);
    auto const one = Bisection::identity(g);
    auto const zero = Bisection::empty(g);

    Tally regular(label + ": a a^-1 a = a and a^-1 a a^-1 = a^-1");
    Tally units(label + ": 1a = a1 = a and 0a = a0 = 0");
    for (auto const& a : el) {
      auto const ai = invert(a);
      regular.expect(a * ai * a == a && ai * a * ai == ai, [&] { return witness("regularity", {{"a", a}}); });
      units.expect(one * a == a && a * one == a && zero * a == zero && a * zero == zero,
                   [&] { return witness("unit/zero", {{"a", a}}); });
    }
    rep.checks.push_back(regular.finish(pool.exhaustive));
    rep.checks.push_back(units.finish(pool.exhaustive));

    Tally inverse(label + ": (ab)^-1 = b^-1 a^-1");
    Tally commute(label + ": idempotents commute");
    auto exhaustive = for_tuples(n, pool.exhaustive, 2, budget, rng, [&](std::span<const std::size_t> t) {
      auto const& a = el[t[0]];
      auto const& b = el[t[1]];
      inverse.expect(invert(a * b) == invert(b) * invert(a), [&] { return witness("inverse", {{"a", a}, {"b", b}}); });
      if (is_idempotent(a) && is_idempotent(b)) {
        commute.expect(a * b == b * a, [&] { return witness("commute", {{"e", a}, {"f", b}}); });
      }
    });
    rep.checks.push_back(inverse.finish(exhaustive));
    rep.checks.push_back(commute.finish(exhaustive));

    Tally assoc(label + ": (ab)c = a(bc)");
    exhaustive = for_tuples(n, pool.exhaustive, 3, budget, rng, [&](std::span<const std::size_t> t) {
      bool ok = table ? table->mul(table->mul(t[0], t[1]), t[2]) == table->mul(t[0], table->mul(t[1], t[2]))
                      : (el[t[0]] * el[t[1]]) * el[t[2]] == el[t[0]] * (el[t[1]] * el[t[2]]);
      assoc.expect(ok, [&] { return witness("associativity", {{"a", el[t[0]]}, {"b", el[t[1]]}, {"c", el[t[2]]}}); });
    });
    rep.checks.push_back(assoc.finish(exhaustive));
  }
}

void suite_metric(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                  std::mt19937_64& rng) {
  for (auto const& [label, g] : instances_or(given, {{"[[2]]", full_relation(2)}, {"[[3]]", full_relation(3)}})) {
    rep.instances.push_back(label);
    auto const pool = make_pool(g, EnumerationKind::semigroup, budget, rng);
    auto const& el = pool.elements;
    auto const n = el.size();
    std::optional<MonoidTable> table;
    if (pool.exhaustive && n * n <= budget.exhaustive_cap) table = build_table(el);

    Tally item1(label + ": metric item 1, d(a^-1, b^-1) = d(a, b)");
    Tally item3(label + ": metric item 3, d(a, b^-1) <= d(a, aba) + d(b, bab)");
    Tally symmetric(label + ": d(a, b) = d(b, a), and d(a, b) = 0 iff a = b");
    auto exhaustive = for_tuples(n, pool.exhaustive, 2, budget, rng, [&](std::span<const std::size_t> t) {
      auto const& a = el[t[0]];
      auto const& b = el[t[1]];
      auto const dab = distance(a, b);
      auto const dinv = distance(invert(a), invert(b));
      item1.expect(dab == dinv, [&] {
        return witness("item 1: d(a,b)=" + to_string(dab) + ", d(a^-1,b^-1)=" + to_string(dinv), {{"a", a}, {"b", b}},
                       abs_diff(dab, dinv));
      });
      auto const lhs = distance(a, invert(b));
      auto const rhs = distance(a, a * b * a) + distance(b, b * a * b);
      item3.expect(lhs <= rhs, [&] { return witness("item 3", {{"a", a}, {"b", b}}, lhs - rhs); });
      symmetric.expect(dab == distance(b, a) && ((dab == 0) == (a == b)),
                       [&] { return witness("symmetry/faithfulness", {{"a", a}, {"b", b}}); });
    });
    rep.checks.push_back(item1.finish(exhaustive));
    rep.checks.push_back(item3.finish(exhaustive));
    rep.checks.push_back(symmetric.finish(exhaustive));

    Tally triangle(label + ": d(a, c) <= d(a, b) + d(b, c)");
    exhaustive = for_tuples(n, pool.exhaustive, 3, budget, rng, [&](std::span<const std::size_t> t) {
      bool ok = table ? table->d(t[0], t[2]) <= table->d(t[0], t[1]) + table->d(t[1], t[2])
                      : distance(el[t[0]], el[t[2]]) <= distance(el[t[0]], el[t[1]]) + distance(el[t[1]], el[t[2]]);
      triangle.expect(ok, [&] { return witness("triangle", {{"a", el[t[0]]}, {"b", el[t[1]]}, {"c", el[t[2]]}}); });
    });
    rep.checks.push_back(triangle.finish(exhaustive));

    Tally item2(label + ": metric item 2, d(ab, cd) <= d(a, c) + d(b, d)");
    exhaustive = for_tuples(n, pool.exhaustive, 4, budget, rng, [&](std::span<const std::size_t> t) {
      bool ok = table ? table->d(table->mul(t[0], t[1]), table->mul(t[2], t[3])) <= table->d(t[0], t[2]) + table->d(t[1], t[3])
                      : distance(el[t[0]] * el[t[1]], el[t[2]] * el[t[3]]) <=
                            distance(el[t[0]], el[t[2]]) + distance(el[t[1]], el[t[3]]);
      item2.expect(ok, [&] {
        return witness("item 2", {{"a", el[t[0]]}, {"b", el[t[1]]}, {"c", el[t[2]]}, {"d", el[t[3]]}});
      });
    });
    rep.checks.push_back(item2.finish(exhaustive));

    auto const group = make_pool(g, EnumerationKind::group, budget, rng);
    Tally item1_full(label + ": metric item 1 on the full group");
    Tally range_form(label + ": mu(s(a sym-diff b)) = mu(r(a sym-diff b)) on the full group");
    exhaustive = for_tuples(group.elements.size(), group.exhaustive, 2, budget, rng, [&](std::span<const std::size_t> t) {
      auto const& a = group.elements[t[0]];
      auto const& b = group.elements[t[1]];
      item1_full.expect(distance(a, b) == distance(invert(a), invert(b)),
                        [&] { return witness("item 1 (full group)", {{"a", a}, {"b", b}}); });
      range_form.expect(distance(a, b) == range_distance(a, b),
                        [&] { return witness("range form", {{"a", a}, {"b", b}}); });
    });
    rep.checks.push_back(item1_full.finish(exhaustive));
    rep.checks.push_back(range_form.finish(exhaustive));
  }
}

void suite_trace_distance(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                          std::mt19937_64& rng) {
  for (auto const& [label, g] :
       instances_or(given, {{"[[3]]", full_relation(3)}, {"Z2 x Y^2 (|Y|=2)", z2_over(2)}})) {
    rep.instances.push_back(label);
    auto const pool = make_pool(g, EnumerationKind::semigroup, budget, rng);
    auto const& el = pool.elements;
    auto const one = Bisection::identity(g);

    Tally first(label + ": tr(a) = 1 - d(s(a), 1) - d(s(a), a)");
    for (auto const& a : el) {
      auto const s = as_bisection(g, source_set(a));
      auto const rhs = Rational(1) - distance(s, one) - distance(s, a);
      first.expect(trace(a) == rhs, [&] { return witness("identity 1", {{"a", a}}, abs_diff(trace(a), rhs)); });
    }
    rep.checks.push_back(first.finish(pool.exhaustive));

    Tally second(label + ": d(a, b) = tr(s(a)) + tr(s(b)) - tr(s(a)s(b)) - tr(b^-1 a)");
    auto exhaustive = for_tuples(el.size(), pool.exhaustive, 2, budget, rng, [&](std::span<const std::size_t> t) {
      auto const& a = el[t[0]];
      auto const& b = el[t[1]];
      auto const sa = as_bisection(g, source_set(a));
      auto const sb = as_bisection(g, source_set(b));
      auto const rhs = trace(sa) + trace(sb) - trace(sa * sb) - trace(invert(b) * a);
      second.expect(distance(a, b) == rhs,
                    [&] { return witness("identity 2", {{"a", a}, {"b", b}}, abs_diff(distance(a, b), rhs)); });
    });
    rep.checks.push_back(second.finish(exhaustive));
  }
}

void suite_support(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                   std::mt19937_64& rng) {
  for (auto const& [label, g] : instances_or(given, {{"[4]", full_relation(4)}, {"Z2 x Y^2 (|Y|=2)", z2_over(2)}})) {
    rep.instances.push_back(label);
    auto const group = make_pool(g, EnumerationKind::group, budget, rng);
    auto const& el = group.elements;
    auto const malg = make_malg_pool(*g, budget, rng);
    auto const one = Bisection::identity(g);

    Tally lemma1(label + ": supp a = fix b iff d(a, b) = 1 and tr(a) + tr(b) = 1");
    Tally lemma2(label + ": supp a and supp b disjoint iff d(a, b) = d(1, a) + d(1, b)");
    Tally covariance(label + ": supp(a b a^-1) = a . supp(b)");
    auto exhaustive = for_tuples(el.size(), group.exhaustive, 2, budget, rng, [&](std::span<const std::size_t> t) {
      auto const& a = el[t[0]];
      auto const& b = el[t[1]];
      bool const left1 = supp(a) == fix(b);
      bool const right1 = distance(a, b) == 1 && trace(a) + trace(b) == 1;
      lemma1.expect(left1 == right1, [&] { return witness("support lemma 1", {{"a", a}, {"b", b}}); });
      bool const left2 = set_intersection(supp(a), supp(b)).empty();
      bool const right2 = distance(a, b) == distance(one, a) + distance(one, b);
      lemma2.expect(left2 == right2, [&] { return witness("support lemma 2", {{"a", a}, {"b", b}}); });
      FullGroupElement const fa(a);
      covariance.expect(supp(a * b * invert(a)) == act(fa, supp(b)),
                        [&] { return witness("covariance", {{"a", a}, {"b", b}}); });
    });
    rep.checks.push_back(lemma1.finish(exhaustive));
    rep.checks.push_back(lemma2.finish(exhaustive));
    rep.checks.push_back(covariance.finish(exhaustive));

    Tally mass(label + ": mu(a . A) = mu(A)");
    for (auto const& a : el) {
      FullGroupElement const fa(a);
      for (auto const& units : malg.elements) {
        mass.expect(g->measure(act(fa, units)) == g->measure(units),
                    [&] { return witness("act mass", {{"a", a}, {"A", as_bisection(g, units)}}); });
      }
    }
    rep.checks.push_back(mass.finish(group.exhaustive && malg.exhaustive));

    // (a'A)(b'B) = a'b'(B cap b'^-1 . A), exhaustive in A and B.
    Tally corner(label + ": (a'A)(b'B) = a'b'(B cap b'^-1 . A)");
    SuiteBudget pair_budget = budget;
    auto const inner = malg.elements.size() * malg.elements.size();
    pair_budget.exhaustive_cap = inner == 0 ? 0 : budget.exhaustive_cap / inner;
    pair_budget.sample_count = std::max<std::uint64_t>(1, budget.sample_count / std::max<std::uint64_t>(inner, 1));
    exhaustive = for_tuples(el.size(), group.exhaustive, 2, pair_budget, rng, [&](std::span<const std::size_t> t) {
      auto const& a = el[t[0]];
      auto const& b = el[t[1]];
      FullGroupElement const b_inv(invert(b));
      for (auto const& ua : malg.elements) {
        auto const ia = as_bisection(g, ua);
        auto const moved = act(b_inv, ua);
        for (auto const& ub : malg.elements) {
          auto const ib = as_bisection(g, ub);
          auto const lhs = (a * ia) * (b * ib);
          auto const rhs = a * b * as_bisection(g, set_intersection(ub, moved));
          corner.expect(lhs == rhs, [&] { return witness("corner product", {{"a'", a}, {"b'", b}, {"A", ia}, {"B", ib}}); });
        }
      }
    });
    rep.checks.push_back(corner.finish(exhaustive && malg.exhaustive));
  }
}

void suite_extension(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                     std::mt19937_64& rng) {
  for (auto const& [label, g] : instances_or(given, {{"[[4]]", full_relation(4)}, {"Z2 x Y^2 (|Y|=2)", z2_over(2)}})) {
    rep.instances.push_back(label);
    auto const pool = make_pool(g, EnumerationKind::semigroup, budget, rng);
    Tally contains(label + ": gamma is contained in the full-group element gamma~");
    Tally fixed(label + ": gamma~ = gamma when gamma is full");
    for (auto const& gamma : pool.elements) {
      std::optional<Bisection> ext;
      std::string error;
      try {
        ext = extend_to_full_group(gamma).bisection();
      } catch (const std::exception& e) {
        error = e.what();
      }
      contains.expect(ext && intersect(*ext, gamma) == gamma && is_full(*ext), [&] {
        auto w = witness("extension" + (error.empty() ? std::string() : ": " + error), {{"gamma", gamma}});
        if (ext) w.entries.push_back({"gamma~", *ext});
        return w;
      });
      if (is_full(gamma)) fixed.expect(ext && *ext == gamma, [&] { return witness("full input moved", {{"gamma", gamma}}); });
    }
    rep.checks.push_back(contains.finish(pool.exhaustive));
    rep.checks.push_back(fixed.finish(pool.exhaustive));
  }
}

// Bisections of a groupoid counted straight from the definition, over all
// arrow subsets.
std::optional<std::uint64_t> count_by_subsets(const FiniteGroupoid& g) {
  auto const arrows = g.arrows();
  if (arrows.size() > 20) return std::nullopt;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << arrows.size()); ++mask) {
    std::vector<bool> src(g.unit_count(), false), rng(g.unit_count(), false);
    bool ok = true;
    for (std::size_t i = 0; i < arrows.size() && ok; ++i) {
      if (!(mask >> i & 1U)) continue;
      auto const s = g.source(arrows[i]);
      auto const r = g.range(arrows[i]);
      ok = !src[s] && !rng[r];
      src[s] = rng[r] = true;
    }
    if (ok) ++count;
  }
  return count;
}

void suite_enumeration(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                       std::mt19937_64&) {
  for (auto const& [label, g] : instances_or(given, {{"[[2]]", full_relation(2)},
                                                     {"[[3]]", full_relation(3)},
                                                     {"[[4]]", full_relation(4)},
                                                     {"Z2 x Y^2 (|Y|=2)", z2_over(2)}})) {
    rep.instances.push_back(label);
    for (auto kind : {EnumerationKind::semigroup, EnumerationKind::group, EnumerationKind::malg}) {
      auto const name = kind == EnumerationKind::semigroup ? "semigroup" : kind == EnumerationKind::group ? "group" : "malg";
      Tally t(label + ": " + name + " enumeration is complete and repeat-free");
      auto const predicted = predicted_count(*g, kind);
      if (predicted > budget.exhaustive_cap) {
        rep.checks.push_back(t.finish(false, "skipped: predicted " + std::to_string(predicted) + " above cap"));
        continue;
      }
      std::uint64_t found = 0;
      std::uint64_t distinct = 0;
      std::optional<std::uint64_t> oracle;
      if (kind == EnumerationKind::malg) {
        auto const all = enumerate_malg(*g, budget.exhaustive_cap);
        found = all.size();
        distinct = std::set<MAlgElement>(all.begin(), all.end()).size();
      } else {
        auto const all = enumerate_bisections(g, kind, budget.exhaustive_cap);
        found = all.size();
        distinct = std::set<Bisection>(all.begin(), all.end()).size();
        if (kind == EnumerationKind::semigroup) oracle = count_by_subsets(*g);
        // A non-full element in the group listing counts as a defect.
        if (kind == EnumerationKind::group && !std::all_of(all.begin(), all.end(), [](auto const& b) { return is_full(b); })) {
          distinct = 0;
        }
      }
      std::string detail = "count " + std::to_string(found) + ", closed form " + std::to_string(predicted);
      if (oracle) detail += ", subset count " + std::to_string(*oracle);
      t.expect(found == predicted && distinct == found && (!oracle || *oracle == found),
               [&] { return witness(detail, {}); });
      rep.checks.push_back(t.finish(true, detail));
    }
  }
}

void suite_ladder(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                  std::mt19937_64& rng) {
  std::vector<std::size_t> ns{2, 3};
  std::size_t p_max = 12;
  if (given) {
    auto const& g = **given;
    if (g.component_count() != 1 || g.component(0).group.order() != 1) {
      throw InputError("suite ladder needs a full relation groupoid [[n]]");
    }
    ns = {g.component(0).base_size};
    p_max = std::max<std::size_t>(12, 4 * ns[0]);
  }
  for (auto n : ns) {
    auto const label = "[[" + std::to_string(n) + "]]";
    rep.instances.push_back(label);
    std::vector<std::size_t> ps;
    for (std::size_t p = n + 1; p <= p_max; ++p) ps.push_back(p);
    auto const reports = ladder_profile(n, ps, budget.exhaustive_cap, budget.seed);

    Tally bound(label + ": distance deviation <= n/(p-n) for p = " + std::to_string(n + 1) + ".." + std::to_string(p_max));
    Tally zero(label + ": distance deviation 0 when n divides p");
    std::vector<std::string> sups;
    bool exhaustive = true;
    for (auto const& r : reports) {
      exhaustive = exhaustive && r.exhaustive;
      sups.push_back("p=" + std::to_string(r.p) + ":" + to_string(r.observed_sup));
      auto const w = [&] {
        return witness("p=" + std::to_string(r.p) + " sup " + to_string(r.observed_sup), {}, r.observed_sup);
      };
      bound.expect(r.bound && r.observed_sup <= *r.bound, w);
      if (r.p % n == 0) zero.expect(r.observed_sup == 0, w);
    }
    rep.checks.push_back(bound.finish(exhaustive, "sup by p: " + join(sups, ", ")));
    rep.checks.push_back(zero.finish(exhaustive));

    auto const elements = enumerate_partial_injections(n);
    bool const pairs_fit = elements.size() * elements.size() <= budget.exhaustive_cap;
    auto const dom = full_relation(n);
    for (std::size_t k = 1; k <= 3; ++k) {
      Tally morphism(label + ": block copies x" + std::to_string(k) + " preserve product, inverse, trace, distance");
      auto ex = for_tuples(elements.size(), pairs_fit, 2, budget, rng, [&](std::span<const std::size_t> t) {
        auto const& a = elements[t[0]];
        auto const& b = elements[t[1]];
        auto const ia = embed_multiple(a, k);
        auto const ib = embed_multiple(b, k);
        bool ok = embed_multiple(a * b, k) == ia * ib && embed_multiple(invert(a), k) == invert(ia) &&
                  trace(ia) == trace(a) && distance(ia, ib) == distance(a, b);
        morphism.expect(ok, [&] { return witness("embed_multiple", {{"a", to_bisection(a, dom)}, {"b", to_bisection(b, dom)}}); });
      });
      rep.checks.push_back(morphism.finish(ex));
    }
    Tally step(label + ": one step preserves products, moves trace and distance by at most 1/(n+1)");
    Rational const slack(1, static_cast<std::int64_t>(n + 1));
    auto ex = for_tuples(elements.size(), pairs_fit, 2, budget, rng, [&](std::span<const std::size_t> t) {
      auto const& a = elements[t[0]];
      auto const& b = elements[t[1]];
      auto const ia = embed_step(a);
      auto const ib = embed_step(b);
      bool ok = embed_step(a * b) == ia * ib && abs_diff(trace(ia), trace(a)) <= slack &&
                abs_diff(distance(ia, ib), distance(a, b)) <= slack;
      step.expect(ok, [&] { return witness("embed_step", {{"a", to_bisection(a, dom)}, {"b", to_bisection(b, dom)}}); });
    });
    rep.checks.push_back(step.finish(ex));
  }
}

void suite_embed_connected(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                           std::mt19937_64&) {
  std::vector<Instance> defaults;
  for (auto const& [name, table] : std::vector<std::pair<std::string, CayleyTable>>{
           {"Z2", CayleyTable::cyclic(2)}, {"Z3", CayleyTable::cyclic(3)}, {"S3", CayleyTable::symmetric(3)}}) {
    for (std::size_t y = 1; y <= 2; ++y) {
      defaults.push_back({name + " x Y^2 (|Y|=" + std::to_string(y) + ")", share(FiniteGroupoid::connected(table, y))});
    }
  }
  for (auto const& [label, g] : instances_or(given, defaults)) {
    rep.instances.push_back(label);
    append_embedding(rep, label + ": embed_connected", check_embedding(embed_connected(g), budget));
  }
}

GroupoidPtr mixture(const Rational& t) {
  return share(convex_combination({{t, FiniteGroupoid::group(CayleyTable::cyclic(2))}, {1 - t, FiniteGroupoid::point()}}));
}

void suite_embed_convex(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                        std::mt19937_64&) {
  auto const defaults = std::vector<Instance>{
      {"1/2 Z2 + 1/2 point", mixture(Rational(1, 2))},
      {"1/3 Z2 + 2/3 point", mixture(Rational(1, 3))},
      {"1/3 [[2]] + 2/3 Z3", share(convex_combination({{Rational(1, 3), FiniteGroupoid::full_relation(2)},
                                                        {Rational(2, 3), FiniteGroupoid::group(CayleyTable::cyclic(3))}}))}};
  for (auto const& [label, g] : instances_or(given, defaults)) {
    rep.instances.push_back(label);
    append_embedding(rep, label + ": embed_convex", check_embedding(embed_convex(g), budget));
  }
  if (given) return;
  // Two measures on Z2 + point joined with t = 1/2.
  auto const nu = mixture(Rational(1, 2));
  auto const rho = mixture(Rational(1, 3));
  auto const pair = embed_convex_pair(embed_convex(nu), embed_convex(rho), Rational(1, 2));
  rep.instances.push_back("pair t=1/2 of (1/2,1/2) and (1/3,2/3)");
  append_embedding(rep, "pair t=1/2: embed_convex_pair", check_embedding(pair, budget));
}

std::vector<Arrow> isotropy_arrows(const FiniteGroupoid& g) {
  std::vector<Arrow> out;
  for (auto const& a : g.arrows()) {
    if (a.y_to == a.y_from) out.push_back(a);
  }
  return out;
}

void finite_index_instance(SuiteReport& rep, const std::string& label, const GroupoidPtr& g,
                           const std::vector<Arrow>& h, const SuiteBudget& budget, std::mt19937_64& rng) {
  rep.instances.push_back(label);
  auto const search = find_transversals(g, h);
  Tally found(label + ": transversal system exists");
  found.expect(search.system.has_value(), [&] { return witness(search.failure, {}); });
  rep.checks.push_back(found.finish(true, search.system ? "N=" + std::to_string(search.system->index())
                                                        : search.failure));
  if (!search.system) return;
  auto const& sys = *search.system;

  Tally partition(label + ": the sets psi_i H partition G");
  std::vector<std::size_t> hits(g->arrow_count(), 0);
  for (auto const& psi : sys.transversals) {
    for (auto const& p : psi.bisection().arrows()) {
      for (auto const& x : sys.subgroupoid_arrows) {
        if (auto q = g->multiply(p, x)) ++hits[g->arrow_index(*q)];
      }
    }
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    partition.expect(hits[i] == 1, [&] {
      return witness("arrow covered " + std::to_string(hits[i]) + " times", {{"arrow", Bisection(g, {g->arrow_at(i)})}});
    });
  }
  rep.checks.push_back(partition.finish(true));

  auto const pool = make_pool(g, EnumerationKind::semigroup, budget, rng);
  auto const& el = pool.elements;
  auto const n = sys.index();
  std::vector<std::vector<std::vector<Bisection>>> blocks;
  for (auto const& a : el) blocks.push_back(block_components(a, sys));

  Tally diagonal(label + ": tr(a_ii) = tr(a) for every i");
  for (std::size_t k = 0; k < el.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      diagonal.expect(trace(blocks[k][i][i]) == trace(el[k]),
                      [&] { return witness("diagonal trace, i=" + std::to_string(i), {{"a", el[k]}}); });
    }
  }
  rep.checks.push_back(diagonal.finish(pool.exhaustive));

  Tally identity(label + ": union_j a_ij b_jl = (ab)_il");
  auto exhaustive = for_tuples(el.size(), pool.exhaustive, 2, budget, rng, [&](std::span<const std::size_t> t) {
    auto const& A = blocks[t[0]];
    auto const& B = blocks[t[1]];
    auto const AB = block_components(el[t[0]] * el[t[1]], sys);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<Arrow> joined;
        for (std::size_t j = 0; j < n; ++j) {
          auto const term = A[i][j] * B[j][l];
          joined.insert(joined.end(), term.arrows().begin(), term.arrows().end());
        }
        bool ok = false;
        try {
          ok = Bisection(sys.sub_ptr, joined) == AB[i][l];
        } catch (const InputError&) {
        }
        identity.expect(ok, [&] {
          return witness("block identity at (" + std::to_string(i) + "," + std::to_string(l) + ")",
                         {{"a", el[t[0]]}, {"b", el[t[1]]}});
        });
      }
    }
  });
  rep.checks.push_back(identity.finish(exhaustive));

  Tally defined(label + ": Xi well-defined (block terms disjoint)");
  std::string failure;
  try {
    auto const xi = finite_index_lift(sys, identity_map(sys.sub_ptr));
    auto const report = check_embedding(xi, budget);
    defined.expect(true, [] { return Witness{}; });
    rep.checks.push_back(defined.finish(report.exhaustive));
    append_embedding(rep, label + ": Xi", report, {"multiplicative", "trace-preserving", "isometric", "injective"});
  } catch (const AssertionFailure& e) {
    defined.expect(false, [&] { return witness(e.what(), {}); });
    rep.checks.push_back(defined.finish(pool.exhaustive));
  }
}

void suite_finite_index(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                        std::mt19937_64& rng) {
  if (given) {
    finite_index_instance(rep, describe(**given) + " over its isotropy", *given, isotropy_arrows(**given), budget, rng);
    return;
  }
  auto const z4 = share(FiniteGroupoid::group(CayleyTable::cyclic(4)));
  finite_index_instance(rep, "Z4 over Z2", z4, {Arrow{0, 0, 0, 0}, Arrow{0, 2, 0, 0}}, budget, rng);

  auto const s3_table = CayleyTable::symmetric(3);
  auto const s3 = share(FiniteGroupoid::group(s3_table));
  std::vector<Arrow> z3;
  for (std::size_t x = 0; x < s3_table.order(); ++x) {
    if (s3_table.multiply(x, s3_table.multiply(x, x)) == 0) z3.push_back(Arrow{0, x, 0, 0});
  }
  finite_index_instance(rep, "S3 over Z3", s3, z3, budget, rng);

  auto const pair = full_relation(2);
  std::vector<Arrow> units;
  for (std::size_t u = 0; u < pair->unit_count(); ++u) units.push_back(pair->unit_arrow(u));
  finite_index_instance(rep, "[[2]] over its units", pair, units, budget, rng);
}

void suite_product(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                   std::mt19937_64& rng) {
  auto const g = given ? *given : full_relation(2);
  auto const label = given ? describe(*g) + " squared" : std::string("[[2]] x [[2]]");
  rep.instances.push_back(label);
  auto const space = ProductSpace::make(g, g);
  auto const phi = embed_convex(g);
  auto const codomain = ProductSpace::make(phi.codomain, phi.codomain);

  std::map<Bisection, Bisection> images;
  auto image = [&](const Bisection& x) -> const Bisection& {
    auto it = images.find(x);
    if (it == images.end()) {
      it = images.emplace(x, product_embedding(phi, phi, codomain, rectangle_decompose(space, x))).first;
    }
    return it->second;
  };

  auto const pool = make_pool(space.whole, EnumerationKind::semigroup, budget, rng);
  Tally invariants(label + ": decompositions lie in M and reassemble");
  Tally independent(label + ": Phi (x) Psi is independent of the decomposition");
  Tally trace_kept(label + ": tr(Phi (x) Psi (x)) = tr(x)");
  for (auto const& x : pool.elements) {
    std::optional<RectangleUnion> fwd, rev;
    std::string error;
    try {
      fwd = rectangle_decompose(space, x, MergeOrder::forward);
      rev = rectangle_decompose(space, x, MergeOrder::reverse);
    } catch (const AssertionFailure& e) {
      error = e.what();
    }
    bool const ok = fwd && rev && satisfies_rectangle_invariants(*fwd) && satisfies_rectangle_invariants(*rev) &&
                    assemble(space, *fwd) == x && assemble(space, *rev) == x;
    invariants.expect(ok, [&] { return witness("decomposition " + error, {{"phi", x}}); });
    if (!ok) continue;
    auto const a = product_embedding(phi, phi, codomain, *fwd);
    auto const b = product_embedding(phi, phi, codomain, *rev);
    independent.expect(a == b, [&] { return witness("re-decomposition", {{"phi", x}, {"forward", a}, {"reverse", b}}); });
    trace_kept.expect(trace(a) == trace(x), [&] { return witness("trace", {{"phi", x}, {"image", a}}); });
  }
  rep.checks.push_back(invariants.finish(pool.exhaustive));
  rep.checks.push_back(independent.finish(pool.exhaustive));
  rep.checks.push_back(trace_kept.finish(pool.exhaustive));

  Tally multiplicative(label + ": Phi (x) Psi is multiplicative");
  auto exhaustive = for_tuples(pool.elements.size(), pool.exhaustive, 2, budget, rng, [&](std::span<const std::size_t> t) {
    auto const& x = pool.elements[t[0]];
    auto const& y = pool.elements[t[1]];
    multiplicative.expect(image(x * y) == image(x) * image(y), [&] { return witness("product", {{"x", x}, {"y", y}}); });
  });
  rep.checks.push_back(multiplicative.finish(exhaustive));

  auto const factors = make_pool(g, EnumerationKind::semigroup, budget, rng);
  Tally rectangles(label + ": tr(Phi(a) x Psi(b)) = tr(a) tr(b)");
  exhaustive = for_tuples(factors.elements.size(), factors.exhaustive, 2, budget, rng, [&](std::span<const std::size_t> t) {
    auto const& a = factors.elements[t[0]];
    auto const& b = factors.elements[t[1]];
    auto const img = product_embedding(phi, phi, codomain, RectangleUnion{{Rectangle{a, b}}});
    rectangles.expect(trace(img) == trace(a) * trace(b), [&] { return witness("rectangle trace", {{"a", a}, {"b", b}}); });
  });
  rep.checks.push_back(rectangles.finish(exhaustive));
}

void restrict_instance(SuiteReport& rep, const std::string& label, const SemigroupMap& theta, const MAlgElement& units,
                       const SuiteBudget& budget, std::mt19937_64& rng) {
  rep.instances.push_back(label);
  auto const restricted = restrict_almost_morphism(theta, units);
  append_embedding(rep, label + ": theta_H", check_embedding(restricted.map, budget),
                   {"multiplicative", "trace-preserving", "isometric"});

  auto const mass = theta.domain->measure(units);
  auto const e = theta(Bisection::idempotent(theta.domain, units));
  auto const pool = make_pool(restricted.map.domain, EnumerationKind::semigroup, budget, rng);
  Tally domain_trace(label + ": tr_H(a) = tr(a) / tr(1_H)");
  Tally codomain_trace(label + ": tr_F'(theta_H(a)) = tr_F(theta(1_H) theta(a) theta(1_H)) / tr_F(theta(1_H))");
  for (auto const& a : pool.elements) {
    std::vector<Arrow> lifted;
    for (auto const& x : a.arrows()) lifted.push_back(restricted.domain.lift(x));
    Bisection const big(theta.domain, lifted);
    domain_trace.expect(trace(a) == trace(big) / mass, [&] { return witness("domain trace", {{"a", a}}); });
    codomain_trace.expect(trace(restricted.map(a)) == trace(e * theta(big) * e) / trace(e),
                          [&] { return witness("codomain trace", {{"a", a}}); });
  }
  rep.checks.push_back(domain_trace.finish(pool.exhaustive));
  rep.checks.push_back(codomain_trace.finish(pool.exhaustive));
}

void suite_restrict(SuiteReport& rep, const std::optional<GroupoidPtr>& given, const SuiteBudget& budget,
                    std::mt19937_64& rng) {
  if (given) {
    auto const& g = *given;
    auto const units = g->component_count() > 1 ? g->component_units(0) : MAlgElement({0});
    restrict_instance(rep, describe(*g) + " corner", embed_convex(g), units, budget, rng);
    return;
  }
  auto const pair = full_relation(2);
  restrict_instance(rep, "identity on [[2]], corner {0}", identity_map(pair), MAlgElement({0}), budget, rng);
  restrict_instance(rep, "identity on [[2]], corner {0,1}", identity_map(pair), pair->all_units(), budget, rng);
  auto const z2y2 = z2_over(2);
  restrict_instance(rep, "embed_connected on Z2 x Y^2 (|Y|=2), corner {0}", embed_connected(z2y2), MAlgElement({0}),
                    budget, rng);
  auto const mix = mixture(Rational(1, 2));
  restrict_instance(rep, "embed_convex on 1/2 Z2 + 1/2 point, corner Z2", embed_convex(mix), mix->component_units(0),
                    budget, rng);
}

using SuiteFn = void (*)(SuiteReport&, const std::optional<GroupoidPtr>&, const SuiteBudget&, std::mt19937_64&);

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table{
      {"inverse-monoid", suite_inverse_monoid}, {"metric-prop", suite_metric},
      {"trace-distance", suite_trace_distance}, {"support", suite_support},
      {"extension", suite_extension},           {"enumeration", suite_enumeration},
      {"ladder", suite_ladder},                 {"embed-connected", suite_embed_connected},
      {"embed-convex", suite_embed_convex},     {"finite-index", suite_finite_index},
      {"product", suite_product},               {"restrict", suite_restrict},
  };
  return table;
}

// Shared by both check_almost_morphism overloads.
AlmostMorphismReport almost_morphism(const std::function<Bisection(const Bisection&)>& pi, std::span<const Bisection> k,
                                     const Rational& epsilon) {
  AlmostMorphismReport rep;
  rep.k_size = k.size();
  rep.epsilon = epsilon;
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (!same_groupoid(k[i].groupoid(), k[0].groupoid())) throw InputError("K mixes bisections of different groupoids");
  }
  std::vector<Bisection> images;
  for (auto const& a : k) images.push_back(pi(a));
  for (std::size_t i = 1; i < images.size(); ++i) {
    if (!same_groupoid(images[i].groupoid(), images[0].groupoid())) throw InputError("images lie in different groupoids");
  }

  Worst product, tr, dist;
  for (std::size_t i = 0; i < k.size(); ++i) {
    auto const dev = abs_diff(trace(k[i]), trace(images[i]));
    tr.offer(dev, [&] { return witness("trace", {{"a", k[i]}, {"pi(a)", images[i]}}, dev); });
    for (std::size_t j = 0; j < k.size(); ++j) {
      auto const lhs = pi(k[i] * k[j]);
      auto const rhs = images[i] * images[j];
      auto const pdev = distance(lhs, rhs);
      product.offer(pdev, [&] {
        return witness("product", {{"a", k[i]}, {"b", k[j]}, {"pi(ab)", lhs}, {"pi(a)pi(b)", rhs}}, pdev);
      });
      auto const ddev = abs_diff(distance(k[i], k[j]), distance(images[i], images[j]));
      dist.offer(ddev, [&] {
        return witness("distance", {{"a", k[i]}, {"b", k[j]}, {"pi(a)", images[i]}, {"pi(b)", images[j]}}, ddev);
      });
    }
  }
  rep.max_product_deviation = product.value;
  rep.max_trace_deviation = tr.value;
  rep.max_distance_deviation = dist.value;
  rep.pass = rep.max_product_deviation < epsilon && rep.max_trace_deviation < epsilon;
  for (auto* w : {&product, &tr, &dist}) {
    if (w->witness) rep.witnesses.push_back(*w->witness);
  }
  return rep;
}

}  // namespace

AlmostMorphismReport check_almost_morphism(const SemigroupMap& pi, std::span<const Bisection> k,
                                           const Rational& epsilon) {
  return almost_morphism([&](const Bisection& a) { return pi(a); }, k, epsilon);
}

AlmostMorphismReport check_almost_morphism(const FiniteMap& pi, std::span<const Bisection> k,
                                           const Rational& epsilon) {
  std::map<Bisection, const Bisection*> table;
  for (auto const& [arg, img] : pi) {
    if (!k.empty() && !same_groupoid(arg.groupoid(), k[0].groupoid())) {
      throw InputError("map arguments and K come from different groupoids");
    }
    auto [it, fresh] = table.emplace(arg, &img);
    if (!fresh && !(*it->second == img)) throw InputError("map lists two images for the same bisection");
  }
  return almost_morphism(
      [&](const Bisection& a) {
        auto it = table.find(a);
        if (it == table.end()) {
          throw InputError("incomplete pair list: no image for a bisection with " + std::to_string(a.size()) +
                           " arrows (K or a product of two elements of K)");
        }
        return *it->second;
      },
      k, epsilon);
}

EmbeddingReport check_embedding(const SemigroupMap& pi, const SuiteBudget& budget) {
  EmbeddingReport rep;
  rep.label = pi.label;
  rep.seed = budget.seed;
  std::mt19937_64 rng(budget.seed);
  auto const pool = make_pool(pi.domain, EnumerationKind::semigroup, budget, rng);
  auto const& el = pool.elements;
  std::vector<Bisection> images;
  images.reserve(el.size());
  for (auto const& a : el) images.push_back(pi(a));
  rep.elements_tested = el.size();

  Worst tr;
  std::map<Bisection, std::size_t> seen;
  std::optional<Witness> collision;
  for (std::size_t i = 0; i < el.size(); ++i) {
    auto const dev = abs_diff(trace(el[i]), trace(images[i]));
    tr.offer(dev, [&] { return witness("trace", {{"a", el[i]}, {"pi(a)", images[i]}}, dev); });
    auto [it, fresh] = seen.emplace(images[i], i);
    if (!fresh && !(el[it->second] == el[i]) && !collision) {
      rep.injective = false;
      collision = witness("injectivity", {{"a", el[it->second]}, {"b", el[i]}, {"pi(a) = pi(b)", images[i]}});
    }
  }

  Worst product, dist;
  rep.exhaustive = for_tuples(el.size(), pool.exhaustive, 2, budget, rng, [&](std::span<const std::size_t> t) {
    auto const& a = el[t[0]];
    auto const& b = el[t[1]];
    auto const lhs = pi(a * b);
    auto const rhs = images[t[0]] * images[t[1]];
    auto const pdev = distance(lhs, rhs);
    product.offer(pdev, [&] { return witness("product", {{"a", a}, {"b", b}, {"pi(ab)", lhs}, {"pi(a)pi(b)", rhs}}, pdev); });
    auto const ddev = abs_diff(distance(a, b), distance(images[t[0]], images[t[1]]));
    dist.offer(ddev, [&] {
      return witness("distance", {{"a", a}, {"b", b}, {"pi(a)", images[t[0]]}, {"pi(b)", images[t[1]]}}, ddev);
    });
    ++rep.pairs_tested;
  });

  rep.max_product_deviation = product.value;
  rep.max_trace_deviation = tr.value;
  rep.max_distance_deviation = dist.value;
  rep.multiplicative = product.value == 0;
  rep.trace_preserving = tr.value == 0;
  rep.isometric = dist.value == 0;
  rep.consistent = rep.trace_preserving == rep.isometric;
  for (auto* w : {&product, &tr, &dist}) {
    if (w->witness) rep.witnesses.push_back(*w->witness);
  }
  if (collision) rep.witnesses.push_back(*collision);
  return rep;
}

bool SuiteReport::pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.pass; });
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (auto const& [name, fn] : suites()) out.push_back(name);
  return out;
}

SuiteReport run_suite(const std::string& name, const std::optional<GroupoidPtr>& groupoid, const SuiteBudget& budget) {
  auto it = suites().find(name);
  if (it == suites().end()) {
    throw InputError("unknown suite '" + name + "' (known: " + join(suite_names(), ", ") + ")");
  }
  if (budget.exhaustive_cap == 0 || budget.sample_count == 0) throw InputError("suite budget must be positive");
  SuiteReport rep;
  rep.suite = name;
  rep.budget = budget;
  std::mt19937_64 rng(budget.seed);
  it->second(rep, groupoid, budget, rng);
  return rep;
}

}  // namespace soficlab
