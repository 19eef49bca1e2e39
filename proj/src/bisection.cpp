#include "soficlab/bisection.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace soficlab {

namespace {

bool shares_endpoint(const FiniteGroupoid& g, std::span<const Arrow> sorted, Arrow* first, Arrow* second,
                     bool* shared_source) {
  std::vector<std::optional<Arrow>> by_source(g.unit_count()), by_range(g.unit_count());
  for (auto const& a : sorted) {
    auto& s = by_source[g.source(a)];
    if (s) {
      *first = *s, *second = a, *shared_source = true;
      return true;
    }
    s = a;
    auto& r = by_range[g.range(a)];
    if (r) {
      *first = *r, *second = a, *shared_source = false;
      return true;
    }
    r = a;
  }
  return false;
}

std::string arrow_str(const Arrow& a) {
  return "[" + std::to_string(a.component) + "," + std::to_string(a.g) + "," + std::to_string(a.y_to) + "," +
         std::to_string(a.y_from) + "]";
}

}  // namespace

Bisection::Bisection(GroupoidPtr groupoid, std::vector<Arrow> arrows)
    : groupoid_(std::move(groupoid)), arrows_(std::move(arrows)) {
  if (!groupoid_) throw InputError("bisection without a groupoid");
  std::sort(arrows_.begin(), arrows_.end());
  arrows_.erase(std::unique(arrows_.begin(), arrows_.end()), arrows_.end());
  for (auto const& a : arrows_) {
    if (!groupoid_->contains(a)) throw InputError("arrow " + arrow_str(a) + " is not in the groupoid");
  }
  Arrow first, second;
  bool shared_source = false;
  if (shares_endpoint(*groupoid_, arrows_, &first, &second, &shared_source)) {
    throw InputError("not a bisection: arrows " + arrow_str(first) + " and " + arrow_str(second) + " share a " +
                     (shared_source ? "source" : "range"));
  }
}

Bisection::Bisection(GroupoidPtr groupoid, std::vector<Arrow> sorted_arrows, Trusted)
    : groupoid_(std::move(groupoid)), arrows_(std::move(sorted_arrows)) {}

Bisection Bisection::identity(GroupoidPtr groupoid) {
  auto units = groupoid->all_units();
  return idempotent(std::move(groupoid), units);
}

Bisection Bisection::empty(GroupoidPtr groupoid) { return Bisection(std::move(groupoid), {}); }

Bisection Bisection::idempotent(GroupoidPtr groupoid, const MAlgElement& units) {
  std::vector<Arrow> arrows;
  for (auto u : units.units()) {
    if (u >= groupoid->unit_count()) throw InputError("unit " + std::to_string(u) + " out of range");
    arrows.push_back(groupoid->unit_arrow(u));
  }
  return Bisection(std::move(groupoid), std::move(arrows));
}

bool Bisection::contains(const Arrow& a) const { return std::binary_search(arrows_.begin(), arrows_.end(), a); }

bool same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) { return &a == &b || a == b; }

bool operator==(const Bisection& a, const Bisection& b) {
  return a.arrows_ == b.arrows_ && same_groupoid(*a.groupoid_, *b.groupoid_);
}

void require_same_groupoid(const Bisection& a, const Bisection& b) {
  if (!same_groupoid(a.groupoid(), b.groupoid())) throw InputError("bisections live in different groupoids");
}

Bisection compose(const Bisection& alpha, const Bisection& beta) {
  require_same_groupoid(alpha, beta);
  auto const& g = alpha.groupoid();
  std::vector<const Arrow*> by_source(g.unit_count(), nullptr);
  for (auto const& a : alpha.arrows_) by_source[g.source(a)] = &a;
  std::vector<Arrow> out;
  out.reserve(std::min(alpha.size(), beta.size()));
  for (auto const& b : beta.arrows_) {
    if (auto const* a = by_source[g.range(b)]) out.push_back(*g.multiply(*a, b));
  }
  std::sort(out.begin(), out.end());
  return Bisection(alpha.groupoid_, std::move(out), Bisection::Trusted{});
}

Bisection invert(const Bisection& alpha) {
  auto const& g = alpha.groupoid();
  std::vector<Arrow> out;
  out.reserve(alpha.size());
  for (auto const& a : alpha.arrows_) out.push_back(g.inverse(a));
  std::sort(out.begin(), out.end());
  return Bisection(alpha.groupoid_, std::move(out), Bisection::Trusted{});
}

Rational trace(const Bisection& alpha) {
  Rational total{0};
  for (auto const& a : alpha.arrows()) {
    if (FiniteGroupoid::is_unit(a)) total += alpha.groupoid().unit_mass(alpha.groupoid().source(a));
  }
  return total;
}

namespace {

std::vector<Arrow> symmetric_difference(const Bisection& alpha, const Bisection& beta) {
  std::vector<Arrow> out;
  std::set_symmetric_difference(alpha.arrows().begin(), alpha.arrows().end(), beta.arrows().begin(),
                                beta.arrows().end(), std::back_inserter(out));
  return out;
}

Rational endpoint_mass(const FiniteGroupoid& g, std::span<const Arrow> arrows, bool use_source) {
  std::vector<std::size_t> units;
  units.reserve(arrows.size());
  for (auto const& a : arrows) units.push_back(use_source ? g.source(a) : g.range(a));
  return g.measure(MAlgElement(std::move(units)));
}

}  // namespace

Rational distance(const Bisection& alpha, const Bisection& beta) {
  require_same_groupoid(alpha, beta);
  return endpoint_mass(alpha.groupoid(), symmetric_difference(alpha, beta), true);
}

Rational range_distance(const Bisection& alpha, const Bisection& beta) {
  require_same_groupoid(alpha, beta);
  return endpoint_mass(alpha.groupoid(), symmetric_difference(alpha, beta), false);
}

MAlgElement source_set(const Bisection& alpha) {
  std::vector<std::size_t> units;
  for (auto const& a : alpha.arrows()) units.push_back(alpha.groupoid().source(a));
  return MAlgElement(std::move(units));
}

MAlgElement range_set(const Bisection& alpha) {
  std::vector<std::size_t> units;
  for (auto const& a : alpha.arrows()) units.push_back(alpha.groupoid().range(a));
  return MAlgElement(std::move(units));
}

MAlgElement fix(const Bisection& alpha) {
  std::vector<std::size_t> units;
  for (auto const& a : alpha.arrows()) {
    if (FiniteGroupoid::is_unit(a)) units.push_back(alpha.groupoid().source(a));
  }
  return MAlgElement(std::move(units));
}

MAlgElement supp(const Bisection& alpha) { return set_difference(source_set(alpha), fix(alpha)); }

Projections projections(const Bisection& alpha) {
  return Projections{source_set(alpha), range_set(alpha), fix(alpha), supp(alpha)};
}

bool is_idempotent(const Bisection& alpha) {
  return std::all_of(alpha.arrows().begin(), alpha.arrows().end(), [](auto const& a) { return FiniteGroupoid::is_unit(a); });
}

bool is_full(const Bisection& alpha) { return alpha.size() == alpha.groupoid().unit_count(); }

Bisection restrict_source(const Bisection& alpha, const MAlgElement& units) {
  std::vector<Arrow> out;
  for (auto const& a : alpha.arrows()) {
    if (units.contains(alpha.groupoid().source(a))) out.push_back(a);
  }
  return Bisection(alpha.groupoid_ptr(), std::move(out));
}

Bisection intersect(const Bisection& alpha, const Bisection& beta) {
  require_same_groupoid(alpha, beta);
  return intersect(alpha, beta.arrows());
}

Bisection intersect(const Bisection& alpha, std::span<const Arrow> arrows) {
  std::vector<Arrow> sorted(arrows.begin(), arrows.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Arrow> out;
  std::set_intersection(alpha.arrows().begin(), alpha.arrows().end(), sorted.begin(), sorted.end(),
                        std::back_inserter(out));
  return Bisection(alpha.groupoid_ptr(), std::move(out));
}

FullGroupElement::FullGroupElement(Bisection alpha) : alpha_(std::move(alpha)) {
  if (!is_full(alpha_)) throw InputError("not a full-group element: s(alpha) or r(alpha) misses units");
}

MAlgElement act(const FullGroupElement& alpha, const MAlgElement& units) {
  auto const& g = alpha.bisection().groupoid();
  std::vector<std::size_t> out;
  for (auto const& a : alpha.bisection().arrows()) {
    if (units.contains(g.source(a))) out.push_back(g.range(a));
  }
  return MAlgElement(std::move(out));
}

IncompatibleUnion::IncompatibleUnion(Arrow first_, Arrow second_, bool shared_source_)
    : InputError("incompatible union: arrows " + arrow_str(first_) + " and " + arrow_str(second_) + " share a " +
                 (shared_source_ ? "source" : "range")),
      first(first_),
      second(second_),
      shared_source(shared_source_) {}

Bisection union_compatible(const Bisection& alpha, const Bisection& beta) {
  require_same_groupoid(alpha, beta);
  std::vector<Arrow> merged;
  std::set_union(alpha.arrows().begin(), alpha.arrows().end(), beta.arrows().begin(), beta.arrows().end(),
                 std::back_inserter(merged));
  bool const compatible = is_idempotent(invert(beta) * alpha) && is_idempotent(beta * invert(alpha));
  Arrow first, second;
  bool shared_source = false;
  if (shares_endpoint(alpha.groupoid(), merged, &first, &second, &shared_source)) {
    throw IncompatibleUnion(first, second, shared_source);
  }
  check_invariant(compatible, "union of idempotent-compatible bisections must be compatible");
  return Bisection(alpha.groupoid_ptr(), std::move(merged));
}

FullGroupElement extend_to_full_group(const Bisection& gamma) {
  auto const& g = gamma.groupoid();
  auto const s = source_set(gamma);
  auto const r = range_set(gamma);

  std::vector<Arrow> pieces(gamma.arrows().begin(), gamma.arrows().end());
  MAlgElement used_sources = s;
  MAlgElement used_ranges = r;

  auto const inverse = invert(gamma);
  auto power = inverse;
  for (std::size_t n = 1; n <= g.arrow_count() && !power.empty(); ++n) {
    for (auto const& a : power.arrows()) {
      auto const src = g.source(a);
      auto const rng = g.range(a);
      if (s.contains(src) || r.contains(rng)) continue;
      check_invariant(!used_sources.contains(src) && !used_ranges.contains(rng),
                      "extension pieces gamma_n overlap at n=" + std::to_string(n));
      used_sources = set_union(used_sources, MAlgElement({src}));
      used_ranges = set_union(used_ranges, MAlgElement({rng}));
      pieces.push_back(a);
    }
    power = power * inverse;
  }
  auto const outside = set_difference(g.all_units(), set_union(s, r));
  for (auto u : outside.units()) pieces.push_back(g.unit_arrow(u));

  std::optional<Bisection> result;
  try {
    result.emplace(gamma.groupoid_ptr(), std::move(pieces));
  } catch (const InputError& e) {
    throw AssertionFailure(std::string("extension is not a bisection: ") + e.what());
  }
  check_invariant(is_full(*result), "extension does not cover every unit");
  return FullGroupElement(std::move(*result));
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = sat_mul(out, n - k + i) / i;
  return out;
}

// All partial injections of component c, each as a list of arrows.
std::vector<std::vector<Arrow>> component_elements(const FiniteGroupoid& g, std::size_t c, bool full) {
  auto const& comp = g.component(c);
  auto const m = comp.base_size;
  auto const k = comp.group.order();
  std::vector<std::vector<Arrow>> out;
  std::vector<Arrow> current;
  std::vector<bool> used(m, false);
  std::function<void(std::size_t)> rec = [&](std::size_t x) {
    if (x == m) {
      out.push_back(current);
      return;
    }
    if (!full) rec(x + 1);
    for (std::size_t y = 0; y < m; ++y) {
      if (used[y]) continue;
      used[y] = true;
      for (std::size_t el = 0; el < k; ++el) {
        current.push_back(Arrow{c, el, y, x});
        rec(x + 1);
        current.pop_back();
      }
      used[y] = false;
    }
  };
  rec(0);
  return out;
}

}  // namespace

std::uint64_t predicted_count(const FiniteGroupoid& g, EnumerationKind kind) {
  if (kind == EnumerationKind::malg) {
    if (g.unit_count() >= 64) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << g.unit_count();
  }
  std::uint64_t total = 1;
  for (auto const& comp : g.components()) {
    std::uint64_t const m = comp.base_size;
    std::uint64_t const order = comp.group.order();
    std::uint64_t per = 0;
    for (std::uint64_t size = (kind == EnumerationKind::group ? m : 0); size <= m; ++size) {
      std::uint64_t term = sat_mul(binomial(m, size), binomial(m, size));
      for (std::uint64_t i = 2; i <= size; ++i) term = sat_mul(term, i);
      for (std::uint64_t i = 0; i < size; ++i) term = sat_mul(term, order);
      per = sat_add(per, term);
    }
    total = sat_mul(total, per);
  }
  return total;
}

CapExceeded::CapExceeded(std::uint64_t predicted_, std::uint64_t cap_)
    : InputError("enumeration would produce " + std::to_string(predicted_) + " elements, above the cap of " +
                 std::to_string(cap_)),
      predicted(predicted_),
      cap(cap_) {}

void for_each_bisection(const GroupoidPtr& g, EnumerationKind kind,
                        const std::function<void(const Bisection&)>& visit) {
  if (kind == EnumerationKind::malg) throw InputError("for_each_bisection needs kind semigroup or group");
  std::vector<std::vector<std::vector<Arrow>>> parts;
  for (std::size_t c = 0; c < g->component_count(); ++c) {
    parts.push_back(component_elements(*g, c, kind == EnumerationKind::group));
  }
  std::vector<std::size_t> odometer(parts.size(), 0);
  while (true) {
    std::vector<Arrow> arrows;
    for (std::size_t c = 0; c < parts.size(); ++c) {
      auto const& chosen = parts[c][odometer[c]];
      arrows.insert(arrows.end(), chosen.begin(), chosen.end());
    }
    visit(Bisection(g, std::move(arrows)));
    std::size_t c = parts.size();
    while (c > 0) {
      --c;
      if (++odometer[c] < parts[c].size()) break;
      odometer[c] = 0;
      if (c == 0) return;
    }
    if (parts.empty()) return;
  }
}

std::vector<Bisection> enumerate_bisections(const GroupoidPtr& g, EnumerationKind kind, std::uint64_t cap) {
  auto const predicted = predicted_count(*g, kind);
  if (predicted > cap) throw CapExceeded(predicted, cap);
  std::vector<Bisection> out;
  out.reserve(predicted);
  for_each_bisection(g, kind, [&](const Bisection& b) { out.push_back(b); });
  check_invariant(out.size() == predicted, "enumeration count differs from the closed form");
  return out;
}

std::vector<MAlgElement> enumerate_malg(const FiniteGroupoid& g, std::uint64_t cap) {
  auto const predicted = predicted_count(g, EnumerationKind::malg);
  if (predicted > cap) throw CapExceeded(predicted, cap);
  std::vector<MAlgElement> out;
  out.reserve(predicted);
  auto const n = g.unit_count();
  for (std::uint64_t mask = 0; mask < predicted; ++mask) {
    std::vector<std::size_t> units;
    for (std::size_t u = 0; u < n; ++u) {
      if (mask >> u & 1U) units.push_back(u);
    }
    out.emplace_back(std::move(units));
  }
  return out;
}

Bisection random_bisection(const GroupoidPtr& g, std::mt19937_64& rng, bool full) {
  std::vector<Arrow> arrows;
  for (std::size_t c = 0; c < g->component_count(); ++c) {
    auto const& comp = g->component(c);
    std::vector<std::size_t> image(comp.base_size);
    std::iota(image.begin(), image.end(), 0);
    // Fisher-Yates with plain modular draws so sequences do not depend on the
    // standard library's distribution implementation.
    for (std::size_t i = image.size(); i > 1; --i) std::swap(image[i - 1], image[rng() % i]);
    for (std::size_t x = 0; x < comp.base_size; ++x) {
      if (!full && rng() % 2 == 0) continue;
      arrows.push_back(Arrow{c, rng() % comp.group.order(), image[x], x});
    }
  }
  return Bisection(g, std::move(arrows));
}

MAlgElement random_malg(const FiniteGroupoid& g, std::mt19937_64& rng) {
  std::vector<std::size_t> units;
  for (std::size_t u = 0; u < g.unit_count(); ++u) {
    if (rng() % 2 == 1) units.push_back(u);
  }
  return MAlgElement(std::move(units));
}

}  // namespace soficlab
