#include "soficlab/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "soficlab/errors.hpp"

namespace soficlab {

// ---------------------------------------------------------------------------
// FiniteGroupoid

FiniteGroupoid::FiniteGroupoid(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InputError("a groupoid needs at least one component");
  Rational total{0};
  unit_offsets_.push_back(0);
  arrow_offsets_.push_back(0);
  for (auto const& c : components_) {
    if (c.base_size == 0) throw InputError("component with empty base");
    if (c.weight <= 0) throw InputError("component weight must be positive, got " + to_string(c.weight));
    total += c.weight;
    unit_offsets_.push_back(unit_offsets_.back() + c.base_size);
    arrow_offsets_.push_back(arrow_offsets_.back() + c.group.order() * c.base_size * c.base_size);
    for (std::size_t y = 0; y < c.base_size; ++y) {
      unit_masses_.push_back(c.weight / static_cast<std::int64_t>(c.base_size));
    }
  }
  if (total != 1) throw InputError("component weights sum to " + to_string(total) + ", not 1");
}

FiniteGroupoid FiniteGroupoid::point() { return full_relation(1); }

FiniteGroupoid FiniteGroupoid::group(const CayleyTable& table) { return connected(table, 1); }

FiniteGroupoid FiniteGroupoid::full_relation(std::size_t n) { return connected(CayleyTable(), n); }

FiniteGroupoid FiniteGroupoid::connected(const CayleyTable& table, std::size_t base_size) {
  return FiniteGroupoid({Component{table, base_size, Rational(1)}});
}

std::pair<std::size_t, std::size_t> FiniteGroupoid::unit_at(std::size_t unit) const {
  auto it = std::upper_bound(unit_offsets_.begin(), unit_offsets_.end(), unit);
  auto c = static_cast<std::size_t>(it - unit_offsets_.begin()) - 1;
  return {c, unit - unit_offsets_[c]};
}

Rational FiniteGroupoid::measure(const MAlgElement& units) const {
  Rational total{0};
  for (auto u : units.units()) total += unit_masses_.at(u);
  return total;
}

MAlgElement FiniteGroupoid::all_units() const {
  std::vector<std::size_t> all(unit_count());
  std::iota(all.begin(), all.end(), 0);
  return MAlgElement(std::move(all));
}

MAlgElement FiniteGroupoid::component_units(std::size_t component) const {
  std::vector<std::size_t> out;
  for (auto u = unit_offsets_.at(component); u < unit_offsets_.at(component + 1); ++u) out.push_back(u);
  return MAlgElement(std::move(out));
}

bool FiniteGroupoid::contains(const Arrow& a) const noexcept {
  if (a.component >= components_.size()) return false;
  auto const& c = components_[a.component];
  return a.g < c.group.order() && a.y_to < c.base_size && a.y_from < c.base_size;
}

Arrow FiniteGroupoid::unit_arrow(std::size_t unit) const {
  auto [c, y] = unit_at(unit);
  return Arrow{c, 0, y, y};
}

std::optional<Arrow> FiniteGroupoid::multiply(const Arrow& a, const Arrow& b) const {
  if (a.component != b.component || a.y_from != b.y_to) return std::nullopt;
  return Arrow{a.component, components_[a.component].group.multiply(a.g, b.g), a.y_to, b.y_from};
}

Arrow FiniteGroupoid::inverse(const Arrow& a) const {
  return Arrow{a.component, components_[a.component].group.inverse(a.g), a.y_from, a.y_to};
}

std::size_t FiniteGroupoid::arrow_index(const Arrow& a) const {
  auto const m = components_[a.component].base_size;
  return arrow_offsets_[a.component] + (a.g * m + a.y_to) * m + a.y_from;
}

Arrow FiniteGroupoid::arrow_at(std::size_t index) const {
  auto it = std::upper_bound(arrow_offsets_.begin(), arrow_offsets_.end(), index);
  auto c = static_cast<std::size_t>(it - arrow_offsets_.begin()) - 1;
  auto const m = components_[c].base_size;
  auto local = index - arrow_offsets_[c];
  return Arrow{c, local / (m * m), (local / m) % m, local % m};
}

std::vector<Arrow> FiniteGroupoid::arrows() const {
  std::vector<Arrow> out;
  out.reserve(arrow_count());
  for (std::size_t i = 0; i < arrow_count(); ++i) out.push_back(arrow_at(i));
  return out;
}

FiniteGroupoid FiniteGroupoid::component_groupoid(std::size_t i) const {
  auto c = components_.at(i);
  c.weight = 1;
  return FiniteGroupoid({std::move(c)});
}

bool FiniteGroupoid::same_structure(const FiniteGroupoid& other) const {
  if (components_.size() != other.components_.size()) return false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].group != other.components_[i].group ||
        components_[i].base_size != other.components_[i].base_size) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Raw tables

namespace {

std::string tuple_str(std::initializer_list<RawId> ids) {
  std::string out = "(";
  bool first = true;
  for (auto id : ids) {
    if (!first) out += ",";
    out += std::to_string(id);
    first = false;
  }
  return out + ")";
}

// Dense, index-based view of a raw table after structural checks.
struct IndexedTable {
  std::vector<RawId> ids;                       // arrow index -> id
  std::unordered_map<RawId, std::size_t> index; // id -> arrow index
  std::vector<std::size_t> source, range;       // arrow index -> arrow index of unit
  std::vector<bool> is_unit;
  std::vector<std::size_t> units;               // arrow indices of units, ascending id
  std::vector<std::optional<std::size_t>> product;  // a * n + b

  [[nodiscard]] std::size_t size() const { return ids.size(); }
  [[nodiscard]] std::optional<std::size_t> mul(std::size_t a, std::size_t b) const {
    return product[a * size() + b];
  }
};

IndexedTable index_table(const RawGroupoid& raw) {
  IndexedTable t;
  for (auto const& a : raw.arrows) {
    if (!t.index.emplace(a.id, t.ids.size()).second) {
      throw InputError("malformed: duplicate arrow id " + std::to_string(a.id));
    }
    t.ids.push_back(a.id);
  }
  auto const n = t.size();
  t.is_unit.assign(n, false);
  std::set<RawId> unit_ids;
  for (auto u : raw.units) {
    if (!unit_ids.insert(u).second) throw InputError("malformed: duplicate unit id " + std::to_string(u));
    auto it = t.index.find(u);
    if (it == t.index.end()) {
      throw InputError("malformed: unit " + std::to_string(u) + " is not listed as an arrow");
    }
    auto const& arrow = raw.arrows[it->second];
    if (arrow.source != u || arrow.range != u) {
      throw InputError("malformed: unit arrow " + std::to_string(u) + " must have source = range = itself");
    }
    t.is_unit[it->second] = true;
  }
  for (auto u : unit_ids) t.units.push_back(t.index.at(u));

  for (auto const& a : raw.arrows) {
    for (auto end : {a.source, a.range}) {
      if (!unit_ids.contains(end)) {
        throw InputError("malformed: arrow " + std::to_string(a.id) + " refers to undeclared unit " +
                         std::to_string(end));
      }
    }
    t.source.push_back(t.index.at(a.source));
    t.range.push_back(t.index.at(a.range));
  }

  t.product.assign(n * n, std::nullopt);
  for (auto const& [a, b, c] : raw.compositions) {
    for (auto id : {a, b, c}) {
      if (!t.index.contains(id)) {
        throw InputError("malformed: composition " + tuple_str({a, b, c}) + " uses unknown arrow id " +
                         std::to_string(id));
      }
    }
    auto ia = t.index.at(a), ib = t.index.at(b), ic = t.index.at(c);
    if (t.source[ia] != t.range[ib]) {
      throw InputError("malformed: composition given for non-composable pair " + tuple_str({a, b}));
    }
    auto& slot = t.product[ia * n + ib];
    if (slot) throw InputError("malformed: duplicate composition for pair " + tuple_str({a, b}));
    slot = ic;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (t.source[a] == t.range[b] && !t.product[a * n + b]) {
        throw InputError("malformed: composition missing for composable pair " +
                         tuple_str({t.ids[a], t.ids[b]}));
      }
    }
  }
  return t;
}

std::vector<std::string> axiom_violations(const IndexedTable& t) {
  std::vector<std::string> out;
  auto const n = t.size();
  auto id = [&](std::size_t i) { return t.ids[i]; };

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto c = t.mul(a, b);
      if (!c) continue;
      if (t.source[*c] != t.source[b] || t.range[*c] != t.range[a]) {
        out.push_back("source/range law at " + tuple_str({id(a), id(b)}));
      }
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (t.mul(t.range[g], g) != g || t.mul(g, t.source[g]) != g) {
      out.push_back("unit law at " + std::to_string(id(g)));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto ab = t.mul(a, b);
      if (!ab) continue;
      for (std::size_t c = 0; c < n; ++c) {
        auto bc = t.mul(b, c);
        if (!bc) continue;
        auto left = t.mul(*ab, c);
        auto right = t.mul(a, *bc);
        if (!left || !right || *left != *right) {
          out.push_back("associativity at " + tuple_str({id(a), id(b), id(c)}));
        }
      }
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    std::size_t found = 0;
    for (std::size_t h = 0; h < n; ++h) {
      if (t.source[h] != t.range[g] || t.range[h] != t.source[g]) continue;
      if (t.mul(h, g) == t.source[g] && t.mul(g, h) == t.range[g]) ++found;
    }
    if (found == 0) out.push_back("inverse law at " + std::to_string(id(g)));
    if (found > 1) out.push_back("inverse not unique at " + std::to_string(id(g)));
  }
  return out;
}

}  // namespace

ValidationOutcome validate_raw(const RawGroupoid& raw) {
  return ValidationOutcome{axiom_violations(index_table(raw))};
}

Decomposition decompose(const RawGroupoid& raw) {
  if (!raw.masses.empty()) return decompose(raw, raw.masses);
  std::map<RawId, Rational> uniform;
  for (auto u : raw.units) uniform[u] = Rational(1, static_cast<std::int64_t>(raw.units.size()));
  return decompose(raw, uniform);
}

Decomposition decompose(const RawGroupoid& raw, const std::map<RawId, Rational>& masses) {
  auto const t = index_table(raw);
  auto violations = axiom_violations(t);
  if (!violations.empty()) throw InputError("not a groupoid: " + violations.front());
  if (t.units.empty()) throw InputError("groupoid has no units");

  Rational total{0};
  for (auto const& [u, m] : masses) {
    if (!t.index.contains(u) || !t.is_unit[t.index.at(u)]) {
      throw InputError("mass given for unknown unit " + std::to_string(u));
    }
    if (m <= 0) throw InputError("unit " + std::to_string(u) + " has non-positive mass");
    total += m;
  }
  for (auto u : t.units) {
    if (!masses.contains(t.ids[u])) throw InputError("no mass for unit " + std::to_string(t.ids[u]));
  }
  if (total != 1) throw InputError("unit masses sum to " + to_string(total) + ", not 1");

  auto const n = t.size();
  auto inverse_of = [&](std::size_t g) {
    for (std::size_t h = 0; h < n; ++h) {
      if (t.mul(h, g) == t.source[g] && t.mul(g, h) == t.range[g]) return h;
    }
    throw AssertionFailure("validated groupoid lost an inverse");
  };

  // Union-find over units (by arrow index).
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t g = 0; g < n; ++g) {
    auto a = find(t.source[g]), b = find(t.range[g]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  // Components in discovery order; t.units is ascending by id so the first
  // unit seen in each class is its base point.
  std::vector<std::vector<std::size_t>> members;
  std::map<std::size_t, std::size_t> class_of_root;
  for (auto u : t.units) {
    auto [it, fresh] = class_of_root.emplace(find(u), members.size());
    if (fresh) members.emplace_back();
    members[it->second].push_back(u);
  }

  struct Built {
    Component component;
    std::vector<std::pair<RawId, Arrow>> arrows;  // component index filled in later
  };
  std::vector<Built> built;

  for (auto const& units : members) {
    auto const base = units.front();
    Rational const mass = masses.at(t.ids[base]);
    for (auto u : units) {
      if (masses.at(t.ids[u]) != mass) {
        throw InputError("pmp violation: units " + std::to_string(t.ids[base]) + " and " +
                         std::to_string(t.ids[u]) + " are connected but carry masses " + to_string(mass) +
                         " and " + to_string(masses.at(t.ids[u])));
      }
    }
    std::map<std::size_t, std::size_t> point_of;  // unit arrow index -> y
    for (std::size_t y = 0; y < units.size(); ++y) point_of[units[y]] = y;

    // Isotropy at the base point: the unit first, then ascending id.
    std::vector<std::size_t> isotropy{base};
    std::vector<std::size_t> loops;
    for (std::size_t g = 0; g < n; ++g) {
      if (g != base && t.source[g] == base && t.range[g] == base) loops.push_back(g);
    }
    std::sort(loops.begin(), loops.end(), [&](auto a, auto b) { return t.ids[a] < t.ids[b]; });
    isotropy.insert(isotropy.end(), loops.begin(), loops.end());
    std::map<std::size_t, std::size_t> element_of;
    for (std::size_t i = 0; i < isotropy.size(); ++i) element_of[isotropy[i]] = i;

    CayleyTable::Rows rows(isotropy.size(), std::vector<std::size_t>(isotropy.size()));
    for (std::size_t i = 0; i < isotropy.size(); ++i) {
      for (std::size_t j = 0; j < isotropy.size(); ++j) {
        rows[i][j] = element_of.at(*t.mul(isotropy[i], isotropy[j]));
      }
    }

    // Transversal tau_y : base -> y with the lowest id.
    std::vector<std::optional<std::size_t>> tau(units.size());
    for (std::size_t g = 0; g < n; ++g) {
      if (t.source[g] != base || !point_of.contains(t.range[g])) continue;
      auto& slot = tau[point_of.at(t.range[g])];
      if (!slot || t.ids[g] < t.ids[*slot]) slot = g;
    }

    Built b{Component{CayleyTable(std::move(rows)), units.size(), mass * static_cast<std::int64_t>(units.size())},
            {}};
    for (std::size_t g = 0; g < n; ++g) {
      if (!point_of.contains(t.source[g])) continue;
      auto const y_from = point_of.at(t.source[g]);
      auto const y_to = point_of.at(t.range[g]);
      // tau_{y'}^{-1} g tau_y
      auto const inner = *t.mul(g, *tau[y_from]);
      auto const loop = *t.mul(inverse_of(*tau[y_to]), inner);
      b.arrows.emplace_back(t.ids[g], Arrow{0, element_of.at(loop), y_to, y_from});
    }
    built.push_back(std::move(b));
  }

  std::stable_sort(built.begin(), built.end(), [](const Built& a, const Built& b) {
    auto key = [](const Component& c) { return std::make_tuple(c.group.order(), c.base_size, c.weight); };
    return key(a.component) < key(b.component);
  });

  Decomposition out{FiniteGroupoid([&] {
                      std::vector<Component> comps;
                      for (auto const& b : built) comps.push_back(b.component);
                      return comps;
                    }()),
                    {}};
  for (std::size_t c = 0; c < built.size(); ++c) {
    for (auto [id, arrow] : built[c].arrows) {
      arrow.component = c;
      out.isomorphism.emplace(id, arrow);
    }
  }
  return out;
}

RawGroupoid to_raw(const FiniteGroupoid& g) {
  RawGroupoid raw;
  auto const units = static_cast<RawId>(g.unit_count());
  std::vector<RawId> id_of(g.arrow_count());
  RawId next = units;
  for (std::size_t i = 0; i < g.arrow_count(); ++i) {
    auto a = g.arrow_at(i);
    id_of[i] = FiniteGroupoid::is_unit(a) ? static_cast<RawId>(g.source(a)) : next++;
  }
  for (RawId u = 0; u < units; ++u) {
    raw.units.push_back(u);
    raw.masses[u] = g.unit_mass(static_cast<std::size_t>(u));
  }
  for (std::size_t i = 0; i < g.arrow_count(); ++i) {
    auto a = g.arrow_at(i);
    raw.arrows.push_back({id_of[i], static_cast<RawId>(g.source(a)), static_cast<RawId>(g.range(a))});
  }
  std::sort(raw.arrows.begin(), raw.arrows.end(), [](auto const& a, auto const& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < g.arrow_count(); ++i) {
    auto a = g.arrow_at(i);
    for (std::size_t j = 0; j < g.arrow_count(); ++j) {
      if (auto c = g.multiply(a, g.arrow_at(j))) {
        raw.compositions.push_back({id_of[i], id_of[j], id_of[g.arrow_index(*c)]});
      }
    }
  }
  return raw;
}

RawGroupoid from_group_action(const CayleyTable& group,
                              const std::vector<std::vector<std::size_t>>& action,
                              const std::vector<Rational>& point_masses) {
  auto const m = group.order();
  auto const points = point_masses.size();
  if (points == 0) throw InputError("action on an empty set");
  if (action.size() != m) throw InputError("action table needs one row per group element");
  for (auto const& row : action) {
    if (row.size() != points) throw InputError("action row length differs from the number of points");
    for (auto y : row) {
      if (y >= points) throw InputError("action sends a point out of range");
    }
  }
  for (std::size_t x = 0; x < points; ++x) {
    if (action[0][x] != x) throw InputError("not an action: identity moves point " + std::to_string(x));
  }
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = 0; h < m; ++h) {
      for (std::size_t x = 0; x < points; ++x) {
        if (action[group.multiply(g, h)][x] != action[g][action[h][x]]) {
          throw InputError("not an action: (gh).x != g.(h.x) at g=" + std::to_string(g) +
                           ", h=" + std::to_string(h) + ", x=" + std::to_string(x));
        }
      }
    }
  }
  Rational total{0};
  for (std::size_t x = 0; x < points; ++x) {
    if (point_masses[x] <= 0) throw InputError("point masses must be positive");
    total += point_masses[x];
    for (std::size_t g = 0; g < m; ++g) {
      if (point_masses[action[g][x]] != point_masses[x]) {
        throw InputError("masses are not invariant: point " + std::to_string(x) + " is moved to " +
                         std::to_string(action[g][x]) + " with a different mass");
      }
    }
  }
  if (total != 1) throw InputError("point masses sum to " + to_string(total) + ", not 1");

  RawGroupoid raw;
  auto id = [&](std::size_t g, std::size_t x) { return static_cast<RawId>(g * points + x); };
  for (std::size_t x = 0; x < points; ++x) {
    raw.units.push_back(id(0, x));
    raw.masses[id(0, x)] = point_masses[x];
  }
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t x = 0; x < points; ++x) {
      raw.arrows.push_back({id(g, x), static_cast<RawId>(x), static_cast<RawId>(action[g][x])});
    }
  }
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t x = 0; x < points; ++x) {
      for (std::size_t h = 0; h < m; ++h) {
        raw.compositions.push_back({id(h, action[g][x]), id(g, x), id(group.multiply(h, g), x)});
      }
    }
  }
  return raw;
}

FiniteGroupoid convex_combination(const std::vector<std::pair<Rational, FiniteGroupoid>>& parts) {
  if (parts.empty()) throw InputError("empty convex combination");
  Rational total{0};
  std::vector<Component> comps;
  for (auto const& [t, g] : parts) {
    if (t <= 0) throw InputError("convex coefficient must be positive, got " + to_string(t));
    total += t;
    for (auto c : g.components()) {
      c.weight *= t;
      comps.push_back(std::move(c));
    }
  }
  if (total != 1) throw InputError("convex coefficients sum to " + to_string(total) + ", not 1");
  return FiniteGroupoid(std::move(comps));
}

// ---------------------------------------------------------------------------
// Products

Arrow ProductGroupoid::pair(const Arrow& a, const Arrow& b) const {
  auto const& cb = right.component(b.component);
  auto const mb = cb.base_size;
  return Arrow{a.component * right.component_count() + b.component, a.g * cb.group.order() + b.g,
               a.y_to * mb + b.y_to, a.y_from * mb + b.y_from};
}

std::pair<Arrow, Arrow> ProductGroupoid::split(const Arrow& p) const {
  auto const ci = p.component / right.component_count();
  auto const cj = p.component % right.component_count();
  auto const& cb = right.component(cj);
  auto const k = cb.group.order();
  auto const mb = cb.base_size;
  return {Arrow{ci, p.g / k, p.y_to / mb, p.y_from / mb}, Arrow{cj, p.g % k, p.y_to % mb, p.y_from % mb}};
}

std::size_t ProductGroupoid::pair_unit(std::size_t u, std::size_t v) const {
  auto [ci, y] = left.unit_at(u);
  auto [cj, z] = right.unit_at(v);
  return groupoid.unit_index(ci * right.component_count() + cj, y * right.component(cj).base_size + z);
}

ProductGroupoid product_groupoid(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  std::vector<Component> comps;
  for (auto const& a : g.components()) {
    for (auto const& b : h.components()) {
      comps.push_back(Component{CayleyTable::direct_product(a.group, b.group), a.base_size * b.base_size,
                                a.weight * b.weight});
    }
  }
  return ProductGroupoid{FiniteGroupoid(std::move(comps)), g, h};
}

// ---------------------------------------------------------------------------
// Subgroupoids

Subgroupoid corner_restriction(const FiniteGroupoid& g, const MAlgElement& units) {
  if (units.empty()) throw InputError("corner restriction to an empty unit set");
  for (auto u : units.units()) {
    if (u >= g.unit_count()) throw InputError("unit " + std::to_string(u) + " out of range");
  }
  auto const total = g.measure(units);

  // Per component: the chosen points, in order.
  std::vector<std::vector<std::size_t>> chosen(g.component_count());
  for (auto u : units.units()) {
    auto [c, y] = g.unit_at(u);
    chosen[c].push_back(y);
  }
  std::vector<Component> comps;
  std::vector<std::size_t> new_index(g.component_count(), 0);
  for (std::size_t c = 0; c < g.component_count(); ++c) {
    if (chosen[c].empty()) continue;
    new_index[c] = comps.size();
    auto const& src = g.component(c);
    auto const k = static_cast<std::int64_t>(chosen[c].size());
    comps.push_back(Component{src.group, chosen[c].size(),
                              src.weight * Rational(k, static_cast<std::int64_t>(src.base_size)) / total});
  }

  Subgroupoid out{FiniteGroupoid(std::move(comps)), {}, {}, {}};
  out.from_parent.assign(g.arrow_count(), std::nullopt);
  out.to_parent.resize(out.groupoid.arrow_count());
  for (std::size_t c = 0; c < g.component_count(); ++c) {
    auto const& pts = chosen[c];
    for (std::size_t el = 0; el < g.component(c).group.order(); ++el) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
          Arrow parent{c, el, pts[i], pts[j]};
          Arrow sub{new_index[c], el, i, j};
          out.from_parent[g.arrow_index(parent)] = sub;
          out.to_parent[out.groupoid.arrow_index(sub)] = parent;
        }
      }
    }
  }
  out.parent_units.resize(out.groupoid.unit_count());
  for (std::size_t u = 0; u < out.groupoid.unit_count(); ++u) {
    out.parent_units[u] = g.source(out.to_parent[out.groupoid.arrow_index(out.groupoid.unit_arrow(u))]);
  }
  return out;
}

Subgroupoid subgroupoid(const FiniteGroupoid& g, std::span<const Arrow> arrows) {
  std::vector<bool> member(g.arrow_count(), false);
  for (auto const& a : arrows) {
    if (!g.contains(a)) throw InputError("subgroupoid arrow not in the groupoid");
    member[g.arrow_index(a)] = true;
  }
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (member[i]) chosen.push_back(i);
  }
  if (chosen.empty()) throw InputError("empty subgroupoid");

  // Raw ids are parent arrow indices; a unit's id is the index of its unit arrow.
  RawGroupoid raw;
  std::vector<std::size_t> unit_list;
  auto unit_id = [&](std::size_t unit) { return static_cast<RawId>(g.arrow_index(g.unit_arrow(unit))); };
  for (auto i : chosen) {
    auto a = g.arrow_at(i);
    for (auto u : {g.source(a), g.range(a)}) {
      if (!member[g.arrow_index(g.unit_arrow(u))]) {
        throw InputError("not a subgroupoid: missing the unit at an arrow end");
      }
    }
    if (!member[g.arrow_index(g.inverse(a))]) throw InputError("not a subgroupoid: not closed under inverse");
    if (FiniteGroupoid::is_unit(a)) unit_list.push_back(g.source(a));
    raw.arrows.push_back({static_cast<RawId>(i), unit_id(g.source(a)), unit_id(g.range(a))});
  }
  MAlgElement unit_set(unit_list);
  auto const total = g.measure(unit_set);
  for (auto u : unit_set.units()) {
    raw.units.push_back(unit_id(u));
    raw.masses[unit_id(u)] = g.unit_mass(u) / total;
  }
  for (auto i : chosen) {
    for (auto j : chosen) {
      if (auto c = g.multiply(g.arrow_at(i), g.arrow_at(j))) {
        auto ci = g.arrow_index(*c);
        if (!member[ci]) throw InputError("not a subgroupoid: not closed under products");
        raw.compositions.push_back({static_cast<RawId>(i), static_cast<RawId>(j), static_cast<RawId>(ci)});
      }
    }
  }

  auto dec = decompose(raw, raw.masses);
  Subgroupoid out{std::move(dec.groupoid), {}, {}, {}};
  out.from_parent.assign(g.arrow_count(), std::nullopt);
  out.to_parent.resize(out.groupoid.arrow_count());
  for (auto const& [id, sub] : dec.isomorphism) {
    auto parent = g.arrow_at(static_cast<std::size_t>(id));
    out.from_parent[static_cast<std::size_t>(id)] = sub;
    out.to_parent[out.groupoid.arrow_index(sub)] = parent;
  }
  out.parent_units.resize(out.groupoid.unit_count());
  for (std::size_t u = 0; u < out.groupoid.unit_count(); ++u) {
    out.parent_units[u] = g.source(out.to_parent[out.groupoid.arrow_index(out.groupoid.unit_arrow(u))]);
  }
  return out;
}

std::vector<FiberClass> fiber_decomposition(const FiniteGroupoid& g) {
  std::map<std::size_t, std::vector<std::size_t>> by_size;
  for (std::size_t c = 0; c < g.component_count(); ++c) {
    auto const& comp = g.component(c);
    by_size[comp.group.order() * comp.base_size].push_back(c);
  }
  std::vector<FiberClass> out;
  for (auto const& [size, comps] : by_size) {
    MAlgElement units;
    Rational mass{0};
    for (auto c : comps) {
      units = set_union(units, g.component_units(c));
      mass += g.component(c).weight;
    }
    out.push_back(FiberClass{size, comps, mass, corner_restriction(g, units)});
  }
  return out;
}

}  // namespace soficlab
