#include "soficlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "soficlab/errors.hpp"

namespace soficlab {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& what) {
  if (!obj.is_object()) throw InputError(what + ": expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(what + ": missing \"" + key + "\"");
  return *it;
}

const Json& array_of(const Json& value, const std::string& what) {
  if (!value.is_array()) throw InputError(what + ": expected an array");
  return value;
}

std::size_t index_from_json(const Json& value, const std::string& what) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw InputError(what + ": expected a non-negative integer, got " + value.dump());
  }
  return value.get<std::size_t>();
}

RawId id_from_json(const Json& value, const std::string& what) {
  if (!value.is_number_integer()) throw InputError(what + ": expected an integer id, got " + value.dump());
  return value.get<RawId>();
}

RawId id_from_key(const std::string& key, const std::string& what) {
  std::size_t used = 0;
  RawId id = 0;
  try {
    id = std::stoll(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) throw InputError(what + ": key \"" + key + "\" is not an integer id");
  return id;
}

Json arrow_to_json(const Arrow& a) { return Json::array({a.component, a.g, a.y_to, a.y_from}); }

Arrow arrow_from_json(const Json& value, const std::string& what) {
  if (!value.is_array() || value.size() != 4) throw InputError(what + ": an arrow is [component, g, y_to, y_from]");
  return Arrow{index_from_json(value[0], what), index_from_json(value[1], what), index_from_json(value[2], what),
               index_from_json(value[3], what)};
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": invalid JSON (" + std::string(e.what()) + ")");
  }
}

std::string render(const Json& value) { return value.dump(2) + "\n"; }

void write_json_atomic(const std::string& path, const Json& value) {
  auto const tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(path + ": cannot write temporary file " + tmp);
    out << render(value);
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw InputError(path + ": write failed");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw InputError(path + ": cannot rename temporary file into place");
  }
}

Json to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& value, const std::string& what) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  throw InputError(what + ": rationals are strings \"p/q\", got " + value.dump());
}

// ---------------------------------------------------------------------------
// Groupoids

Json to_json(const FiniteGroupoid& g) {
  Json comps = Json::array();
  for (auto const& c : g.components()) {
    comps.push_back({{"group_table", c.group.rows()}, {"base_size", c.base_size}, {"weight", to_json(c.weight)}});
  }
  return {{"components", comps}};
}

FiniteGroupoid groupoid_from_json(const Json& value) {
  std::vector<Component> comps;
  auto const& list = array_of(field(value, "components", "groupoid"), "groupoid components");
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto const what = "component " + std::to_string(i);
    auto const& c = list[i];
    CayleyTable::Rows rows;
    for (auto const& row : array_of(field(c, "group_table", what), what + " group_table")) {
      std::vector<std::size_t> r;
      for (auto const& x : array_of(row, what + " group_table row")) r.push_back(index_from_json(x, what + " group_table"));
      rows.push_back(std::move(r));
    }
    auto const base = index_from_json(field(c, "base_size", what), what + " base_size");
    if (base == 0) throw InputError(what + ": base_size must be positive");
    comps.push_back(Component{CayleyTable(std::move(rows)), base, rational_from_json(field(c, "weight", what), what + " weight")});
  }
  return FiniteGroupoid(std::move(comps));
}

Json to_json(const RawGroupoid& raw) {
  Json arrows = Json::array();
  for (auto const& a : raw.arrows) arrows.push_back({a.id, a.source, a.range});
  Json compose = Json::array();
  for (auto const& c : raw.compositions) compose.push_back({c[0], c[1], c[2]});
  Json masses = Json::object();
  for (auto const& [u, m] : raw.masses) masses[std::to_string(u)] = to_json(m);
  Json out{{"units", raw.units}, {"arrows", arrows}, {"compose", compose}};
  if (!raw.masses.empty()) out["masses"] = masses;
  return out;
}

bool looks_raw(const Json& value) { return value.is_object() && value.contains("units") && value.contains("arrows"); }

std::map<RawId, Rational> masses_from_json(const Json& value) {
  auto const& obj = value.is_object() && value.contains("masses") ? value.at("masses") : value;
  if (!obj.is_object()) throw InputError("masses: expected an object {unit: \"p/q\"}");
  std::map<RawId, Rational> out;
  for (auto const& [key, m] : obj.items()) out[id_from_key(key, "masses")] = rational_from_json(m, "mass of unit " + key);
  return out;
}

RawGroupoid raw_from_json(const Json& value) {
  RawGroupoid raw;
  for (auto const& u : array_of(field(value, "units", "raw groupoid"), "units")) raw.units.push_back(id_from_json(u, "units"));
  for (auto const& a : array_of(field(value, "arrows", "raw groupoid"), "arrows")) {
    if (!a.is_array() || a.size() != 3) throw InputError("arrows: each entry is [id, source, range]");
    raw.arrows.push_back(RawArrow{id_from_json(a[0], "arrow id"), id_from_json(a[1], "arrow source"),
                                  id_from_json(a[2], "arrow range")});
  }
  if (value.contains("compose")) {
    for (auto const& c : array_of(value.at("compose"), "compose")) {
      if (!c.is_array() || c.size() != 3) throw InputError("compose: each entry is [a, b, a*b]");
      raw.compositions.push_back({id_from_json(c[0], "compose"), id_from_json(c[1], "compose"), id_from_json(c[2], "compose")});
    }
  }
  if (value.contains("masses")) raw.masses = masses_from_json(value.at("masses"));
  return raw;
}

FiniteGroupoid load_groupoid(const Json& value) {
  if (looks_raw(value)) return decompose(raw_from_json(value)).groupoid;
  return groupoid_from_json(value);
}

Json to_json(const Decomposition& d) {
  auto out = to_json(d.groupoid);
  Json iso = Json::object();
  for (auto const& [id, a] : d.isomorphism) iso[std::to_string(id)] = arrow_to_json(a);
  out["isomorphism"] = iso;
  return out;
}

Json to_json(const ValidationOutcome& outcome) { return {{"ok", outcome.ok()}, {"violations", outcome.violations}}; }

// ---------------------------------------------------------------------------
// Bisections and friends

Json to_json(const Bisection& alpha) {
  Json arrows = Json::array();
  for (auto const& a : alpha.arrows()) arrows.push_back(arrow_to_json(a));
  return {{"arrows", arrows}};
}

Bisection bisection_from_json(const Json& value, const GroupoidPtr& g) {
  std::vector<Arrow> arrows;
  for (auto const& a : array_of(field(value, "arrows", "bisection"), "bisection arrows")) {
    arrows.push_back(arrow_from_json(a, "bisection"));
  }
  return Bisection(g, std::move(arrows));
}

std::vector<Arrow> arrows_from_json(const Json& value, const FiniteGroupoid& g) {
  std::vector<Arrow> arrows;
  for (auto const& a : array_of(field(value, "arrows", "arrow list"), "arrow list")) {
    auto const arrow = arrow_from_json(a, "arrow list");
    if (!g.contains(arrow)) throw InputError("arrow list: " + a.dump() + " is not an arrow of the groupoid");
    arrows.push_back(arrow);
  }
  return arrows;
}

std::vector<Bisection> bisections_from_json(const Json& value, const GroupoidPtr& g) {
  auto const& list = value.is_object() ? field(value, "bisections", "bisection list") : value;
  std::vector<Bisection> out;
  for (auto const& b : array_of(list, "bisection list")) out.push_back(bisection_from_json(b, g));
  return out;
}

Json to_json(const MAlgElement& units) { return {{"units", Json(std::vector<std::size_t>(units.units().begin(), units.units().end()))}}; }

MAlgElement malg_from_json(const Json& value, const FiniteGroupoid& g) {
  std::vector<std::size_t> units;
  for (auto const& u : array_of(field(value, "units", "unit set"), "units")) {
    auto const x = index_from_json(u, "units");
    if (x >= g.unit_count()) throw InputError("units: " + std::to_string(x) + " is not a unit of the groupoid");
    units.push_back(x);
  }
  return MAlgElement(std::move(units));
}

Json to_json(const PartialInjection& a) {
  Json map = Json::object();
  for (std::size_t x = 0; x < a.n(); ++x) {
    if (auto y = a(x)) map[std::to_string(x)] = *y;
  }
  return {{"n", a.n()}, {"map", map}};
}

PartialInjection partial_injection_from_json(const Json& value) {
  auto const n = index_from_json(field(value, "n", "partial injection"), "n");
  auto const& map = field(value, "map", "partial injection");
  if (!map.is_object()) throw InputError("partial injection: map is an object {src: dst}");
  std::vector<std::optional<std::size_t>> out(n);
  for (auto const& [key, dst] : map.items()) {
    auto const src = id_from_key(key, "partial injection map");
    if (src < 0 || static_cast<std::size_t>(src) >= n) throw InputError("partial injection: source " + key + " out of range");
    out[static_cast<std::size_t>(src)] = index_from_json(dst, "partial injection image");
  }
  return PartialInjection(n, std::move(out));
}

FiniteMap map_from_json(const Json& value, const GroupoidPtr& domain, const GroupoidPtr& codomain) {
  FiniteMap out;
  for (auto const& pair : array_of(field(value, "pairs", "map"), "map pairs")) {
    if (!pair.is_array() || pair.size() != 2) throw InputError("map pairs: each entry is [bisection, image]");
    out.emplace_back(bisection_from_json(pair[0], domain), bisection_from_json(pair[1], codomain));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const Witness& w) {
  Json entries = Json::array();
  for (auto const& e : w.entries) entries.push_back({{"role", e.role}, {"bisection", to_json(e.value)}});
  return {{"what", w.what}, {"deviation", to_json(w.deviation)}, {"entries", entries}};
}

namespace {
Json witnesses_to_json(const std::vector<Witness>& ws) {
  Json out = Json::array();
  for (auto const& w : ws) out.push_back(to_json(w));
  return out;
}
}  // namespace

Json to_json(const AlmostMorphismReport& r) {
  return {{"K_size", r.k_size},
          {"epsilon", to_json(r.epsilon)},
          {"max_product_deviation", to_json(r.max_product_deviation)},
          {"max_trace_deviation", to_json(r.max_trace_deviation)},
          {"max_distance_deviation", to_json(r.max_distance_deviation)},
          {"pass", r.pass},
          {"witnesses", witnesses_to_json(r.witnesses)}};
}

Json to_json(const EmbeddingReport& r) {
  return {{"label", r.label},
          {"elements_tested", r.elements_tested},
          {"pairs_tested", r.pairs_tested},
          {"exhaustive", r.exhaustive},
          {"seed", r.seed},
          {"multiplicative", r.multiplicative},
          {"trace_preserving", r.trace_preserving},
          {"isometric", r.isometric},
          {"injective", r.injective},
          {"consistent", r.consistent},
          {"max_product_deviation", to_json(r.max_product_deviation)},
          {"max_trace_deviation", to_json(r.max_trace_deviation)},
          {"max_distance_deviation", to_json(r.max_distance_deviation)},
          {"pass", r.pass()},
          {"witnesses", witnesses_to_json(r.witnesses)}};
}

Json to_json(const SuiteBudget& b) {
  return {{"exhaustive_cap", b.exhaustive_cap}, {"sample_count", b.sample_count}, {"seed", b.seed}};
}

Json to_json(const SuiteReport& r) {
  Json checks = Json::array();
  for (auto const& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"cases", c.cases},
                      {"exhaustive", c.exhaustive},
                      {"detail", c.detail},
                      {"witnesses", witnesses_to_json(c.witnesses)}});
  }
  return {{"suite", r.suite}, {"instances", r.instances}, {"budget", to_json(r.budget)},
          {"seed", r.budget.seed}, {"checks", checks}, {"pass", r.pass()}};
}

Json to_json(const DistortionReport& r) {
  Json out{{"n", r.n},
           {"p", r.p},
           {"observed_sup", to_json(r.observed_sup)},
           {"observed_trace_sup", to_json(r.observed_trace_sup)},
           {"pairs_tested", r.pairs_tested},
           {"exhaustive", r.exhaustive},
           {"seed", r.seed}};
  out["bound"] = r.bound ? to_json(*r.bound) : Json(nullptr);
  return out;
}

}  // namespace soficlab
