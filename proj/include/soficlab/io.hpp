#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "soficlab/bisection.hpp"
#include "soficlab/groupoid.hpp"
#include "soficlab/partial_injection.hpp"
#include "soficlab/verify.hpp"

namespace soficlab {

using Json = nlohmann::json;

inline constexpr const char* tool_name = "soficlab";
inline constexpr const char* tool_version = "0.1.0";

// Parse failures and I/O errors throw InputError naming the path.
Json read_json_file(const std::string& path);
// Writes to a temporary sibling and renames it over `path`.
void write_json_atomic(const std::string& path, const Json& value);
// Two-space indentation and a trailing newline; keys come out sorted.
std::string render(const Json& value);

Json to_json(const Rational& value);
Rational rational_from_json(const Json& value, const std::string& what);

// {"components":[{"group_table":[[...]], "base_size":k, "weight":"p/q"}]}
Json to_json(const FiniteGroupoid& g);
FiniteGroupoid groupoid_from_json(const Json& value);

// {"units":[...], "arrows":[[id,src,rng],...], "compose":[[a,b,c],...], "masses":{unit:"p/q"}}
Json to_json(const RawGroupoid& raw);
RawGroupoid raw_from_json(const Json& value);
[[nodiscard]] bool looks_raw(const Json& value);
// Normal-form files as they are; raw files through decompose.
FiniteGroupoid load_groupoid(const Json& value);

// A mass file: {"masses":{unit:"p/q"}} or the bare object.
std::map<RawId, Rational> masses_from_json(const Json& value);

// Normal form plus "isomorphism": {raw id: [component, g, y_to, y_from]}.
Json to_json(const Decomposition& d);
Json to_json(const ValidationOutcome& outcome);

// {"arrows":[[component, g, y_to, y_from], ...]}
Json to_json(const Bisection& alpha);
Bisection bisection_from_json(const Json& value, const GroupoidPtr& g);
// {"arrows":[...]} read as a plain arrow list, with no injectivity demanded.
std::vector<Arrow> arrows_from_json(const Json& value, const FiniteGroupoid& g);
// A list of bisections: a JSON array or {"bisections":[...]}.
std::vector<Bisection> bisections_from_json(const Json& value, const GroupoidPtr& g);

// {"units":[...]}
Json to_json(const MAlgElement& units);
MAlgElement malg_from_json(const Json& value, const FiniteGroupoid& g);

// {"n":k, "map":{src:dst}}
Json to_json(const PartialInjection& a);
PartialInjection partial_injection_from_json(const Json& value);

// {"pairs":[[bisection, bisection], ...]}
FiniteMap map_from_json(const Json& value, const GroupoidPtr& domain, const GroupoidPtr& codomain);

Json to_json(const Witness& w);
Json to_json(const AlmostMorphismReport& r);
Json to_json(const EmbeddingReport& r);
Json to_json(const SuiteReport& r);
Json to_json(const DistortionReport& r);
Json to_json(const SuiteBudget& b);

}  // namespace soficlab
