#include "soficlab/cli.hpp"

#include <cstdlib>
#include <optional>

#include <CLI11.hpp>

#include "soficlab/constructions.hpp"
#include "soficlab/errors.hpp"
#include "soficlab/io.hpp"
#include "soficlab/partial_injection.hpp"
#include "soficlab/verify.hpp"

namespace soficlab {

namespace {

constexpr std::uint64_t k_all_cap = 10'000;

struct Common {
  std::string out_path;
  std::uint64_t seed = SuiteBudget{}.seed;
  std::uint64_t budget = SuiteBudget{}.exhaustive_cap;
};

std::uint64_t effective_seed(std::uint64_t flag) {
  const char* env = std::getenv("SOFICLAB_SEED");
  if (env == nullptr || *env == '\0') return flag;
  std::string const text(env);
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.front() == '-') throw InputError("SOFICLAB_SEED: not an unsigned integer: " + text);
  return value;
}

SuiteBudget make_budget(const Common& c) {
  SuiteBudget b;
  b.exhaustive_cap = c.budget;
  b.sample_count = std::min(c.budget, SuiteBudget{}.sample_count);
  b.seed = effective_seed(c.seed);
  return b;
}

void emit(Json report, const std::string& out_path, std::ostream& out) {
  report["tool"] = tool_name;
  report["version"] = tool_version;
  if (out_path.empty()) {
    out << render(report);
  } else {
    write_json_atomic(out_path, report);
  }
}

GroupoidPtr load_groupoid_file(const std::string& path) {
  if (path.empty()) throw InputError("a groupoid file is required (--groupoid)");
  try {
    return share(load_groupoid(read_json_file(path)));
  } catch (const InputError& e) {
    std::string const what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + what);
  }
}

std::vector<Arrow> isotropy(const FiniteGroupoid& g) {
  std::vector<Arrow> out;
  for (auto const& a : g.arrows()) {
    if (a.y_to == a.y_from) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct EmbedArgs {
  std::string kind;
  std::string groupoid;
  std::string groupoid2;
  std::string subgroupoid;
  std::string bisection;
  std::string element;
  std::string t = "1/2";
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<std::size_t> p_list;
};

SemigroupMap product_map(const GroupoidPtr& g, const GroupoidPtr& h) {
  auto space = std::make_shared<const ProductSpace>(ProductSpace::make(g, h));
  auto const phi = embed_convex(g);
  auto const psi = embed_convex(h);
  auto codomain = std::make_shared<const ProductSpace>(ProductSpace::make(phi.codomain, psi.codomain));
  auto evaluator = [space, phi, psi, codomain](const Bisection& x) {
    return product_embedding(phi, psi, *codomain, rectangle_decompose(*space, x));
  };
  return SemigroupMap{space->whole, codomain->whole, evaluator, "product(" + phi.label + "," + psi.label + ")"};
}

int run_embed(const EmbedArgs& a, const Common& c, std::ostream& out) {
  auto const budget = make_budget(c);
  Json report{{"kind", a.kind}, {"budget", to_json(budget)}, {"seed", budget.seed}};

  if (a.kind == "ladder") {
    if (a.n == 0) throw InputError("embed --kind ladder needs --n");
    auto ps = a.p_list;
    if (a.p != 0) ps.insert(ps.begin(), a.p);
    if (ps.empty()) throw InputError("embed --kind ladder needs --p or --p-list");
    auto const reports = ladder_profile(a.n, ps, budget.exhaustive_cap, budget.seed);
    Json list = Json::array();
    bool pass = true;
    for (auto const& r : reports) {
      list.push_back(to_json(r));
      pass = pass && (r.bound ? r.observed_sup <= *r.bound : r.observed_sup == 0);
    }
    report["reports"] = list;
    if (!a.element.empty()) {
      auto const pi = partial_injection_from_json(read_json_file(a.element));
      if (pi.n() != a.n) throw InputError(a.element + ": element lives in [[" + std::to_string(pi.n()) + "]], not [[" +
                                          std::to_string(a.n) + "]]");
      Json images = Json::array();
      for (auto p : ps) images.push_back({{"p", p}, {"image", to_json(embed_general(pi, p))}});
      report["element"] = to_json(pi);
      report["images"] = images;
    }
    report["pass"] = pass;
    emit(report, c.out_path, out);
    return pass ? exit_pass : exit_fail;
  }

  auto const g = load_groupoid_file(a.groupoid);
  std::optional<SemigroupMap> map;
  if (a.kind == "connected") {
    map = embed_connected(g);
  } else if (a.kind == "convex") {
    map = embed_convex(g);
  } else if (a.kind == "pair") {
    auto const rho = a.groupoid2.empty() ? g : load_groupoid_file(a.groupoid2);
    auto const t = parse_rational(a.t);
    map = embed_convex_pair(embed_convex(g), embed_convex(rho), t);
    report["t"] = to_json(t);
  } else if (a.kind == "index") {
    auto const h = a.subgroupoid.empty() ? isotropy(*g) : arrows_from_json(read_json_file(a.subgroupoid), *g);
    auto const search = find_transversals(g, h);
    report["nodes"] = search.nodes;
    if (!search.system) {
      report["failure"] = search.failure;
      report["pass"] = false;
      emit(report, c.out_path, out);
      return exit_fail;
    }
    Json psis = Json::array();
    for (auto const& psi : search.system->transversals) psis.push_back(to_json(psi.bisection()));
    report["index"] = search.system->index();
    report["transversals"] = psis;
    report["subgroupoid"] = to_json(search.system->sub.groupoid);
    map = finite_index_lift(*search.system, identity_map(search.system->sub_ptr));
  } else if (a.kind == "product") {
    auto const h = a.groupoid2.empty() ? g : load_groupoid_file(a.groupoid2);
    map = product_map(g, h);
    if (!a.bisection.empty()) {
      auto const space = ProductSpace::make(g, h);
      auto const phi = bisection_from_json(read_json_file(a.bisection), space.whole);
      Json parts = Json::array();
      for (auto const& r : rectangle_decompose(space, phi).parts) {
        parts.push_back({{"left", to_json(r.left)}, {"right", to_json(r.right)}});
      }
      report["decomposition"] = parts;
    }
  } else {
    throw InputError("unknown embedding kind '" + a.kind + "'");
  }

  report["label"] = map->label;
  report["domain"] = to_json(*map->domain);
  report["codomain"] = to_json(*map->codomain);
  if (!a.bisection.empty()) {
    auto const alpha = bisection_from_json(read_json_file(a.bisection), map->domain);
    report["bisection"] = to_json(alpha);
    report["image"] = to_json((*map)(alpha));
  }
  auto const check = check_embedding(*map, budget);
  report["check"] = to_json(check);
  report["pass"] = check.pass();
  emit(report, c.out_path, out);
  return check.pass() ? exit_pass : exit_fail;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string map;
  std::string k;
  std::string epsilon;
  std::string groupoid;
  std::string codomain;
  std::size_t n = 0;
  std::size_t p = 0;
};

int run_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  auto const epsilon = parse_rational(a.epsilon);
  if (epsilon <= 0) throw InputError("--epsilon must be positive");

  std::optional<SemigroupMap> construction;
  std::optional<FiniteMap> pairs;
  GroupoidPtr domain;
  if (a.map == "identity" || a.map == "connected" || a.map == "convex") {
    domain = load_groupoid_file(a.groupoid);
    construction = a.map == "identity" ? identity_map(domain) : a.map == "connected" ? embed_connected(domain)
                                                                                       : embed_convex(domain);
  } else if (a.map == "ladder") {
    if (a.n == 0 || a.p == 0) throw InputError("--map ladder needs --n and --p");
    construction = ladder_map(a.n, a.p);
    domain = construction->domain;
  } else {
    auto const file = read_json_file(a.map);
    if (!a.groupoid.empty()) {
      domain = load_groupoid_file(a.groupoid);
    } else if (file.is_object() && file.contains("domain")) {
      domain = share(load_groupoid(file.at("domain")));
    } else {
      throw InputError(a.map + ": the domain groupoid comes from --groupoid or a \"domain\" key");
    }
    GroupoidPtr codomain = domain;
    if (!a.codomain.empty()) {
      codomain = load_groupoid_file(a.codomain);
    } else if (file.contains("codomain")) {
      codomain = share(load_groupoid(file.at("codomain")));
    }
    pairs = map_from_json(file, domain, codomain);
  }

  std::vector<Bisection> k;
  if (a.k == "all") {
    k = enumerate_bisections(domain, EnumerationKind::semigroup, k_all_cap);
  } else {
    k = bisections_from_json(read_json_file(a.k), domain);
  }
  auto const report = construction ? check_almost_morphism(*construction, k, epsilon)
                                   : check_almost_morphism(*pairs, k, epsilon);
  auto json = to_json(report);
  json["map"] = construction ? construction->label : a.map;
  emit(json, c.out_path, out);
  return report.pass ? exit_pass : exit_fail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computation with finite pmp groupoids and their full semigroups", "soficlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version));

  Common common;
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", common.out_path, "write the JSON report here (atomic)"); };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "sampling seed (SOFICLAB_SEED overrides)");
    sub->add_option("--budget", common.budget, "exhaustive cap in cases; larger runs are sampled")
        ->check(CLI::PositiveNumber);
  };

  std::string raw_path, weights_path, groupoid_path, bisection_path, suite_name;

  auto* validate = app.add_subcommand("validate", "check the groupoid axioms on a raw table");
  validate->add_option("raw", raw_path, "raw groupoid JSON")->required();
  add_out(validate);

  auto* decompose_cmd = app.add_subcommand("decompose", "normal form of a raw table");
  decompose_cmd->add_option("raw", raw_path, "raw groupoid JSON")->required();
  decompose_cmd->add_option("--weights", weights_path, "unit masses {unit: \"p/q\"}");
  add_out(decompose_cmd);

  EmbedArgs embed_args;
  auto* embed = app.add_subcommand("embed", "build an embedding and certify it");
  embed->add_option("--kind", embed_args.kind, "construction")
      ->required()
      ->check(CLI::IsMember({"connected", "convex", "pair", "index", "product", "ladder"}));
  embed->add_option("--groupoid", embed_args.groupoid, "groupoid JSON (normal form or raw)");
  embed->add_option("--groupoid2", embed_args.groupoid2, "second groupoid (pair, product)");
  embed->add_option("--subgroupoid", embed_args.subgroupoid, "arrow list of H (index); default the isotropy");
  embed->add_option("--t", embed_args.t, "convex parameter (pair)");
  embed->add_option("--bisection", embed_args.bisection, "also report the image of this bisection");
  embed->add_option("--element", embed_args.element, "partial injection to push up the ladder");
  embed->add_option("--n", embed_args.n, "ladder source degree");
  embed->add_option("--p", embed_args.p, "ladder target degree");
  embed->add_option("--p-list", embed_args.p_list, "ladder target degrees")->delimiter(',');
  add_budget(embed);
  add_out(embed);

  auto* extend = app.add_subcommand("extend", "extend a bisection to a full-group element");
  extend->add_option("groupoid", groupoid_path, "groupoid JSON")->required();
  extend->add_option("bisection", bisection_path, "bisection JSON")->required();
  add_out(extend);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "(K, epsilon) almost-morphism check");
  verify->add_option("--map", verify_args.map, "map file, or identity|connected|convex|ladder")->required();
  verify->add_option("--K", verify_args.k, "bisection list file, or all")->required();
  verify->add_option("--epsilon", verify_args.epsilon, "tolerance p/q")->required();
  verify->add_option("--groupoid", verify_args.groupoid, "domain groupoid");
  verify->add_option("--codomain", verify_args.codomain, "codomain groupoid for a map file");
  verify->add_option("--n", verify_args.n, "ladder source degree");
  verify->add_option("--p", verify_args.p, "ladder target degree");
  add_out(verify);

  auto* suite = app.add_subcommand("suite", "run a named property suite");
  suite->add_option("--name", suite_name, "suite name")->required();
  suite->add_option("--groupoid", groupoid_path, "run on this groupoid instead of the built-in instances");
  add_budget(suite);
  add_out(suite);

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return exit_pass;
    }
    err << "error: " << e.what() << "\n";
    return exit_input;
  }

  try {
    if (*validate) {
      auto const raw = raw_from_json(read_json_file(raw_path));
      auto const outcome = validate_raw(raw);
      emit(to_json(outcome), common.out_path, out);
      if (!outcome.ok()) {
        err << raw_path << ": " << outcome.violations.front();
        if (outcome.violations.size() > 1) err << " (+" << outcome.violations.size() - 1 << " more)";
        err << "\n";
        return exit_input;
      }
      return exit_pass;
    }
    if (*decompose_cmd) {
      auto const raw = raw_from_json(read_json_file(raw_path));
      auto const d = weights_path.empty() ? decompose(raw) : decompose(raw, masses_from_json(read_json_file(weights_path)));
      emit(to_json(d), common.out_path, out);
      return exit_pass;
    }
    if (*embed) return run_embed(embed_args, common, out);
    if (*extend) {
      auto const g = load_groupoid_file(groupoid_path);
      auto const gamma = bisection_from_json(read_json_file(bisection_path), g);
      auto const ext = extend_to_full_group(gamma).bisection();
      bool const contains = intersect(ext, gamma) == gamma;
      emit({{"gamma", to_json(gamma)}, {"extension", to_json(ext)}, {"contains", contains}, {"full", is_full(ext)}},
           common.out_path, out);
      return contains && is_full(ext) ? exit_pass : exit_fail;
    }
    if (*verify) return run_verify(verify_args, common, out);
    if (*suite) {
      std::optional<GroupoidPtr> g;
      if (!groupoid_path.empty()) g = load_groupoid_file(groupoid_path);
      auto const report = run_suite(suite_name, g, make_budget(common));
      emit(to_json(report), common.out_path, out);
      return report.pass() ? exit_pass : exit_fail;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << "\n";
    return exit_fail;
  }
  return exit_input;
}

}  // namespace soficlab
