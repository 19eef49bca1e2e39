#include "soficlab/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "soficlab/errors.hpp"
#include "soficlab/partial_injection.hpp"

namespace soficlab {

Bisection SemigroupMap::operator()(const Bisection& alpha) const {
  if (!same_groupoid(alpha.groupoid(), *domain)) {
    throw InputError("map '" + label + "' applied to a bisection of another groupoid");
  }
  return evaluator(alpha);
}

SemigroupMap identity_map(const GroupoidPtr& g) {
  return SemigroupMap{g, g, [](const Bisection& a) { return a; }, "identity"};
}

namespace {

bool is_full_relation(const FiniteGroupoid& g) {
  return g.component_count() == 1 && g.component(0).group.order() == 1;
}

// Re-reads the arrows of alpha as arrows of another groupoid with the same
// component structure.
Bisection reinterpret(const Bisection& alpha, const GroupoidPtr& target) {
  return Bisection(target, std::vector<Arrow>(alpha.arrows().begin(), alpha.arrows().end()));
}

}  // namespace

// ---------------------------------------------------------------------------

SemigroupMap embed_connected(const GroupoidPtr& g) {
  if (g->component_count() != 1) {
    throw InputError("embed_connected needs a connected groupoid, got " + std::to_string(g->component_count()) +
                     " components");
  }
  auto const& comp = g->component(0);
  auto const order = comp.group.order();
  auto codomain = share(FiniteGroupoid::full_relation(order * comp.base_size));
  auto group = comp.group;
  auto evaluator = [codomain, group, order](const Bisection& alpha) {
    std::vector<Arrow> out;
    out.reserve(alpha.size() * order);
    for (auto const& a : alpha.arrows()) {
      for (std::size_t h = 0; h < order; ++h) {
        out.push_back(Arrow{0, 0, a.y_to * order + group.multiply(a.g, h), a.y_from * order + h});
      }
    }
    return Bisection(codomain, std::move(out));
  };
  return SemigroupMap{g, codomain, evaluator,
                      "connected(|Gamma|=" + std::to_string(order) + ",|Y|=" + std::to_string(comp.base_size) + ")"};
}

SemigroupMap embed_convex(const GroupoidPtr& g) {
  std::vector<SemigroupMap> stages;
  for (std::size_t i = 0; i < g->component_count(); ++i) {
    stages.push_back(embed_connected(share(g->component_groupoid(i))));
  }
  return embed_convex(g, stages);
}

SemigroupMap embed_convex(const GroupoidPtr& g, const std::vector<SemigroupMap>& stage_maps) {
  auto const k = g->component_count();
  if (stage_maps.size() != k) throw InputError("embed_convex needs one stage map per component");
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < k; ++i) {
    if (!stage_maps[i].domain->same_structure(g->component_groupoid(i))) {
      throw InputError("stage map " + std::to_string(i) + " does not act on component " + std::to_string(i));
    }
    if (!is_full_relation(*stage_maps[i].codomain)) {
      throw InputError("stage map " + std::to_string(i) + " does not land in a symmetric inverse monoid");
    }
    sizes.push_back(stage_maps[i].codomain->component(0).base_size);
  }

  std::vector<Rational> weights;
  for (auto const& c : g->components()) weights.push_back(c.weight);
  auto const q = static_cast<std::size_t>(lcm_of_denominators(weights));
  std::vector<std::size_t> block_of;
  for (std::size_t i = 0; i < k; ++i) {
    auto const share_of_q = weights[i] * static_cast<std::int64_t>(q);
    block_of.insert(block_of.end(), static_cast<std::size_t>(share_of_q.numerator()), i);
  }
  check_invariant(block_of.size() == q, "convex blocks do not fill [q]");

  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = k; i-- > 1;) stride[i - 1] = stride[i] * sizes[i];
  std::size_t const fiber = k == 0 ? 1 : stride[0] * sizes[0];
  auto codomain = share(FiniteGroupoid::full_relation(q * fiber));

  auto evaluator = [g, stage_maps, sizes, stride, fiber, block_of, codomain, k](const Bisection& alpha) {
    std::vector<PartialInjection> stage_images;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Arrow> part;
      for (auto a : alpha.arrows()) {
        if (a.component != i) continue;
        a.component = 0;
        part.push_back(a);
      }
      auto const& stage = stage_maps[i];
      stage_images.push_back(to_partial_injection(stage(Bisection(stage.domain, std::move(part)))));
    }
    std::vector<Arrow> out;
    for (std::size_t j = 0; j < block_of.size(); ++j) {
      auto const i = block_of[j];
      auto const& pi = stage_images[i];
      for (std::size_t t = 0; t < fiber; ++t) {
        auto const x = (t / stride[i]) % sizes[i];
        auto const y = pi(x);
        if (!y) continue;
        auto const moved = t - x * stride[i] + *y * stride[i];
        out.push_back(Arrow{0, 0, j * fiber + moved, j * fiber + t});
      }
    }
    return Bisection(codomain, std::move(out));
  };
  return SemigroupMap{g, codomain, evaluator, "convex(q=" + std::to_string(q) + ")"};
}

SemigroupMap embed_convex_pair(const SemigroupMap& phi_nu, const SemigroupMap& phi_rho, const Rational& t) {
  if (t < 0 || t > 1) throw InputError("convex parameter t must lie in [0, 1]");
  if (!phi_nu.domain->same_structure(*phi_rho.domain)) {
    throw InputError("embed_convex_pair: the two maps act on different groupoids");
  }
  if (t == 1) return phi_nu;
  if (t == 0) return phi_rho;

  std::vector<Component> comps;
  for (std::size_t i = 0; i < phi_nu.domain->component_count(); ++i) {
    auto c = phi_nu.domain->component(i);
    c.weight = t * c.weight + (1 - t) * phi_rho.domain->component(i).weight;
    comps.push_back(std::move(c));
  }
  auto domain = share(FiniteGroupoid(std::move(comps)));
  auto codomain = share(convex_combination({{t, *phi_nu.codomain}, {1 - t, *phi_rho.codomain}}));
  auto const offset = phi_nu.codomain->component_count();

  auto evaluator = [phi_nu, phi_rho, codomain, offset](const Bisection& alpha) {
    auto left = phi_nu(reinterpret(alpha, phi_nu.domain));
    auto right = phi_rho(reinterpret(alpha, phi_rho.domain));
    std::vector<Arrow> out(left.arrows().begin(), left.arrows().end());
    for (auto a : right.arrows()) {
      a.component += offset;
      out.push_back(a);
    }
    return Bisection(codomain, std::move(out));
  };
  return SemigroupMap{domain, codomain, evaluator,
                      "pair(t=" + to_string(t) + "," + phi_nu.label + "," + phi_rho.label + ")"};
}

SemigroupMap ladder_map(std::size_t n, std::size_t p) {
  if (p < n) throw InputError("ladder target p=" + std::to_string(p) + " is below n=" + std::to_string(n));
  auto domain = share(FiniteGroupoid::full_relation(n));
  auto codomain = share(FiniteGroupoid::full_relation(p));
  auto evaluator = [codomain, p](const Bisection& alpha) {
    return to_bisection(embed_general(to_partial_injection(alpha), p), codomain);
  };
  return SemigroupMap{domain, codomain, evaluator, "ladder(" + std::to_string(n) + "->" + std::to_string(p) + ")"};
}

RestrictedMap restrict_almost_morphism(const SemigroupMap& theta, const MAlgElement& units) {
  auto domain_corner = std::make_shared<const Subgroupoid>(corner_restriction(*theta.domain, units));
  auto const e = theta(Bisection::idempotent(theta.domain, units));
  if (!is_idempotent(e)) throw InputError("theta(1_H) is not an idempotent; cannot cut down to a corner");
  if (e.empty()) throw InputError("theta(1_H) is empty: zero-trace corner");
  auto codomain_corner = std::make_shared<const Subgroupoid>(corner_restriction(*theta.codomain, source_set(e)));

  auto h = share(domain_corner->groupoid);
  auto f = share(codomain_corner->groupoid);
  auto evaluator = [theta, e, domain_corner, codomain_corner, f](const Bisection& alpha) {
    std::vector<Arrow> lifted;
    for (auto const& a : alpha.arrows()) lifted.push_back(domain_corner->lift(a));
    auto const image = e * theta(Bisection(theta.domain, std::move(lifted))) * e;
    std::vector<Arrow> lowered;
    for (auto const& a : image.arrows()) {
      auto sub = codomain_corner->lower(*theta.codomain, a);
      check_invariant(sub.has_value(), "cut-down image escapes the corner");
      lowered.push_back(*sub);
    }
    return Bisection(f, std::move(lowered));
  };
  return RestrictedMap{SemigroupMap{h, f, evaluator, "corner(" + theta.label + ")"}, *domain_corner,
                       *codomain_corner};
}

// ---------------------------------------------------------------------------
// Finite index

TransversalSearch find_transversals(const GroupoidPtr& g, std::span<const Arrow> h) {
  auto sub = subgroupoid(*g, h);
  std::vector<bool> in_h(g->arrow_count(), false);
  for (auto const& a : h) in_h[g->arrow_index(a)] = true;
  for (std::size_t u = 0; u < g->unit_count(); ++u) {
    if (!in_h[g->arrow_index(g->unit_arrow(u))]) {
      throw InputError("subgroupoid misses unit " + std::to_string(u) + "; finite index needs H^(0) = G^(0)");
    }
  }

  // Left cosets gH^{s(g)}, named by their lowest arrow index.
  auto const arrows = g->arrows();
  std::vector<std::size_t> coset_of(arrows.size());
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    std::size_t lowest = i;
    for (std::size_t j = 0; j < arrows.size(); ++j) {
      if (!in_h[j]) continue;
      if (auto p = g->multiply(arrows[i], arrows[j])) lowest = std::min(lowest, g->arrow_index(*p));
    }
    coset_of[i] = lowest;
  }
  std::vector<std::size_t> cosets(coset_of);
  std::sort(cosets.begin(), cosets.end());
  cosets.erase(std::unique(cosets.begin(), cosets.end()), cosets.end());
  std::vector<std::size_t> coset_slot(arrows.size());
  for (std::size_t c = 0; c < cosets.size(); ++c) coset_slot[cosets[c]] = c;

  auto const units = g->unit_count();
  TransversalSearch result;
  if (cosets.size() % units != 0) {
    result.failure = std::to_string(cosets.size()) + " cosets cannot be split evenly over " + std::to_string(units) +
                     " units";
    return result;
  }
  auto const n_index = cosets.size() / units;

  // For each unit: the cosets reachable from it, as (coset slot, lowest arrow).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> options(units);
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    auto const x = g->source(arrows[i]);
    auto const slot = coset_slot[coset_of[i]];
    auto& opts = options[x];
    auto it = std::find_if(opts.begin(), opts.end(), [&](auto const& o) { return o.first == slot; });
    if (it == opts.end()) opts.emplace_back(slot, i);
  }
  for (auto& opts : options) std::sort(opts.begin(), opts.end(), [](auto a, auto b) { return a.second < b.second; });

  std::vector<bool> coset_used(cosets.size(), false);
  std::vector<bool> range_used(units, false);
  std::vector<std::vector<std::size_t>> chosen(n_index);  // arrow indices per psi
  std::vector<std::size_t> first_choice(n_index, 0);
  constexpr std::uint64_t node_budget = 5'000'000;

  std::function<bool(std::size_t, std::size_t)> search = [&](std::size_t i, std::size_t x) -> bool {
    if (++result.nodes > node_budget) return false;
    if (i == n_index) return true;
    if (x == units) {
      std::fill(range_used.begin(), range_used.end(), false);
      if (search(i + 1, 0)) return true;
      for (auto a : chosen[i]) range_used[g->range(arrows[a])] = true;
      return false;
    }
    for (auto const& [slot, arrow] : options[x]) {
      auto const r = g->range(arrows[arrow]);
      if (coset_used[slot] || range_used[r]) continue;
      // Transversals are ordered by their choice at the first unit.
      if (x == 0 && i > 0 && slot <= first_choice[i - 1]) continue;
      coset_used[slot] = true;
      range_used[r] = true;
      chosen[i].push_back(arrow);
      if (x == 0) first_choice[i] = slot;
      if (search(i, x + 1)) return true;
      chosen[i].pop_back();
      range_used[r] = false;
      coset_used[slot] = false;
    }
    return false;
  };

  if (!search(0, 0)) {
    result.failure = result.nodes > node_budget ? "search budget exhausted"
                                                : "no family of " + std::to_string(n_index) +
                                                      " full-group elements partitions G into cosets of H";
    return result;
  }

  TransversalSystem system{g, std::vector<Arrow>(h.begin(), h.end()), sub, share(sub.groupoid), {}};
  std::sort(system.subgroupoid_arrows.begin(), system.subgroupoid_arrows.end());
  system.subgroupoid_arrows.erase(std::unique(system.subgroupoid_arrows.begin(), system.subgroupoid_arrows.end()),
                                  system.subgroupoid_arrows.end());
  for (auto const& picks : chosen) {
    std::vector<Arrow> psi;
    for (auto a : picks) psi.push_back(arrows[a]);
    system.transversals.emplace_back(Bisection(g, std::move(psi)));
  }
  result.system = std::move(system);
  return result;
}

std::vector<std::vector<Bisection>> block_components(const Bisection& alpha, const TransversalSystem& system) {
  if (!same_groupoid(alpha.groupoid(), *system.groupoid)) {
    throw InputError("block_components: bisection is not from the transversal system's groupoid");
  }
  auto const n = system.index();
  std::vector<std::vector<Bisection>> out(n);
  std::vector<std::vector<Bisection>> in_g(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto const left = invert(system.transversals[i].bisection());
    for (std::size_t j = 0; j < n; ++j) {
      auto const entry = intersect(left * alpha * system.transversals[j].bisection(), system.subgroupoid_arrows);
      std::vector<Arrow> lowered;
      for (auto const& a : entry.arrows()) lowered.push_back(*system.sub.lower(*system.groupoid, a));
      out[i].emplace_back(system.sub_ptr, std::move(lowered));
      in_g[i].push_back(entry);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        check_invariant(set_intersection(range_set(in_g[i][j]), range_set(in_g[i][l])).empty(),
                        "block row entries share a range");
        check_invariant(set_intersection(source_set(in_g[j][i]), source_set(in_g[l][i])).empty(),
                        "block column entries share a source");
      }
    }
  }
  return out;
}

SemigroupMap finite_index_lift(const TransversalSystem& system, const SemigroupMap& phi) {
  if (!same_groupoid(*phi.domain, *system.sub_ptr)) {
    throw InputError("finite_index_lift: Phi must act on the subgroupoid H");
  }
  auto const n = system.index();
  auto matrix_units = share(FiniteGroupoid::full_relation(n));
  auto space = std::make_shared<const ProductSpace>(ProductSpace::make(phi.codomain, matrix_units));
  auto evaluator = [system, phi, matrix_units, space, n](const Bisection& alpha) {
    auto const blocks = block_components(alpha, system);
    std::vector<Arrow> out;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (blocks[i][j].empty()) continue;
        auto const term = space->rectangle(phi(blocks[i][j]), Bisection(matrix_units, {Arrow{0, 0, i, j}}));
        out.insert(out.end(), term.arrows().begin(), term.arrows().end());
      }
    }
    try {
      return Bisection(space->whole, std::move(out));
    } catch (const InputError& e) {
      throw AssertionFailure(std::string("Xi terms overlap (invalid transversal system): ") + e.what());
    }
  };
  return SemigroupMap{system.groupoid, space->whole, evaluator, "finite-index(N=" + std::to_string(n) + "," + phi.label + ")"};
}

// ---------------------------------------------------------------------------
// Products

ProductSpace ProductSpace::make(const GroupoidPtr& left, const GroupoidPtr& right) {
  auto layout = product_groupoid(*left, *right);
  auto whole = share(layout.groupoid);
  return ProductSpace{left, right, whole, std::move(layout)};
}

Bisection ProductSpace::rectangle(const Bisection& a, const Bisection& b) const {
  if (!same_groupoid(a.groupoid(), *left) || !same_groupoid(b.groupoid(), *right)) {
    throw InputError("rectangle factors are not from the product's factors");
  }
  std::vector<Arrow> out;
  out.reserve(a.size() * b.size());
  for (auto const& x : a.arrows()) {
    for (auto const& y : b.arrows()) out.push_back(layout.pair(x, y));
  }
  return Bisection(whole, std::move(out));
}

namespace {

bool disjoint(const MAlgElement& a, const MAlgElement& b) { return set_intersection(a, b).empty(); }

bool compatible_parts(const Rectangle& p, const Rectangle& q) {
  bool const sources = disjoint(source_set(p.left), source_set(q.left)) ||
                       disjoint(source_set(p.right), source_set(q.right));
  bool const ranges = disjoint(range_set(p.left), range_set(q.left)) ||
                      disjoint(range_set(p.right), range_set(q.right));
  return sources && ranges;
}

std::optional<Bisection> try_union(const Bisection& a, const Bisection& b) {
  std::vector<Arrow> merged;
  std::set_union(a.arrows().begin(), a.arrows().end(), b.arrows().begin(), b.arrows().end(),
                 std::back_inserter(merged));
  std::vector<std::size_t> sources, ranges;
  for (auto const& x : merged) {
    sources.push_back(a.groupoid().source(x));
    ranges.push_back(a.groupoid().range(x));
  }
  if (MAlgElement(sources).size() != merged.size() || MAlgElement(ranges).size() != merged.size()) {
    return std::nullopt;
  }
  return Bisection(a.groupoid_ptr(), std::move(merged));
}

}  // namespace

bool satisfies_rectangle_invariants(const RectangleUnion& u) {
  for (std::size_t i = 0; i < u.parts.size(); ++i) {
    for (std::size_t j = i + 1; j < u.parts.size(); ++j) {
      if (!compatible_parts(u.parts[i], u.parts[j])) return false;
    }
  }
  return true;
}

Bisection assemble(const ProductSpace& space, const RectangleUnion& u) {
  std::vector<Arrow> out;
  for (auto const& part : u.parts) {
    auto const r = space.rectangle(part.left, part.right);
    out.insert(out.end(), r.arrows().begin(), r.arrows().end());
  }
  return Bisection(space.whole, std::move(out));
}

RectangleUnion rectangle_decompose(const ProductSpace& space, const Bisection& phi, MergeOrder order) {
  if (!same_groupoid(phi.groupoid(), *space.whole)) throw InputError("rectangle_decompose: foreign bisection");
  RectangleUnion u;
  for (auto const& a : phi.arrows()) {
    auto [x, y] = space.layout.split(a);
    u.parts.push_back(Rectangle{Bisection(space.left, {x}), Bisection(space.right, {y})});
  }
  if (order == MergeOrder::reverse) std::reverse(u.parts.begin(), u.parts.end());

  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < u.parts.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < u.parts.size() && !merged; ++j) {
        auto const& p = u.parts[i];
        auto const& q = u.parts[j];
        std::optional<Rectangle> candidate;
        if (p.left == q.left) {
          if (auto r = try_union(p.right, q.right)) candidate = Rectangle{p.left, *r};
        } else if (p.right == q.right) {
          if (auto l = try_union(p.left, q.left)) candidate = Rectangle{*l, p.right};
        }
        if (!candidate) continue;
        bool fits = true;
        for (std::size_t k = 0; k < u.parts.size() && fits; ++k) {
          if (k != i && k != j) fits = compatible_parts(*candidate, u.parts[k]);
        }
        if (!fits) continue;
        u.parts[i] = std::move(*candidate);
        u.parts.erase(u.parts.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
    }
  }
  check_invariant(satisfies_rectangle_invariants(u), "rectangle decomposition left the monoid M");
  check_invariant(assemble(space, u) == phi, "rectangle decomposition does not reassemble to phi");
  return u;
}

Bisection product_embedding(const SemigroupMap& phi, const SemigroupMap& psi, const ProductSpace& codomain,
                            const RectangleUnion& u) {
  std::vector<Arrow> out;
  for (auto const& part : u.parts) {
    auto const r = codomain.rectangle(phi(part.left), psi(part.right));
    out.insert(out.end(), r.arrows().begin(), r.arrows().end());
  }
  try {
    return Bisection(codomain.whole, std::move(out));
  } catch (const InputError& e) {
    throw AssertionFailure(std::string("product embedding terms overlap: ") + e.what());
  }
}

}  // namespace soficlab
