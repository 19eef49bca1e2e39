#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "soficlab/cayley.hpp"
#include "soficlab/malg.hpp"
#include "soficlab/rational.hpp"

namespace soficlab {

// One arrow of a normal-form groupoid: component index, isotropy element,
// range point and source point. Composition (g, z, y)(h, y, x) = (gh, z, x).
struct Arrow {
  std::size_t component = 0;
  std::size_t g = 0;
  std::size_t y_to = 0;
  std::size_t y_from = 0;

  auto operator<=>(const Arrow&) const = default;
};

// A connected piece Gamma x Y^2 of total mass `weight`.
struct Component {
  CayleyTable group;
  std::size_t base_size = 1;
  Rational weight{1};

  friend bool operator==(const Component&, const Component&) = default;
};

// A finite pmp groupoid in normal form: a convex combination of connected
// groupoids Gamma_i x Y_i^2. Each unit of component i has mass
// weight_i / |Y_i|. Units are numbered globally, component by component.
class FiniteGroupoid {
 public:
  // Throws InputError unless there is at least one component, every weight is
  // positive and the weights sum to exactly 1.
  explicit FiniteGroupoid(std::vector<Component> components);

  static FiniteGroupoid point();
  static FiniteGroupoid group(const CayleyTable& table);
  static FiniteGroupoid full_relation(std::size_t n);
  static FiniteGroupoid connected(const CayleyTable& table, std::size_t base_size);

  [[nodiscard]] std::span<const Component> components() const noexcept { return components_; }
  [[nodiscard]] const Component& component(std::size_t i) const { return components_.at(i); }
  [[nodiscard]] std::size_t component_count() const noexcept { return components_.size(); }

  [[nodiscard]] std::size_t unit_count() const noexcept { return unit_offsets_.back(); }
  [[nodiscard]] std::size_t arrow_count() const noexcept { return arrow_offsets_.back(); }

  [[nodiscard]] std::size_t unit_index(std::size_t component, std::size_t y) const {
    return unit_offsets_[component] + y;
  }
  // (component, y) for a global unit index.
  [[nodiscard]] std::pair<std::size_t, std::size_t> unit_at(std::size_t unit) const;
  [[nodiscard]] Rational unit_mass(std::size_t unit) const { return unit_masses_[unit]; }
  [[nodiscard]] Rational measure(const MAlgElement& units) const;
  [[nodiscard]] MAlgElement all_units() const;
  [[nodiscard]] MAlgElement component_units(std::size_t component) const;

  [[nodiscard]] bool contains(const Arrow& a) const noexcept;
  [[nodiscard]] static bool is_unit(const Arrow& a) noexcept {
    return a.g == 0 && a.y_to == a.y_from;
  }
  [[nodiscard]] std::size_t source(const Arrow& a) const { return unit_index(a.component, a.y_from); }
  [[nodiscard]] std::size_t range(const Arrow& a) const { return unit_index(a.component, a.y_to); }
  [[nodiscard]] Arrow unit_arrow(std::size_t unit) const;

  // Defined iff source(a) == range(b).
  [[nodiscard]] std::optional<Arrow> multiply(const Arrow& a, const Arrow& b) const;
  [[nodiscard]] Arrow inverse(const Arrow& a) const;

  // Position in the canonical (lexicographic) arrow order.
  [[nodiscard]] std::size_t arrow_index(const Arrow& a) const;
  [[nodiscard]] Arrow arrow_at(std::size_t index) const;
  [[nodiscard]] std::vector<Arrow> arrows() const;

  // The i-th component alone, with weight 1.
  [[nodiscard]] FiniteGroupoid component_groupoid(std::size_t i) const;
  [[nodiscard]] bool same_structure(const FiniteGroupoid& other) const;

  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<Component> components_;
  std::vector<std::size_t> unit_offsets_;
  std::vector<std::size_t> arrow_offsets_;
  std::vector<Rational> unit_masses_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidPtr share(FiniteGroupoid g) {
  return std::make_shared<const FiniteGroupoid>(std::move(g));
}

// ---------------------------------------------------------------------------
// Raw composition tables (the ingestion format).

using RawId = std::int64_t;

struct RawArrow {
  RawId id = 0;
  RawId source = 0;
  RawId range = 0;
};

// Units share the arrow id space: every unit u must appear as arrow [u, u, u].
// compositions holds triples (a, b, c) meaning a*b = c, defined iff
// source(a) == range(b).
struct RawGroupoid {
  std::vector<RawId> units;
  std::vector<RawArrow> arrows;
  std::vector<std::array<RawId, 3>> compositions;
  std::map<RawId, Rational> masses;
};

struct ValidationOutcome {
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

// Structural defects (dangling ids, duplicates, composition table not defined
// exactly on composable pairs) throw InputError. Axiom failures are returned.
ValidationOutcome validate_raw(const RawGroupoid& raw);

struct Decomposition {
  FiniteGroupoid groupoid;
  std::map<RawId, Arrow> isomorphism;
};

// Connected components, isotropy groups at the lowest unit id, transversals
// by lowest arrow id. Components are ordered by (|Gamma|, |Y|, weight), ties
// by discovery order.
Decomposition decompose(const RawGroupoid& raw, const std::map<RawId, Rational>& masses);
// Uses raw.masses, or the uniform measure when none are given.
Decomposition decompose(const RawGroupoid& raw);

// The normal form written back as a table. Unit (c, y) gets id
// unit_index(c, y); the remaining arrows follow in canonical order.
RawGroupoid to_raw(const FiniteGroupoid& g);

// Transformation groupoid: arrow (g, x) has id g * |X| + x, source x and
// range g.x, with (h, g.x)(g, x) = (hg, x). action[g][x] is g.x.
RawGroupoid from_group_action(const CayleyTable& group,
                              const std::vector<std::vector<std::size_t>>& action,
                              const std::vector<Rational>& point_masses);

FiniteGroupoid convex_combination(const std::vector<std::pair<Rational, FiniteGroupoid>>& parts);

// G x H with product measure. Component (i, j) has index i * |H comps| + j,
// group Gamma_i x Gamma_j and base Y_i x Y_j (point (y, y') -> y * |Y'_j| + y').
struct ProductGroupoid {
  FiniteGroupoid groupoid;
  FiniteGroupoid left;
  FiniteGroupoid right;

  [[nodiscard]] Arrow pair(const Arrow& a, const Arrow& b) const;
  [[nodiscard]] std::pair<Arrow, Arrow> split(const Arrow& p) const;
  [[nodiscard]] std::size_t pair_unit(std::size_t u, std::size_t v) const;
};

ProductGroupoid product_groupoid(const FiniteGroupoid& g, const FiniteGroupoid& h);

// A subgroupoid carried in its own normal form together with the arrow
// correspondence to the parent. The measure is the parent measure
// renormalized to the sub unit space.
struct Subgroupoid {
  FiniteGroupoid groupoid;
  std::vector<Arrow> to_parent;                  // by sub arrow_index
  std::vector<std::optional<Arrow>> from_parent; // by parent arrow_index
  std::vector<std::size_t> parent_units;         // by sub unit index

  [[nodiscard]] Arrow lift(const Arrow& a) const { return to_parent[groupoid.arrow_index(a)]; }
  [[nodiscard]] std::optional<Arrow> lower(const FiniteGroupoid& parent, const Arrow& a) const {
    return from_parent[parent.arrow_index(a)];
  }
};

// H = {g : s(g), r(g) in A}, renormalized by 1/mu(A). Component order and
// point order are inherited from G. Throws InputError for empty A.
Subgroupoid corner_restriction(const FiniteGroupoid& g, const MAlgElement& units);

// An arbitrary arrow subset closed under products and inverses and containing
// the units it touches; brought to normal form with decompose. Throws
// InputError if the subset is not a subgroupoid.
Subgroupoid subgroupoid(const FiniteGroupoid& g, std::span<const Arrow> arrows);

struct FiberClass {
  std::size_t fiber_size = 0;
  std::vector<std::size_t> components;
  Rational mass{0};
  Subgroupoid part;
};

// Groups components by |s^{-1}(x)| = |Gamma_i| * |Y_i|, ascending.
std::vector<FiberClass> fiber_decomposition(const FiniteGroupoid& g);

}  // namespace soficlab
