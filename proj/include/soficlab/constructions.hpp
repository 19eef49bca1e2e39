#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "soficlab/bisection.hpp"
#include "soficlab/groupoid.hpp"

namespace soficlab {

// A map between full semigroups, defined on every bisection of its domain.
struct SemigroupMap {
  GroupoidPtr domain;
  GroupoidPtr codomain;
  std::function<Bisection(const Bisection&)> evaluator;
  std::string label;

  // Throws InputError if alpha is not a bisection of the domain.
  Bisection operator()(const Bisection& alpha) const;
};

SemigroupMap identity_map(const GroupoidPtr& g);

// ---------------------------------------------------------------------------
// Finite groupoids into symmetric inverse monoids

// For connected G = Gamma x Y^2: arrow (g, y, x) becomes the partial injection
// of Gamma x Y with domain Gamma x {x} sending (h, x) to (gh, y). The point
// (h, x) has index x * |Gamma| + h. Throws InputError if G has more than one
// component.
SemigroupMap embed_connected(const GroupoidPtr& g);

// For G = sum_i t_i G_i with t_i = a_i / q, q the lcm of the denominators:
// the codomain is the full relation on [q] x X_1 x ... x X_k. Block i of [q]
// (a_i consecutive indices) applies the i-th stage map to coordinate x_i and
// leaves the rest alone. A point has mixed-radix index with j slowest and x_k
// fastest. Stage maps take component i alone (weight 1) into a full relation.
SemigroupMap embed_convex(const GroupoidPtr& g, const std::vector<SemigroupMap>& stage_maps);
// Uses embed_connected for every component.
SemigroupMap embed_convex(const GroupoidPtr& g);

// Phi(alpha) = Phi_nu(alpha) cup Phi_rho(alpha) into t cod(Phi_nu) + (1-t)
// cod(Phi_rho). The two domains must share components up to weights; the
// result's domain carries the weights t w_nu + (1-t) w_rho. t = 1 and t = 0
// return the corresponding map unchanged.
SemigroupMap embed_convex_pair(const SemigroupMap& phi_nu, const SemigroupMap& phi_rho, const Rational& t);

// embed_general from [[n]] into [[p]], read on bisections of the full
// relations. p = n + 1 is embed_step.
SemigroupMap ladder_map(std::size_t n, std::size_t p);

struct RestrictedMap {
  SemigroupMap map;        // [[H]] -> [[F']]
  Subgroupoid domain;      // H = G restricted to the chosen units
  Subgroupoid codomain;    // F' = theta(1_H) F theta(1_H)
};

// alpha -> theta(1_H) theta(alpha) theta(1_H), read in the corner F'. Throws
// InputError if theta(1_H) is not idempotent or is empty.
RestrictedMap restrict_almost_morphism(const SemigroupMap& theta, const MAlgElement& units);

// ---------------------------------------------------------------------------
// Finite index

struct TransversalSystem {
  GroupoidPtr groupoid;
  std::vector<Arrow> subgroupoid_arrows;  // sorted
  Subgroupoid sub;                        // H in normal form
  GroupoidPtr sub_ptr;                    // shares sub.groupoid
  std::vector<FullGroupElement> transversals;

  [[nodiscard]] std::size_t index() const noexcept { return transversals.size(); }
};

struct TransversalSearch {
  std::optional<TransversalSystem> system;
  std::string failure;  // why no system exists, when system is empty
  std::uint64_t nodes = 0;
};

// Backtracking over full-group elements, one unit at a time, trying cosets in
// order of their lowest arrow. Throws InputError if `h` is not a subgroupoid
// containing every unit of G.
TransversalSearch find_transversals(const GroupoidPtr& g, std::span<const Arrow> h);

// alpha_{i,j} = psi_i^-1 alpha psi_j cap H, as bisections of H's normal form.
// Asserts that entries in one row have disjoint ranges and entries in one
// column have disjoint sources.
std::vector<std::vector<Bisection>> block_components(const Bisection& alpha, const TransversalSystem& system);

// Xi(alpha) = union over (i, j) of Phi(alpha_{i,j}) x E_{i,j}, landing in
// cod(Phi) x Y_N^2. Phi must have domain H (use identity_map(system.sub_ptr)
// for the exact case).
SemigroupMap finite_index_lift(const TransversalSystem& system, const SemigroupMap& phi);

// ---------------------------------------------------------------------------
// Products

// Shared handles for G, H and G x H.
struct ProductSpace {
  GroupoidPtr left;
  GroupoidPtr right;
  GroupoidPtr whole;
  ProductGroupoid layout;

  static ProductSpace make(const GroupoidPtr& left, const GroupoidPtr& right);
  [[nodiscard]] Bisection rectangle(const Bisection& a, const Bisection& b) const;
};

struct Rectangle {
  Bisection left;
  Bisection right;
};

// Union of rectangles alpha_i x beta_i where distinct i, j have disjoint left
// sources or disjoint right sources, and likewise for ranges.
struct RectangleUnion {
  std::vector<Rectangle> parts;
};

enum class MergeOrder { forward, reverse };

[[nodiscard]] bool satisfies_rectangle_invariants(const RectangleUnion& u);
Bisection assemble(const ProductSpace& space, const RectangleUnion& u);

// Starts from singleton rectangles and greedily merges pairs that share a
// factor while the invariants keep holding. The union of the result is phi
// (asserted).
RectangleUnion rectangle_decompose(const ProductSpace& space, const Bisection& phi,
                                   MergeOrder order = MergeOrder::forward);

// Union of Phi(alpha_i) x Psi(beta_i) in cod(Phi) x cod(Psi).
Bisection product_embedding(const SemigroupMap& phi, const SemigroupMap& psi, const ProductSpace& codomain,
                            const RectangleUnion& u);

}  // namespace soficlab
