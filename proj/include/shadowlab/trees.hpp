#pragma once

// Rooted trees truncated at a finite depth, their endomorphisms, Mealy
// machines, and boundary dynamics at that depth. A ray ξ at depth D is a
// compatible vertex sequence v_0, ..., v_D, identified with its last vertex.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/action_table.hpp"

namespace shadowlab {

class RootedTree {
 public:
  /// parents[n][v] = π_n(v) for v in V_{n+1}; V_0 is a single root.
  explicit RootedTree(std::vector<std::vector<std::size_t>> parents);
  /// V_n = A^n with A = {0..k-1}; a_1 is the most significant digit and
  /// π drops the last letter.
  static RootedTree regular(unsigned k, unsigned depth);

  unsigned depth() const noexcept { return static_cast<unsigned>(sizes_.size() - 1); }
  std::size_t level_size(unsigned n) const { return sizes_.at(n); }
  std::size_t parent(unsigned n, std::size_t v) const { return parents_[n - 1][v]; }
  /// Arity when the tree is regular.
  std::optional<unsigned> arity() const noexcept { return arity_; }
  std::vector<unsigned> word(unsigned n, std::size_t v) const;
  std::size_t vertex(const std::vector<unsigned>& word) const;
  /// Ancestor of v (at level n) at level m <= n.
  std::size_t ancestor(unsigned n, std::size_t v, unsigned m) const;

  bool operator==(const RootedTree&) const = default;

 private:
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::size_t> sizes_;
  std::optional<unsigned> arity_;
};

class TreeEndomorphism {
 public:
  TreeEndomorphism(std::shared_ptr<const RootedTree> tree, std::vector<PointMap> levels);
  static TreeEndomorphism identity(std::shared_ptr<const RootedTree> tree);

  const RootedTree& tree() const noexcept { return *tree_; }
  const std::shared_ptr<const RootedTree>& tree_ptr() const noexcept { return tree_; }
  unsigned depth() const noexcept { return tree_->depth(); }
  const PointMap& level(unsigned n) const { return levels_.at(n); }
  const std::vector<PointMap>& levels() const noexcept { return levels_; }
  std::vector<PointMap>& mutable_levels() noexcept { return levels_; }
  bool is_automorphism() const;

  bool operator==(const TreeEndomorphism& o) const { return levels_ == o.levels_ && *tree_ == *o.tree_; }

 private:
  std::shared_ptr<const RootedTree> tree_;
  std::vector<PointMap> levels_;
};

struct CompatibilityVerdict {
  bool ok = true;
  /// Smallest n with π_n ∘ f_{n+1} ≠ f_n ∘ π_n.
  std::optional<unsigned> offending_level;
};

CompatibilityVerdict verify_compatibility(const TreeEndomorphism& f);

/// (fg)_n = f_n ∘ g_n. Throws tree-mismatch.
TreeEndomorphism compose_endomorphisms(const TreeEndomorphism& f, const TreeEndomorphism& g);

struct MealyMachine {
  unsigned arity = 2;
  std::vector<std::string> states;
  /// transition[q][a] = τ(q, a).
  std::vector<std::vector<std::size_t>> transition;
  /// output[q][a] = σ_q(a).
  std::vector<std::vector<unsigned>> output;

  void validate() const;
  bool invertible() const;
  std::size_t state(const std::string& name) const;

  /// The 5-state machine a, b, c, d, id with a = swap, b = (a, c),
  /// c = (a, d), d = (id, b).
  static MealyMachine grigorchuk();
};

TreeEndomorphism mealy_endomorphism(const MealyMachine& m, std::size_t q, std::shared_ptr<const RootedTree> tree);
TreeEndomorphism mealy_endomorphism(const MealyMachine& m, std::size_t q, unsigned depth);
/// One endomorphism per state, in state order, on a shared tree.
std::vector<TreeEndomorphism> mealy_endomorphisms(const MealyMachine& m, unsigned depth);

struct Ray {
  std::vector<std::size_t> vertices;

  bool operator==(const Ray&) const = default;
  auto operator<=>(const Ray&) const = default;
};

Ray ray_from_leaf(const RootedTree& tree, std::size_t leaf);
Ray apply(const TreeEndomorphism& f, const Ray& xi);
/// Level m of first disagreement (distance 2^{-m}); nullopt when equal
/// (distance 0). Throws depth-mismatch.
std::optional<unsigned> boundary_distance(const Ray& xi, const Ray& eta);

struct OrbitPartition {
  /// Blocks ordered by least element; each block sorted.
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of;
  bool transitive() const noexcept { return blocks.size() == 1; }
};

/// Strongly connected components of v -> g(v) over the generators: one block
/// iff the generated semigroup is transitive on V_n.
OrbitPartition level_orbits(const std::vector<TreeEndomorphism>& gens, unsigned n);

/// {s v : s in the generated semigroup} for v in V_n.
std::vector<std::size_t> semigroup_orbit(const std::vector<TreeEndomorphism>& gens, unsigned n, std::size_t v);

struct TransitivityWitness {
  bool transitive = false;
  std::size_t from = 0;
  std::size_t to = 0;
  /// Exponent shared by all generators: σ^N is the identity on V_n.
  std::uint64_t n_exponent = 0;
  /// s = σ_{i1}^{e1} ... σ_{il}^{el}, applied right to left. Positive exponents.
  std::vector<std::pair<std::size_t, std::uint64_t>> word;
  bool verified = false;
};

/// Finds g in the generated group with g(from) = to, then rewrites it as a
/// positive word using σ^{-1} = σ^{N-1}. Throws generator-not-invertible.
TransitivityWitness semigroup_transitivity_from_group(const std::vector<TreeEndomorphism>& gens, unsigned n,
                                                      std::optional<std::pair<std::size_t, std::size_t>> pair = {});

/// Applies σ^e to a vertex of V_n by binary exponentiation.
std::size_t apply_power(const TreeEndomorphism& f, unsigned n, std::uint64_t e, std::size_t v);

/// f̄_n = f_n for n <= n0, f̄_n(p, r) = (f_{n0}(p), r) for |p| = n0 beyond.
TreeEndomorphism rho_truncate(const TreeEndomorphism& f, unsigned n0);

/// Every endomorphism of the regular tree of depth D (one local map A -> A per
/// inner vertex), in a fixed order.
std::vector<TreeEndomorphism> all_endomorphisms(unsigned k, unsigned depth, std::size_t cap = enumeration_cap());

struct RhoImage {
  std::size_t endomorphisms = 0;
  std::size_t image_size = 0;
  /// k^{n0 k^{n0}}.
  std::uint64_t bound = 0;
};

RhoImage rho_image(unsigned k, unsigned depth, unsigned n0, std::size_t cap = enumeration_cap());

/// Elements of the semigroup generated by gens, breadth-first, at most `cap`.
std::vector<TreeEndomorphism> semigroup_closure(const std::vector<TreeEndomorphism>& gens, std::size_t cap);

struct NonstabilityReport {
  unsigned n0 = 0;
  unsigned depth = 0;
  /// α-orbit sizes of the sample ray's level-n prefix, n = 0..D.
  std::vector<std::size_t> alpha_orbit_sizes;
  bool premise = false;
  /// ρ(fg) = ρ(f)ρ(g) on the first closure elements.
  bool multiplicative = false;
  std::size_t multiplicativity_pairs = 0;
  /// |ρ(S)|, computed as the semigroup generated by ρ of the generators.
  std::size_t rho_image_size = 0;
  std::uint64_t rho_bound = 0;
  std::vector<std::size_t> beta_orbit_sizes;  // per ray at depth D
  bool beta_bounded = false;
  std::size_t sample_ray = 0;
  std::size_t candidates_checked = 0;
  /// Every candidate h(ξ) hits a conflict: two s with β_s ξ equal but α_s h(ξ) different.
  bool no_semiconjugacy = false;
  /// For the first candidate: (candidate, β-point, α-image 1, α-image 2).
  std::optional<std::array<std::size_t, 4>> conflict;
  bool holds() const noexcept { return premise && multiplicative && beta_bounded && no_semiconjugacy; }
};

/// Throws premise-unverified when some α-orbit stops growing before depth D.
NonstabilityReport nonstability_witness(const std::vector<TreeEndomorphism>& gens, unsigned n0,
                                        std::size_t closure_cap = 256);

struct MinimalityVerdict {
  bool minimal = true;
  std::optional<unsigned> first_failing_level;
  std::vector<std::size_t> block_counts;  // per level 0..D
};

MinimalityVerdict minimality_check(const std::vector<TreeEndomorphism>& gens);

/// (s, s') acting as s below the vertex 0 and as s' below the vertex 1 of T_2.
TreeEndomorphism product_embedding(const TreeEndomorphism& s, const TreeEndomorphism& s_prime);

/// Distinct leaves never separated by E_{levels <= n} under the generated
/// monoid (identity included), first in lexicographic order.
std::optional<std::pair<std::size_t, std::size_t>> unseparated_pair(const std::vector<TreeEndomorphism>& gens,
                                                                    unsigned n);

/// Boundary action at depth D of the monoid freely generated by gens,
/// truncated at `horizon`; coordinates are the letters at levels 1..D.
ActionTable boundary_action(const std::vector<TreeEndomorphism>& gens, const std::vector<std::string>& labels,
                            std::size_t horizon);

/// Coordinate set for E_{levels <= n} on a boundary action.
ElementSet levels_up_to(unsigned n);

}  // namespace shadowlab
