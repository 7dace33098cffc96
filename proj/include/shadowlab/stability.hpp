#pragma once

// Semiconjugacies between two actions α, β of the same carrier on the same
// finite point set: h with α_s ∘ h = h ∘ β_s, obtained by tracing β-orbits
// with α-orbits.

#include <optional>
#include <string_view>
#include <utility>

#include "shadowlab/action_table.hpp"
#include "shadowlab/shadowing.hpp"

namespace shadowlab {

/// Smallest entourage U with (α_k(x), β_k(x)) ∈ U for all k ∈ K and all x:
/// the largest agreeing coordinate set when the points carry coordinates,
/// otherwise the symmetrized hull of the observed pairs plus the diagonal.
Entourage action_distance(const ActionTable& alpha, const ActionTable& beta, const ElementSet& k_set);

struct SemiconjugacyParams {
  Entourage e;
  Entourage v;
  ElementSet k;
  Entourage w;
};

struct ConjugacyMap {
  PointMap h;
  SemiconjugacyParams params;
  /// α_s ∘ h = h ∘ β_s re-checked for every carrier element.
  bool verified = false;
  std::optional<std::pair<Element, std::size_t>> violation;
};

/// Independent check of α_s(h(x)) = h(β_s(x)); returns the first failing (s, x).
std::optional<std::pair<Element, std::size_t>> check_semiconjugacy(const ActionTable& alpha, const ActionTable& beta,
                                                                    const PointMap& h);

/// Errors: premise-unverified (V not symmetric, V∘V∘V ⊄ E, or α not
/// E-expansive), not-in-neighborhood, tracing-not-found, tracing-not-unique.
ConjugacyMap semiconjugacy_solve(const ActionTable& alpha, const ActionTable& beta, const SemiconjugacyParams& params);

struct ClosenessVerdict {
  bool ok = true;
  std::optional<std::size_t> violation;
};

/// (h(x), x) ∈ U for every point. Throws not-a-monoid for semigroup carriers.
ClosenessVerdict verify_stability_closeness(const ActionTable& space, const PointMap& h, const Entourage& u);

enum class QualityMode { injective, surjective_minimal };
std::string_view to_string(QualityMode m) noexcept;

struct QualityVerdict {
  bool ok = true;
  bool premise_verified = false;
  /// Injective mode: two points with the same image.
  std::optional<std::pair<std::size_t, std::size_t>> collision;
  /// Surjective mode: a point outside the image.
  std::optional<std::size_t> missed;
};

/// Injective mode's premise is β being E-expansive; surjective mode's premise
/// is α minimal (every α-orbit is the whole point set). With require_premise
/// an unverified premise throws premise-unverified; otherwise the verdict is
/// still computed and the premise flag reports it.
QualityVerdict verify_conjugacy_quality(const PointMap& h, const ActionTable& alpha, const ActionTable& beta,
                                        QualityMode mode, const Entourage& e, bool require_premise = false);

bool is_minimal(const ActionTable& sys);

}  // namespace shadowlab
