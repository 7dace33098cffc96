#pragma once

// Configurations x : S -> A, the shift (sx)(s') = x(s's), subshifts of finite
// type presented by a window W and allowed patterns P, and shift systems
// (a carrier plus an explicit enumerated point set).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/semigroup.hpp"
#include "shadowlab/uniformity.hpp"

namespace shadowlab {

using Symbol = std::int16_t;
inline constexpr Symbol kUndefinedSymbol = -1;

/// Symbol per carrier element (indexed like the carrier). kUndefinedSymbol
/// marks coordinates that fell outside the horizon after shifting.
using Configuration = std::vector<Symbol>;

Configuration shift_apply(const Carrier& carrier, Element s, const Configuration& x);
bool is_total(const Configuration& x);

/// Agreement on the coordinates K wherever both configurations are defined.
bool agree_on(const Configuration& x, const Configuration& y, const ElementSet& k);

/// Every configuration over the carrier, lexicographic order.
std::vector<Configuration> full_shift_points(const Carrier& carrier, std::size_t alphabet_size,
                                             std::size_t cap = enumeration_cap());

using Pattern = std::vector<Symbol>;

class Subshift {
 public:
  /// `patterns` are assignments W -> A listed in window order; they are sorted
  /// and deduplicated.
  Subshift(std::shared_ptr<const Carrier> carrier, std::vector<std::string> alphabet, ElementSet window,
           std::vector<Pattern> patterns);

  static Subshift full(std::shared_ptr<const Carrier> carrier, std::vector<std::string> alphabet, ElementSet window);
  static Subshift from_forbidden(std::shared_ptr<const Carrier> carrier, std::vector<std::string> alphabet,
                                 ElementSet window, const std::vector<Pattern>& forbidden);

  const Carrier& carrier() const noexcept { return *carrier_; }
  const std::shared_ptr<const Carrier>& carrier_ptr() const noexcept { return carrier_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const ElementSet& window() const noexcept { return window_; }
  const std::vector<Pattern>& patterns() const noexcept { return patterns_; }
  bool allows(const Pattern& p) const;
  /// Complement of P in A^W, in canonical order.
  std::vector<Pattern> forbidden() const;

 private:
  std::shared_ptr<const Carrier> carrier_;
  std::vector<std::string> alphabet_;
  ElementSet window_;
  std::vector<Pattern> patterns_;
};

/// The pattern (sx)|_W, or nullopt when some w·s is out of horizon or x is
/// undefined there.
std::optional<Pattern> translate_pattern(const Carrier& carrier, const ElementSet& window, Element s,
                                         const Configuration& x);

struct MembershipVerdict {
  bool member = true;
  std::optional<Element> violation;
  std::size_t checked = 0;
  std::size_t skipped = 0;
};

/// Checks (sx)|_W ∈ P for every s whose translate window is inside the
/// horizon. Throws window-escapes-horizon when no translate is checkable.
MembershipVerdict sft_membership(const Subshift& x_space, const Configuration& x);

/// Points of the subshift on the carrier, in lexicographic order.
std::vector<Configuration> enumerate_points(const Subshift& x_space, std::size_t cap = enumeration_cap());

/// SFT with window W and P := every fully defined translate pattern (sx)|_W
/// observed on the samples.
Subshift sft_from_samples(std::shared_ptr<const Carrier> carrier, std::vector<std::string> alphabet,
                          const std::vector<Configuration>& samples, ElementSet window);

/// A shift-invariant point set over a carrier, with the shift action.
class ShiftSystem {
 public:
  using Point = Configuration;

  ShiftSystem(std::shared_ptr<const Carrier> carrier, std::vector<std::string> alphabet,
              std::vector<Configuration> points);
  explicit ShiftSystem(const Subshift& x_space, std::size_t cap = enumeration_cap());

  const Carrier& carrier() const noexcept { return *carrier_; }
  const std::shared_ptr<const Carrier>& carrier_ptr() const noexcept { return carrier_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<Configuration>& points() const noexcept { return points_; }
  std::optional<std::size_t> index_of(const Configuration& x) const;
  bool contains(const Configuration& x) const { return index_of(x).has_value(); }

  Configuration act(Element s, const Configuration& x) const { return shift_apply(*carrier_, s, x); }
  /// Coordinate entourages compare on K where both sides are defined. Relation
  /// entourages apply to enumerated points only.
  bool close(const Entourage& e, const Configuration& x, const Configuration& y) const;
  std::size_t coordinate_count() const noexcept { return carrier_->size(); }

 private:
  std::shared_ptr<const Carrier> carrier_;
  std::vector<std::string> alphabet_;
  std::vector<Configuration> points_;
};

/// The one-sided even shift over ℕ truncated at `horizon`: binary words in
/// which every block of 1s with a 0 on both sides has even length. Not of
/// finite type.
ShiftSystem even_shift(std::size_t horizon);

/// Verdict of the full-shift expansivity characterization: E_K with KS = S is
/// an expansivity entourage, and without such K every coordinate entourage
/// fails on a pair differing at one element outside SS.
struct FullShiftExpansivity {
  std::optional<ElementSet> window;
  std::optional<std::pair<Configuration, Configuration>> witness;
  std::optional<Element> outside_square;
  /// Set when the full shift was small enough to confirm the verdict pairwise.
  std::optional<bool> verified;
};

FullShiftExpansivity full_shift_expansivity_window(const SemigroupTable& s, std::size_t alphabet_size,
                                                   std::size_t verify_cap = 1u << 12);

}  // namespace shadowlab
