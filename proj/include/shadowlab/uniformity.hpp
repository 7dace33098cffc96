#pragma once

// Entourages for the two uniform-space backends: coordinate entourages E_K
// ("agree on the coordinates K") on configuration-like spaces, and explicit
// reflexive relations on finite point sets.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "shadowlab/semigroup.hpp"

namespace shadowlab {

struct CoordEntourage {
  /// Coordinate indices. For shift systems these are carrier elements; for
  /// action tables they index the table's coordinate labels.
  ElementSet coords;

  bool operator==(const CoordEntourage&) const = default;
};

class RelationEntourage {
 public:
  RelationEntourage() = default;
  /// Square boolean matrix over n points; must contain the diagonal.
  RelationEntourage(std::size_t n, std::vector<std::uint8_t> rel);

  static RelationEntourage diagonal(std::size_t n);
  static RelationEntourage full(std::size_t n);
  /// Diagonal plus the listed pairs and their mirrors.
  static RelationEntourage from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  std::size_t points() const noexcept { return n_; }
  bool contains(std::size_t x, std::size_t y) const { return rel_[x * n_ + y] != 0; }
  bool is_symmetric() const;
  /// Off-diagonal pairs (x, y) with x < y that belong to the relation.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  /// Every (x, y) in the relation, in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> all_pairs() const;

  void set(std::size_t x, std::size_t y, bool value) { rel_[x * n_ + y] = value ? 1 : 0; }
  const std::vector<std::uint8_t>& matrix() const noexcept { return rel_; }

  bool operator==(const RelationEntourage&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> rel_;
};

using Entourage = std::variant<CoordEntourage, RelationEntourage>;

inline Entourage coord(ElementSet k) { return CoordEntourage{std::move(k)}; }

bool is_coord(const Entourage& e) noexcept;

/// Composite E∘F = {(x,y) : exists z, (x,z) in E and (z,y) in F}.
/// Coordinate entourages compose symbolically to E_{K∩J}, which is exact on
/// full product spaces (and gives E_K∘E_K = E_K). Mixing backends throws
/// space-mismatch.
Entourage compose(const Entourage& e, const Entourage& f);
Entourage intersect(const Entourage& e, const Entourage& f);
Entourage inverse(const Entourage& e);
/// E ⊆ F. Coordinate entourages: E_K ⊆ E_J iff K ⊇ J.
bool is_subset(const Entourage& e, const Entourage& f);
bool is_symmetric(const Entourage& e);
Entourage symmetrize(const Entourage& e);
/// p-fold composite E∘E∘...∘E.
Entourage power(const Entourage& e, unsigned p);

/// Largest symmetric V found by greedy pair removal with V^p ⊆ R. Coordinate
/// entourages are idempotent, so V := R.
Entourage root(const Entourage& r, unsigned p);

}  // namespace shadowlab
