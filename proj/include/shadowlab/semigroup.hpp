#pragma once

// Finite semigroup tables and horizon-truncated finitely generated monoids.
//
// Every dynamical computation in the library is indexed by a Carrier: a
// finite list of elements with a (possibly partial) multiplication table.
// A SemigroupTable yields a total carrier. A TruncatedMonoid yields the words
// of length <= L over its generators; products whose length would exceed L are
// undefined, and downstream checks skip them rather than fail.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shadowlab/error.hpp"

namespace shadowlab {

using Element = std::size_t;

/// Sorted, duplicate-free list of carrier elements.
class ElementSet {
 public:
  ElementSet() = default;
  ElementSet(std::initializer_list<Element> elems);
  explicit ElementSet(std::vector<Element> elems);

  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  bool contains(Element e) const;
  bool is_subset_of(const ElementSet& other) const;

  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }
  Element operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Element>& elements() const noexcept { return elems_; }

  void insert(Element e);

  friend ElementSet set_union(const ElementSet& a, const ElementSet& b);
  friend ElementSet set_intersection(const ElementSet& a, const ElementSet& b);

  bool operator==(const ElementSet&) const = default;
  auto operator<=>(const ElementSet&) const = default;

 private:
  std::vector<Element> elems_;
};

class Carrier {
 public:
  static constexpr std::int32_t kUndefined = -1;

  Carrier() = default;
  /// `table` is row-major n*n with kUndefined marking out-of-horizon products.
  /// `lengths` are word lengths (all zero for finite tables).
  Carrier(std::vector<std::string> labels, std::vector<std::int32_t> table,
          std::optional<std::size_t> horizon, std::vector<std::size_t> lengths,
          ElementSet generators);

  std::size_t size() const noexcept { return labels_.size(); }
  bool is_total() const noexcept { return !horizon_.has_value(); }
  std::optional<std::size_t> horizon() const noexcept { return horizon_; }

  std::optional<Element> product(Element a, Element b) const {
    const auto v = table_[a * size() + b];
    if (v == kUndefined) return std::nullopt;
    return static_cast<Element>(v);
  }
  std::int32_t raw_product(Element a, Element b) const { return table_[a * size() + b]; }

  /// Elementwise products {a*b : a in A, b in B}, skipping undefined ones.
  ElementSet product(const ElementSet& a, const ElementSet& b) const;

  std::size_t length(Element e) const { return lengths_[e]; }
  const std::string& label(Element e) const { return labels_[e]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Element> find(std::string_view label) const;
  /// Like find() but throws invalid_argument for an unknown label.
  Element at(std::string_view label) const;
  ElementSet parse_set(const std::vector<std::string>& labels) const;

  const ElementSet& generators() const noexcept { return generators_; }
  std::optional<Element> identity() const noexcept { return identity_; }
  const std::vector<Element>& left_identities() const noexcept { return left_identities_; }
  ElementSet all() const;
  /// Elements of word length <= radius (the whole carrier for finite tables).
  ElementSet ball(std::size_t radius) const;

  bool operator==(const Carrier&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::int32_t> table_;
  std::optional<std::size_t> horizon_;
  std::vector<std::size_t> lengths_;
  ElementSet generators_;
  std::optional<Element> identity_;
  std::vector<Element> left_identities_;
};

/// A finite semigroup given by its full multiplication table. Construction
/// verifies associativity over all n^3 triples.
class SemigroupTable {
 public:
  SemigroupTable(std::vector<std::string> labels, const std::vector<std::vector<Element>>& rows,
                 ElementSet generators = {});

  std::size_t size() const noexcept { return carrier_.size(); }
  Element operator()(Element a, Element b) const {
    return static_cast<Element>(carrier_.raw_product(a, b));
  }
  const std::vector<std::string>& labels() const noexcept { return carrier_.labels(); }
  std::optional<Element> identity() const noexcept { return carrier_.identity(); }
  bool is_monoid() const noexcept { return carrier_.identity().has_value(); }
  const Carrier& carrier() const noexcept { return carrier_; }
  std::vector<std::vector<Element>> rows() const;

 private:
  Carrier carrier_;
};

/// Closes a set of seed elements under a multiplication rule and returns the
/// generated subsemigroup as a table. Elements are labelled by their shortlex
/// first word over the generator labels.
template <class T, class Mul>
SemigroupTable close_generators(const std::vector<T>& gens, const std::vector<std::string>& gen_labels,
                                Mul&& mul, std::size_t cap = enumeration_cap());

struct StructuralReport {
  std::vector<Element> left_identities;
  std::vector<Element> right_identities;
  std::vector<Element> identities;
  std::vector<Element> left_zeros;
  std::vector<Element> right_zeros;
  std::vector<Element> zeros;
};

StructuralReport structural_scan(const SemigroupTable& s);

/// Either the lexicographically least minimum-size K with KS = S, or an
/// element outside SS witnessing that none exists.
struct LeftCover {
  std::optional<ElementSet> cover;
  std::optional<Element> outside_square;
};

LeftCover left_cover(const SemigroupTable& s);

/// Disjoint union of the parts plus a fresh zero z; cross-part products are z.
SemigroupTable glued_union(const std::vector<SemigroupTable>& parts);

SemigroupTable direct_product(const SemigroupTable& a, const SemigroupTable& b);

/// Words of length <= horizon over `generators`, optionally modulo
/// commutation relations between generators (a partially commutative monoid).
class TruncatedMonoid {
 public:
  TruncatedMonoid(std::vector<std::string> generators, std::size_t horizon,
                  const std::vector<std::pair<std::size_t, std::size_t>>& commuting = {},
                  std::size_t cap = enumeration_cap());

  const Carrier& carrier() const noexcept { return carrier_; }
  const std::vector<std::string>& generator_labels() const noexcept { return generators_; }
  std::size_t horizon() const noexcept { return horizon_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& commuting() const noexcept { return commuting_; }
  /// Normal-form letter sequence of each element.
  const std::vector<std::vector<std::size_t>>& words() const noexcept { return words_; }

 private:
  std::vector<std::string> generators_;
  std::size_t horizon_;
  std::vector<std::pair<std::size_t, std::size_t>> commuting_;
  std::vector<std::vector<std::size_t>> words_;
  Carrier carrier_;
};

/// `relations` accepts only commutations of single-letter generators, "ab=ba".
TruncatedMonoid truncate_free_monoid(std::vector<std::string> generators, std::size_t horizon,
                                     const std::vector<std::string>& relations = {},
                                     std::size_t cap = enumeration_cap());

/// Small semigroup families used by the catalog, tests and CLI.
namespace families {
SemigroupTable trivial_monoid(std::string label = "e");
SemigroupTable cyclic_group(std::size_t n);
SemigroupTable right_zero(std::size_t n);
SemigroupTable left_zero(std::size_t n);
/// n elements, all products equal to the last element z.
SemigroupTable null_semigroup(std::size_t n);
/// {1, a, ..., a^top} with a^i a^j = a^min(i+j, top): the quotient of N that
/// identifies every n >= top.
SemigroupTable saturating_monoid(std::size_t top);
/// {0, 1} under multiplication.
SemigroupTable two_element_semilattice();
}  // namespace families

// ---------------------------------------------------------------------------

namespace detail {
void verify_associative(const std::vector<std::int32_t>& table, std::size_t n);
std::string join_word(const std::string& prefix, const std::string& letter, bool multi_char);
}  // namespace detail

template <class T, class Mul>
SemigroupTable close_generators(const std::vector<T>& gens, const std::vector<std::string>& gen_labels,
                                Mul&& mul, std::size_t cap) {
  if (gens.empty()) throw Error(Errc::invalid_argument, "close_generators needs at least one seed");
  if (gens.size() != gen_labels.size()) {
    throw Error(Errc::invalid_argument, "one label per seed element is required");
  }
  bool multi_char = false;
  for (const auto& l : gen_labels) multi_char = multi_char || l.size() != 1;

  std::vector<T> elems;
  std::vector<std::string> labels;
  std::map<T, Element> index;
  std::vector<Element> gen_index;
  auto admit = [&](const T& value, std::string label) -> Element {
    auto [it, inserted] = index.try_emplace(value, elems.size());
    if (inserted) {
      if (elems.size() >= cap) {
        throw Error(Errc::cap_exceeded, "closure grew past " + std::to_string(cap) + " elements");
      }
      elems.push_back(value);
      labels.push_back(std::move(label));
    }
    return it->second;
  };
  for (std::size_t i = 0; i < gens.size(); ++i) gen_index.push_back(admit(gens[i], gen_labels[i]));

  // Right multiplication by generators reaches every word.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      T next = mul(elems[i], gens[g]);
      if (!index.contains(next)) admit(next, detail::join_word(labels[i], gen_labels[g], multi_char));
    }
  }

  const std::size_t n = elems.size();
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(mul(elems[a], elems[b]));
      if (it == index.end()) {
        throw Error(Errc::associativity_violation,
                    "product " + labels[a] + "*" + labels[b] + " escapes the right-generator closure");
      }
      rows[a][b] = it->second;
    }
  }
  return SemigroupTable(std::move(labels), rows, ElementSet(gen_index));
}

}  // namespace shadowlab
