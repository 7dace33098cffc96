#include "shadowlab/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace shadowlab {

// ---------------------------------------------------------------- ElementSet

ElementSet::ElementSet(std::initializer_list<Element> elems) : ElementSet(std::vector<Element>(elems)) {}

ElementSet::ElementSet(std::vector<Element> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool ElementSet::contains(Element e) const { return std::binary_search(elems_.begin(), elems_.end(), e); }

bool ElementSet::is_subset_of(const ElementSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

void ElementSet::insert(Element e) {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
  if (it == elems_.end() || *it != e) elems_.insert(it, e);
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
                 std::back_inserter(out.elems_));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
                        std::back_inserter(out.elems_));
  return out;
}

// ------------------------------------------------------------------- Carrier

Carrier::Carrier(std::vector<std::string> labels, std::vector<std::int32_t> table,
                 std::optional<std::size_t> horizon, std::vector<std::size_t> lengths, ElementSet generators)
    : labels_(std::move(labels)),
      table_(std::move(table)),
      horizon_(horizon),
      lengths_(std::move(lengths)),
      generators_(std::move(generators)) {
  const std::size_t n = labels_.size();
  if (table_.size() != n * n || lengths_.size() != n) {
    throw Error(Errc::invalid_argument, "carrier table shape does not match its element count");
  }
  for (auto v : table_) {
    if (v != kUndefined && (v < 0 || static_cast<std::size_t>(v) >= n)) {
      throw Error(Errc::invalid_argument, "carrier table entry out of range");
    }
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw Error(Errc::label_collision, "duplicate element label '" + l + "'");
  }
  for (Element e = 0; e < n; ++e) {
    bool left = true;
    bool right = true;
    for (Element t = 0; t < n; ++t) {
      left = left && raw_product(e, t) == static_cast<std::int32_t>(t);
      right = right && raw_product(t, e) == static_cast<std::int32_t>(t);
    }
    if (left) left_identities_.push_back(e);
    if (left && right && !identity_) identity_ = e;
  }
}

ElementSet Carrier::product(const ElementSet& a, const ElementSet& b) const {
  std::vector<Element> out;
  for (Element x : a) {
    for (Element y : b) {
      if (auto p = product(x, y)) out.push_back(*p);
    }
  }
  return ElementSet(std::move(out));
}

std::optional<Element> Carrier::find(std::string_view label) const {
  for (Element e = 0; e < size(); ++e) {
    if (labels_[e] == label) return e;
  }
  // The empty word prints as "e"; accept the usual epsilon spellings too.
  if (horizon_ && (label == "ε" || label == "eps" || label.empty())) {
    for (Element e = 0; e < size(); ++e) {
      if (lengths_[e] == 0) return e;
    }
  }
  return std::nullopt;
}

Element Carrier::at(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw Error(Errc::invalid_argument, "unknown carrier element '" + std::string(label) + "'");
}

ElementSet Carrier::parse_set(const std::vector<std::string>& labels) const {
  std::vector<Element> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(at(l));
  return ElementSet(std::move(out));
}

ElementSet Carrier::all() const {
  std::vector<Element> out(size());
  std::iota(out.begin(), out.end(), Element{0});
  return ElementSet(std::move(out));
}

ElementSet Carrier::ball(std::size_t radius) const {
  std::vector<Element> out;
  for (Element e = 0; e < size(); ++e) {
    if (lengths_[e] <= radius) out.push_back(e);
  }
  return ElementSet(std::move(out));
}

// ------------------------------------------------------------ SemigroupTable

namespace detail {

void verify_associative(const std::vector<std::int32_t>& t, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto ij = static_cast<std::size_t>(t[i * n + j]);
      for (std::size_t k = 0; k < n; ++k) {
        const auto jk = static_cast<std::size_t>(t[j * n + k]);
        if (t[ij * n + k] != t[i * n + jk]) {
          throw Error(Errc::associativity_violation, "(" + std::to_string(i) + "*" + std::to_string(j) + ")*" +
                                                         std::to_string(k) + " differs from " + std::to_string(i) +
                                                         "*(" + std::to_string(j) + "*" + std::to_string(k) + ")");
        }
      }
    }
  }
}

std::string join_word(const std::string& prefix, const std::string& letter, bool multi_char) {
  return multi_char ? prefix + "." + letter : prefix + letter;
}

}  // namespace detail

namespace {

std::vector<std::int32_t> flatten(const std::vector<std::vector<Element>>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::int32_t> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(Errc::invalid_argument, "multiplication table must be square");
    for (Element v : row) {
      if (v >= n) throw Error(Errc::invalid_argument, "multiplication table entry out of range");
      flat.push_back(static_cast<std::int32_t>(v));
    }
  }
  return flat;
}

Carrier make_table_carrier(std::vector<std::string> labels, const std::vector<std::vector<Element>>& rows,
                           ElementSet generators) {
  if (labels.empty()) throw Error(Errc::invalid_argument, "a semigroup needs at least one element");
  if (labels.size() != rows.size()) throw Error(Errc::invalid_argument, "one table row per element is required");
  auto flat = flatten(rows);
  detail::verify_associative(flat, rows.size());
  std::vector<std::size_t> lengths(labels.size(), 0);
  return Carrier(std::move(labels), std::move(flat), std::nullopt, std::move(lengths), std::move(generators));
}

}  // namespace

SemigroupTable::SemigroupTable(std::vector<std::string> labels, const std::vector<std::vector<Element>>& rows,
                               ElementSet generators)
    : carrier_(make_table_carrier(std::move(labels), rows, std::move(generators))) {}

std::vector<std::vector<Element>> SemigroupTable::rows() const {
  std::vector<std::vector<Element>> out(size(), std::vector<Element>(size()));
  for (Element a = 0; a < size(); ++a) {
    for (Element b = 0; b < size(); ++b) out[a][b] = (*this)(a, b);
  }
  return out;
}

StructuralReport structural_scan(const SemigroupTable& s) {
  StructuralReport r;
  const std::size_t n = s.size();
  for (Element x = 0; x < n; ++x) {
    bool li = true, ri = true, lz = true, rz = true;
    for (Element t = 0; t < n; ++t) {
      li = li && s(x, t) == t;
      ri = ri && s(t, x) == t;
      lz = lz && s(x, t) == x;
      rz = rz && s(t, x) == x;
    }
    if (li) r.left_identities.push_back(x);
    if (ri) r.right_identities.push_back(x);
    if (li && ri) r.identities.push_back(x);
    if (lz) r.left_zeros.push_back(x);
    if (rz) r.right_zeros.push_back(x);
    if (lz && rz) r.zeros.push_back(x);
  }
  return r;
}

LeftCover left_cover(const SemigroupTable& s) {
  const std::size_t n = s.size();
  const auto full = s.carrier().all();
  const auto square = s.carrier().product(full, full);
  if (square.size() != n) {
    for (Element e = 0; e < n; ++e) {
      if (!square.contains(e)) return LeftCover{std::nullopt, e};
    }
  }
  // Exhaustive search by size; combinations are visited in lexicographic order.
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Element> pick(k);
    std::iota(pick.begin(), pick.end(), Element{0});
    while (true) {
      std::vector<bool> hit(n, false);
      std::size_t count = 0;
      for (Element a : pick) {
        for (Element t = 0; t < n; ++t) {
          const Element p = s(a, t);
          if (!hit[p]) {
            hit[p] = true;
            ++count;
          }
        }
      }
      if (count == n) return LeftCover{ElementSet(pick), std::nullopt};
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return {};  // unreachable: K = S always covers once SS = S
}

SemigroupTable glued_union(const std::vector<SemigroupTable>& parts) {
  if (parts.size() < 2) throw Error(Errc::invalid_argument, "glued union needs at least two parts");
  std::vector<std::string> labels;
  std::vector<std::size_t> part_of;
  std::vector<Element> offset;
  std::set<std::string> seen;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    offset.push_back(labels.size());
    for (const auto& l : parts[p].labels()) {
      if (!seen.insert(l).second) throw Error(Errc::label_collision, "label '" + l + "' appears in two parts");
      labels.push_back(l);
      part_of.push_back(p);
    }
  }
  std::string zero = "z";
  while (seen.contains(zero)) zero += "'";
  labels.push_back(zero);

  const std::size_t n = labels.size();
  const Element z = n - 1;
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n, z));
  for (Element a = 0; a < z; ++a) {
    for (Element b = 0; b < z; ++b) {
      if (part_of[a] != part_of[b]) continue;
      const auto& part = parts[part_of[a]];
      const Element base = offset[part_of[a]];
      rows[a][b] = base + part(a - base, b - base);
    }
  }
  return SemigroupTable(std::move(labels), rows);
}

SemigroupTable direct_product(const SemigroupTable& a, const SemigroupTable& b) {
  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::string> labels;
  for (Element i = 0; i < na; ++i) {
    for (Element j = 0; j < nb; ++j) labels.push_back("(" + a.labels()[i] + "," + b.labels()[j] + ")");
  }
  std::vector<std::vector<Element>> rows(na * nb, std::vector<Element>(na * nb));
  for (Element x = 0; x < na * nb; ++x) {
    for (Element y = 0; y < na * nb; ++y) rows[x][y] = a(x / nb, y / nb) * nb + b(x % nb, y % nb);
  }
  return SemigroupTable(std::move(labels), rows);
}

// ----------------------------------------------------------- TruncatedMonoid

namespace {

using Word = std::vector<std::size_t>;

// Lexicographically least representative of the trace (partially commutative
// class) of `w`: repeatedly extract the smallest letter that can be moved to
// the front.
Word normal_form(Word w, const std::vector<std::vector<bool>>& commute) {
  Word out;
  out.reserve(w.size());
  while (!w.empty()) {
    std::size_t best = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool movable = true;
      for (std::size_t j = 0; j < i && movable; ++j) {
        movable = w[j] != w[i] && commute[w[j]][w[i]];
      }
      if (movable && (best == w.size() || w[i] < w[best])) best = i;
    }
    out.push_back(w[best]);
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

}  // namespace

TruncatedMonoid::TruncatedMonoid(std::vector<std::string> generators, std::size_t horizon,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& commuting, std::size_t cap)
    : generators_(std::move(generators)), horizon_(horizon), commuting_(commuting) {
  const std::size_t k = generators_.size();
  if (k == 0) throw Error(Errc::invalid_argument, "a truncated monoid needs at least one generator");
  std::set<std::string> seen;
  bool multi_char = false;
  for (const auto& g : generators_) {
    if (g.empty() || g == "e") throw Error(Errc::invalid_argument, "generator label '" + g + "' is reserved");
    if (!seen.insert(g).second) throw Error(Errc::label_collision, "duplicate generator '" + g + "'");
    multi_char = multi_char || g.size() != 1;
  }
  std::vector<std::vector<bool>> commute(k, std::vector<bool>(k, false));
  for (auto [a, b] : commuting_) {
    if (a >= k || b >= k) throw Error(Errc::invalid_argument, "commutation relation names an unknown generator");
    commute[a][b] = commute[b][a] = true;
  }

  // Shortlex enumeration of normal forms, level by level.
  std::map<Word, Element> index;
  std::vector<Word> frontier{Word{}};
  words_.push_back(Word{});
  index.emplace(Word{}, 0);
  for (std::size_t len = 1; len <= horizon_; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (std::size_t g = 0; g < k; ++g) {
        Word cand = w;
        cand.push_back(g);
        if (normal_form(cand, commute) != cand) continue;
        if (words_.size() >= cap) {
          throw Error(Errc::cap_exceeded, "truncated monoid exceeds " + std::to_string(cap) + " elements");
        }
        index.emplace(cand, words_.size());
        words_.push_back(cand);
        next.push_back(std::move(cand));
      }
    }
    frontier = std::move(next);
  }

  const std::size_t n = words_.size();
  std::vector<std::string> labels;
  std::vector<std::size_t> lengths;
  std::vector<Element> gens;
  for (Element e = 0; e < n; ++e) {
    const auto& w = words_[e];
    std::string label = w.empty() ? "e" : "";
    for (std::size_t i = 0; i < w.size(); ++i) {
      label = i == 0 ? generators_[w[i]] : detail::join_word(label, generators_[w[i]], multi_char);
    }
    labels.push_back(std::move(label));
    lengths.push_back(w.size());
    if (w.size() == 1) gens.push_back(e);
  }
  std::vector<std::int32_t> table(n * n, Carrier::kUndefined);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (words_[a].size() + words_[b].size() > horizon_) continue;
      Word cat = words_[a];
      cat.insert(cat.end(), words_[b].begin(), words_[b].end());
      table[a * n + b] = static_cast<std::int32_t>(index.at(normal_form(cat, commute)));
    }
  }
  carrier_ = Carrier(std::move(labels), std::move(table), horizon_, std::move(lengths), ElementSet(gens));
}

TruncatedMonoid truncate_free_monoid(std::vector<std::string> generators, std::size_t horizon,
                                     const std::vector<std::string>& relations, std::size_t cap) {
  std::vector<std::pair<std::size_t, std::size_t>> commuting;
  auto gen_index = [&](char c) -> std::size_t {
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (generators[i].size() == 1 && generators[i][0] == c) return i;
    }
    throw Error(Errc::invalid_argument, std::string("relation names unknown generator '") + c + "'");
  };
  for (const auto& rel : relations) {
    std::string r;
    for (char c : rel) {
      if (c != ' ') r.push_back(c);
    }
    if (r.size() != 5 || r[2] != '=' || r[0] != r[4] || r[1] != r[3] || r[0] == r[1]) {
      throw Error(Errc::invalid_argument,
                  "only commutation relations of the form xy=yx are supported, got '" + rel + "'");
    }
    commuting.emplace_back(gen_index(r[0]), gen_index(r[1]));
  }
  return TruncatedMonoid(std::move(generators), horizon, commuting, cap);
}

// ------------------------------------------------------------------ families

namespace families {

SemigroupTable trivial_monoid(std::string label) { return SemigroupTable({std::move(label)}, {{0}}); }

SemigroupTable cyclic_group(std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_argument, "cyclic group order must be positive");
  std::vector<std::string> labels;
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
  for (Element i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g" + std::to_string(i)));
    for (Element j = 0; j < n; ++j) rows[i][j] = (i + j) % n;
  }
  return SemigroupTable(std::move(labels), rows);
}

SemigroupTable right_zero(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
  for (Element i = 0; i < n; ++i) {
    labels.push_back("r" + std::to_string(i));
    for (Element j = 0; j < n; ++j) rows[i][j] = j;
  }
  return SemigroupTable(std::move(labels), rows);
}

SemigroupTable left_zero(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
  for (Element i = 0; i < n; ++i) {
    labels.push_back("l" + std::to_string(i));
    for (Element j = 0; j < n; ++j) rows[i][j] = i;
  }
  return SemigroupTable(std::move(labels), rows);
}

SemigroupTable null_semigroup(std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_argument, "null semigroup needs at least one element");
  std::vector<std::string> labels;
  for (Element i = 0; i + 1 < n; ++i) labels.push_back("n" + std::to_string(i));
  labels.push_back("z");
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n, n - 1));
  return SemigroupTable(std::move(labels), rows);
}

SemigroupTable saturating_monoid(std::size_t top) {
  const std::size_t n = top + 1;
  std::vector<std::string> labels;
  std::vector<std::vector<Element>> rows(n, std::vector<Element>(n));
  for (Element i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "e" : std::string(i, 'a'));
    for (Element j = 0; j < n; ++j) rows[i][j] = std::min(i + j, top);
  }
  return SemigroupTable(std::move(labels), rows, top > 0 ? ElementSet{1} : ElementSet{});
}

SemigroupTable two_element_semilattice() { return SemigroupTable({"0", "1"}, {{0, 0}, {0, 1}}); }

}  // namespace families

}  // namespace shadowlab
