#include "shadowlab/symbolic.hpp"

#include <algorithm>
#include <set>

#include "shadowlab/expansivity.hpp"

namespace shadowlab {

Configuration shift_apply(const Carrier& carrier, Element s, const Configuration& x) {
  const std::size_t n = carrier.size();
  Configuration out(n, kUndefinedSymbol);
  for (Element t = 0; t < n; ++t) {
    if (auto ts = carrier.product(t, s)) out[t] = x[*ts];
  }
  return out;
}

bool is_total(const Configuration& x) {
  return std::none_of(x.begin(), x.end(), [](Symbol v) { return v == kUndefinedSymbol; });
}

bool agree_on(const Configuration& x, const Configuration& y, const ElementSet& k) {
  for (Element e : k) {
    if (x[e] != kUndefinedSymbol && y[e] != kUndefinedSymbol && x[e] != y[e]) return false;
  }
  return true;
}

std::vector<Configuration> full_shift_points(const Carrier& carrier, std::size_t alphabet_size, std::size_t cap) {
  const std::size_t n = carrier.size();
  if (alphabet_size == 0) return {};
  std::vector<Configuration> out;
  Configuration x(n, 0);
  while (true) {
    if (out.size() >= cap) throw Error(Errc::cap_exceeded, "full shift has more than " + std::to_string(cap) + " points");
    out.push_back(x);
    std::size_t i = n;
    while (i > 0 && static_cast<std::size_t>(x[i - 1]) + 1 == alphabet_size) x[--i] = 0;
    if (i == 0) break;
    ++x[i - 1];
  }
  return out;
}

// ------------------------------------------------------------------ Subshift

Subshift::Subshift(std::shared_ptr<const Carrier> carrier, std::vector<std::string> alphabet, ElementSet window,
                   std::vector<Pattern> patterns)
    : carrier_(std::move(carrier)), alphabet_(std::move(alphabet)), window_(std::move(window)), patterns_(std::move(patterns)) {
  if (!carrier_) throw Error(Errc::invalid_argument, "subshift needs a carrier");
  if (alphabet_.empty()) throw Error(Errc::invalid_argument, "alphabet must not be empty");
  for (Element w : window_) {
    if (w >= carrier_->size()) throw Error(Errc::invalid_argument, "window element outside the carrier");
  }
  for (const auto& p : patterns_) {
    if (p.size() != window_.size()) throw Error(Errc::invalid_argument, "pattern length differs from window size");
    for (Symbol v : p) {
      if (v < 0 || static_cast<std::size_t>(v) >= alphabet_.size()) {
        throw Error(Errc::invalid_argument, "pattern symbol outside the alphabet");
      }
    }
  }
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
}

namespace {

std::vector<Pattern> all_patterns(std::size_t width, std::size_t alphabet_size) {
  std::vector<Pattern> out;
  Pattern p(width, 0);
  while (true) {
    out.push_back(p);
    std::size_t i = width;
    while (i > 0 && static_cast<std::size_t>(p[i - 1]) + 1 == alphabet_size) p[--i] = 0;
    if (i == 0) break;
    ++p[i - 1];
  }
  return out;
}

}  // namespace

Subshift Subshift::full(std::shared_ptr<const Carrier> carrier, std::vector<std::string> alphabet, ElementSet window) {
  auto pats = all_patterns(window.size(), alphabet.size());
  return Subshift(std::move(carrier), std::move(alphabet), std::move(window), std::move(pats));
}

Subshift Subshift::from_forbidden(std::shared_ptr<const Carrier> carrier, std::vector<std::string> alphabet,
                                  ElementSet window, const std::vector<Pattern>& forbidden) {
  std::set<Pattern> banned(forbidden.begin(), forbidden.end());
  std::vector<Pattern> allowed;
  for (auto& p : all_patterns(window.size(), alphabet.size())) {
    if (!banned.contains(p)) allowed.push_back(std::move(p));
  }
  return Subshift(std::move(carrier), std::move(alphabet), std::move(window), std::move(allowed));
}

bool Subshift::allows(const Pattern& p) const { return std::binary_search(patterns_.begin(), patterns_.end(), p); }

std::vector<Pattern> Subshift::forbidden() const {
  std::vector<Pattern> out;
  for (auto& p : all_patterns(window_.size(), alphabet_.size())) {
    if (!allows(p)) out.push_back(std::move(p));
  }
  return out;
}

std::optional<Pattern> translate_pattern(const Carrier& carrier, const ElementSet& window, Element s,
                                         const Configuration& x) {
  Pattern p;
  p.reserve(window.size());
  for (Element w : window) {
    auto ws = carrier.product(w, s);
    if (!ws || x[*ws] == kUndefinedSymbol) return std::nullopt;
    p.push_back(x[*ws]);
  }
  return p;
}

MembershipVerdict sft_membership(const Subshift& x_space, const Configuration& x) {
  const auto& carrier = x_space.carrier();
  if (x.size() != carrier.size()) throw Error(Errc::space_mismatch, "configuration size differs from the carrier");
  MembershipVerdict v;
  for (Element s = 0; s < carrier.size(); ++s) {
    auto p = translate_pattern(carrier, x_space.window(), s, x);
    if (!p) {
      ++v.skipped;
      continue;
    }
    ++v.checked;
    if (!x_space.allows(*p)) {
      v.member = false;
      v.violation = s;
      return v;
    }
  }
  if (v.checked == 0) throw Error(Errc::window_escapes_horizon, "no translate of the window fits inside the horizon");
  return v;
}

std::vector<Configuration> enumerate_points(const Subshift& x_space, std::size_t cap) {
  const auto& carrier = x_space.carrier();
  const std::size_t n = carrier.size();
  const auto& window = x_space.window();
  // Attach each translate constraint to the largest carrier index it reads, so
  // it is checked as soon as the DFS has assigned all of its coordinates.
  std::vector<std::vector<Element>> due(n);
  for (Element s = 0; s < n; ++s) {
    std::optional<Element> last;
    bool inside = true;
    for (Element w : window) {
      auto ws = carrier.product(w, s);
      if (!ws) {
        inside = false;
        break;
      }
      last = last ? std::max(*last, *ws) : *ws;
    }
    if (!inside) continue;
    if (!last) {
      // Empty window: the constraint is the empty pattern, decided up front.
      if (!x_space.allows(Pattern{})) return {};
      continue;
    }
    due[*last].push_back(s);
  }
  std::vector<Configuration> out;
  if (n == 0) return out;
  Configuration x(n, kUndefinedSymbol);
  const auto alpha = static_cast<Symbol>(x_space.alphabet().size());
  auto dfs = [&](auto&& self, Element i) -> void {
    if (i == n) {
      if (out.size() >= cap) throw Error(Errc::cap_exceeded, "subshift has more than " + std::to_string(cap) + " points");
      out.push_back(x);
      return;
    }
    for (Symbol a = 0; a < alpha; ++a) {
      x[i] = a;
      bool ok = true;
      for (Element s : due[i]) {
        if (!x_space.allows(*translate_pattern(carrier, window, s, x))) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, i + 1);
    }
    x[i] = kUndefinedSymbol;
  };
  dfs(dfs, 0);
  return out;
}

Subshift sft_from_samples(std::shared_ptr<const Carrier> carrier, std::vector<std::string> alphabet,
                          const std::vector<Configuration>& samples, ElementSet window) {
  std::vector<Pattern> seen;
  for (const auto& x : samples) {
    for (Element s = 0; s < carrier->size(); ++s) {
      if (auto p = translate_pattern(*carrier, window, s, x)) seen.push_back(std::move(*p));
    }
  }
  if (seen.empty() && !samples.empty()) {
    throw Error(Errc::horizon_insufficient, "no translate of the window fits inside the horizon");
  }
  return Subshift(std::move(carrier), std::move(alphabet), std::move(window), std::move(seen));
}

// --------------------------------------------------------------- ShiftSystem

ShiftSystem::ShiftSystem(std::shared_ptr<const Carrier> carrier, std::vector<std::string> alphabet,
                         std::vector<Configuration> points)
    : carrier_(std::move(carrier)), alphabet_(std::move(alphabet)), points_(std::move(points)) {
  for (const auto& p : points_) {
    if (p.size() != carrier_->size() || !is_total(p)) {
      throw Error(Errc::invalid_argument, "shift system points must be total configurations on the carrier");
    }
    for (Symbol v : p) {
      if (static_cast<std::size_t>(v) >= alphabet_.size()) throw Error(Errc::invalid_argument, "symbol outside alphabet");
    }
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

ShiftSystem::ShiftSystem(const Subshift& x_space, std::size_t cap)
    : ShiftSystem(x_space.carrier_ptr(), x_space.alphabet(), enumerate_points(x_space, cap)) {}

std::optional<std::size_t> ShiftSystem::index_of(const Configuration& x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it == points_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

bool ShiftSystem::close(const Entourage& e, const Configuration& x, const Configuration& y) const {
  if (const auto* c = std::get_if<CoordEntourage>(&e)) return agree_on(x, y, c->coords);
  const auto& rel = std::get<RelationEntourage>(e);
  auto i = index_of(x);
  auto j = index_of(y);
  if (!i || !j || rel.points() != points_.size()) {
    throw Error(Errc::space_mismatch, "relation entourages apply only to enumerated points of the same system");
  }
  return rel.contains(*i, *j);
}

FullShiftExpansivity full_shift_expansivity_window(const SemigroupTable& s, std::size_t alphabet_size,
                                                   std::size_t verify_cap) {
  if (alphabet_size < 2) throw Error(Errc::invalid_argument, "full shift expansivity needs at least two symbols");
  FullShiftExpansivity out;
  const auto cover = left_cover(s);
  auto carrier = std::make_shared<Carrier>(s.carrier());
  if (cover.cover) {
    out.window = cover.cover;
    std::size_t count = 1;
    bool small = true;
    for (std::size_t i = 0; i < s.size() && small; ++i) {
      count *= alphabet_size;
      small = count <= verify_cap;
    }
    if (small) {
      std::vector<std::string> alphabet;
      for (std::size_t a = 0; a < alphabet_size; ++a) alphabet.push_back(std::to_string(a));
      ShiftSystem full(carrier, alphabet, full_shift_points(*carrier, alphabet_size));
      out.verified = is_expansivity_entourage(full, coord(*cover.cover)).expansive;
    }
    return out;
  }
  const Element outside = *cover.outside_square;
  Configuration x(s.size(), 0);
  Configuration y = x;
  y[outside] = 1;
  out.outside_square = outside;
  out.witness = std::pair{x, y};
  // Both orbits coincide: (tx)(s') = x(s't) and s't is never the element outside SS.
  bool never_separated = true;
  for (Element t = 0; t < s.size() && never_separated; ++t) {
    never_separated = shift_apply(*carrier, t, x) == shift_apply(*carrier, t, y);
  }
  out.verified = never_separated;
  return out;
}

}  // namespace shadowlab

namespace shadowlab {

ShiftSystem even_shift(std::size_t horizon) {
  auto carrier = std::make_shared<const Carrier>(truncate_free_monoid({"a"}, horizon).carrier());
  const std::size_t n = carrier->size();
  if (n >= 63) throw Error(Errc::cap_exceeded, "even shift horizon is too large to enumerate");
  std::vector<Configuration> points;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Configuration x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<Symbol>((bits >> (n - 1 - i)) & 1u);
    bool ok = true;
    std::optional<std::size_t> last_zero;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (x[i] != 0) continue;
      if (last_zero && (i - *last_zero - 1) % 2 != 0) ok = false;
      last_zero = i;
    }
    if (ok) {
      points.push_back(std::move(x));
      if (points.size() > enumeration_cap()) throw Error(Errc::cap_exceeded, "even shift exceeds the enumeration cap");
    }
  }
  return ShiftSystem(std::move(carrier), {"0", "1"}, std::move(points));
}

}  // namespace shadowlab
