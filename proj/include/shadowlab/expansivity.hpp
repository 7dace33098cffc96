#pragma once

// Expansivity and uniform expansivity over any system exposing
//   carrier(), points(), act(s, p), close(E, p, q).
// The quantifier "there is s in S" ranges over a finite scope of carrier
// elements (the horizon ball).

#include <concepts>
#include <optional>
#include <utility>
#include <vector>

#include "shadowlab/semigroup.hpp"
#include "shadowlab/uniformity.hpp"

namespace shadowlab {

template <class S>
concept DynamicalSystem = requires(const S& sys, Element s, const typename S::Point& p, const Entourage& e) {
  { sys.carrier() } -> std::convertible_to<const Carrier&>;
  { sys.points() } -> std::convertible_to<const std::vector<typename S::Point>&>;
  { sys.act(s, p) } -> std::convertible_to<typename S::Point>;
  { sys.close(e, p, p) } -> std::convertible_to<bool>;
};

/// images[s][i] = act(scope[s], points[i]).
template <DynamicalSystem Sys>
std::vector<std::vector<typename Sys::Point>> orbit_images(const Sys& sys, const ElementSet& scope) {
  std::vector<std::vector<typename Sys::Point>> images;
  images.reserve(scope.size());
  for (Element s : scope) {
    auto& row = images.emplace_back();
    row.reserve(sys.points().size());
    for (const auto& p : sys.points()) row.push_back(sys.act(s, p));
  }
  return images;
}

struct ExpansivityVerdict {
  bool expansive = true;
  /// Indices into points() of the first pair never separated within the scope.
  std::optional<std::pair<std::size_t, std::size_t>> inseparable;
  std::size_t pairs_checked = 0;
  ElementSet scope;
};

template <DynamicalSystem Sys>
ExpansivityVerdict is_expansivity_entourage(const Sys& sys, const Entourage& e, const ElementSet& scope) {
  ExpansivityVerdict v;
  v.scope = scope;
  const auto images = orbit_images(sys, scope);
  const std::size_t n = sys.points().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++v.pairs_checked;
      bool separated = false;
      for (std::size_t s = 0; s < images.size() && !separated; ++s) {
        separated = !sys.close(e, images[s][i], images[s][j]);
      }
      if (!separated) {
        v.expansive = false;
        v.inseparable = std::pair{i, j};
        return v;
      }
    }
  }
  return v;
}

template <DynamicalSystem Sys>
ExpansivityVerdict is_expansivity_entourage(const Sys& sys, const Entourage& e) {
  return is_expansivity_entourage(sys, e, sys.carrier().all());
}

/// Greedy K0 inside the scope such that (sx, sy) in E for all s in K0 forces
/// (x, y) in U. Each step adds the element separating the most still-open
/// pairs (smallest index on ties). Throws horizon-insufficient if a pair
/// outside U is never separated.
template <DynamicalSystem Sys>
ElementSet uniform_expansivity_set(const Sys& sys, const Entourage& e, const Entourage& u, const ElementSet& scope) {
  const auto& pts = sys.points();
  const auto images = orbit_images(sys, scope);
  // separators[p] = scope positions s with (sx, sy) not in E, for each open pair.
  std::vector<std::vector<std::size_t>> separators;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j || sys.close(u, pts[i], pts[j])) continue;
      std::vector<std::size_t> seps;
      for (std::size_t s = 0; s < images.size(); ++s) {
        if (!sys.close(e, images[s][i], images[s][j])) seps.push_back(s);
      }
      if (seps.empty()) {
        throw Error(Errc::horizon_insufficient, "points " + std::to_string(i) + " and " + std::to_string(j) +
                                                    " are outside U but never E-separated within the scope");
      }
      separators.push_back(std::move(seps));
    }
  }
  std::vector<bool> covered(separators.size(), false);
  std::size_t open = separators.size();
  std::vector<Element> chosen;
  while (open > 0) {
    std::vector<std::size_t> gain(images.size(), 0);
    for (std::size_t p = 0; p < separators.size(); ++p) {
      if (covered[p]) continue;
      for (auto s : separators[p]) ++gain[s];
    }
    std::size_t best = 0;
    for (std::size_t s = 1; s < gain.size(); ++s) {
      if (gain[s] > gain[best]) best = s;
    }
    chosen.push_back(scope[best]);
    for (std::size_t p = 0; p < separators.size(); ++p) {
      if (covered[p]) continue;
      for (auto s : separators[p]) {
        if (s == best) {
          covered[p] = true;
          --open;
          break;
        }
      }
    }
  }
  return ElementSet(std::move(chosen));
}

}  // namespace shadowlab
