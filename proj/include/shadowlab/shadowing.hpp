#pragma once

// Pseudo-orbits and tracing. A pseudo-orbit is a family (x_s) indexed by the
// carrier; it is a (K,V)-pseudo-orbit when (k x_s, x_{ks}) ∈ V for all k ∈ K
// and s with ks inside the horizon, and it is U-traced by x when
// (sx, x_s) ∈ U for every s.

#include <optional>
#include <utility>
#include <vector>

#include "shadowlab/action_table.hpp"
#include "shadowlab/expansivity.hpp"
#include "shadowlab/rng.hpp"
#include "shadowlab/symbolic.hpp"

namespace shadowlab {

template <class P>
struct PseudoOrbit {
  /// family[s] = x_s, indexed by carrier element.
  std::vector<P> family;

  bool operator==(const PseudoOrbit&) const = default;
};

struct PseudoOrbitVerdict {
  bool ok = true;
  /// First failing (k, s), scanning k in K order and then s.
  std::optional<std::pair<Element, Element>> violation;
  std::size_t checked = 0;
  /// Pairs (k, s) skipped because ks is outside the horizon.
  std::size_t skipped = 0;
};

struct TraceVerdict {
  bool traced = true;
  std::optional<Element> violation;
  std::size_t checked = 0;
};

template <DynamicalSystem Sys>
PseudoOrbitVerdict is_pseudo_orbit(const Sys& sys, const PseudoOrbit<typename Sys::Point>& po, const ElementSet& k_set,
                                   const Entourage& v) {
  const auto& c = sys.carrier();
  if (po.family.size() != c.size()) throw Error(Errc::space_mismatch, "pseudo-orbit is not indexed by the carrier");
  PseudoOrbitVerdict out;
  for (Element k : k_set) {
    for (Element s = 0; s < c.size(); ++s) {
      auto ks = c.product(k, s);
      if (!ks) {
        ++out.skipped;
        continue;
      }
      ++out.checked;
      if (!sys.close(v, sys.act(k, po.family[s]), po.family[*ks])) {
        out.ok = false;
        out.violation = std::pair{k, s};
        return out;
      }
    }
  }
  return out;
}

template <DynamicalSystem Sys>
TraceVerdict is_traced(const Sys& sys, const PseudoOrbit<typename Sys::Point>& po, const typename Sys::Point& x,
                       const Entourage& u) {
  const auto& c = sys.carrier();
  if (po.family.size() != c.size()) throw Error(Errc::space_mismatch, "pseudo-orbit is not indexed by the carrier");
  TraceVerdict out;
  for (Element s = 0; s < c.size(); ++s) {
    ++out.checked;
    if (!sys.close(u, sys.act(s, x), po.family[s])) {
      out.traced = false;
      out.violation = s;
      return out;
    }
  }
  return out;
}

/// Indices (into points()) of every point whose orbit U-traces the family.
template <DynamicalSystem Sys>
std::vector<std::size_t> tracing_search(const Sys& sys, const PseudoOrbit<typename Sys::Point>& po, const Entourage& u,
                                        std::size_t cap = enumeration_cap()) {
  const auto& pts = sys.points();
  if (pts.size() > cap) throw Error(Errc::cap_exceeded, "point set exceeds the enumeration cap");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (is_traced(sys, po, pts[i], u).traced) out.push_back(i);
  }
  return out;
}

template <DynamicalSystem Sys>
PseudoOrbit<typename Sys::Point> orbit_family(const Sys& sys, const typename Sys::Point& x) {
  PseudoOrbit<typename Sys::Point> po;
  for (Element s = 0; s < sys.carrier().size(); ++s) po.family.push_back(sys.act(s, x));
  return po;
}

namespace detail {

// Constraints of the (K,V) condition that mention x_s.
template <DynamicalSystem Sys>
bool locally_consistent(const Sys& sys, const PseudoOrbit<typename Sys::Point>& po, const ElementSet& k_set,
                        const Entourage& v, Element s) {
  const auto& c = sys.carrier();
  for (Element k : k_set) {
    if (auto ks = c.product(k, s); ks && !sys.close(v, sys.act(k, po.family[s]), po.family[*ks])) return false;
    for (Element t = 0; t < c.size(); ++t) {
      if (auto kt = c.product(k, t); kt && *kt == s && !sys.close(v, sys.act(k, po.family[t]), po.family[s])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Seeded random local moves: replace one member by a random point of the
/// system, keeping the move only if the family stays a (K,V)-pseudo-orbit.
/// Returns the number of accepted moves.
template <DynamicalSystem Sys>
std::size_t perturb_pseudo_orbit(const Sys& sys, PseudoOrbit<typename Sys::Point>& po, const ElementSet& k_set,
                                 const Entourage& v, Rng& rng, std::size_t attempts) {
  const auto& pts = sys.points();
  const std::size_t n = sys.carrier().size();
  if (pts.empty() || n == 0) return 0;
  std::size_t accepted = 0;
  for (std::size_t a = 0; a < attempts; ++a) {
    const Element s = rng.below(n);
    auto saved = po.family[s];
    po.family[s] = pts[rng.below(pts.size())];
    if (detail::locally_consistent(sys, po, k_set, v, s)) {
      ++accepted;
    } else {
      po.family[s] = std::move(saved);
    }
  }
  return accepted;
}

/// Orbit of a random point, then perturbed; always a (K,V)-pseudo-orbit.
template <DynamicalSystem Sys>
PseudoOrbit<typename Sys::Point> random_pseudo_orbit(const Sys& sys, const ElementSet& k_set, const Entourage& v,
                                                     Rng& rng, std::size_t attempts) {
  const auto& pts = sys.points();
  if (pts.empty()) throw Error(Errc::invalid_argument, "system has no points");
  auto po = orbit_family(sys, pts[rng.below(pts.size())]);
  perturb_pseudo_orbit(sys, po, k_set, v, rng, attempts);
  return po;
}

// ------------------------------------------------------- tracing constructors

/// x(s) := x_s(e) for the first left identity e of the carrier.
Configuration trace_point_sft(const Carrier& carrier, const PseudoOrbit<Configuration>& po);

struct EquicontinuousTrace {
  std::size_t point = 0;
  /// Whether the family is a (Σ,V)-pseudo-orbit; the tracing guarantee needs it.
  bool premise_met = false;
  PseudoOrbitVerdict premise;
  TraceVerdict trace;
};

/// x := x_{1_M}, with the (Σ,V) premise and the U-tracing verdict recorded.
EquicontinuousTrace trace_point_equicontinuous(const ActionTable& sys, const PseudoOrbit<std::size_t>& po,
                                               const ElementSet& sigma, const Entourage& v, const Entourage& u);

// ------------------------------------------------------- parameter conversion

struct ParameterChain {
  /// V = V_1.
  Entourage v;
  /// V_1, ..., V_n.
  std::vector<Entourage> chain;
  /// Smallest n with K ⊆ Σ ∪ Σ² ∪ ... ∪ Σⁿ.
  unsigned n = 0;
};

/// Smallest n with K inside the union of the first n powers of Σ; throws
/// K-not-in-ball when no power within the carrier reaches some k.
unsigned sigma_ball_depth(const Carrier& carrier, const ElementSet& sigma, const ElementSet& k_set);

/// Shift systems with W = E_J: V_i = E_{J_i}, J_n = J, J_i = J_{i+1} ∪ J_{i+1}Σ.
ParameterChain sigma_to_general_params(const ShiftSystem& sys, const ElementSet& sigma, const ElementSet& k_set,
                                       const Entourage& w);
/// Finite systems: V_n = root(W, 2), V_i = root(V_{i+1} ∩ ⋂_σ σ^{-1}V_{i+1}, 2).
ParameterChain sigma_to_general_params(const ActionTable& sys, const ElementSet& sigma, const ElementSet& k_set,
                                       const Entourage& w);

// ---------------------------------------------------------- SFT approximation

struct Approximation {
  Subshift z;
  std::vector<Configuration> z_points;
  /// Every point of X passes membership in Z.
  bool contains_x = true;
  /// First point of Z (lexicographic) outside X whose every window
  /// translate, including those cut off by the horizon, is seen on some point
  /// of X. Without truncation every point of Z has this property; at a finite
  /// horizon Z leaves its last coordinates unconstrained.
  std::optional<Configuration> separating;
  /// Points of Z outside X, with or without that property.
  std::size_t outside = 0;
};

Approximation sft_approximation(const ShiftSystem& x_sys, const ElementSet& window, std::size_t cap = enumeration_cap());

/// x_s := lexicographically least x ∈ X with x|_W = (sz)|_W on the
/// coordinates where (sz) is defined. Throws no-matching-point otherwise.
PseudoOrbit<Configuration> pseudo_orbit_from_approximant(const ShiftSystem& x_sys, const Configuration& z,
                                                         const ElementSet& window);

// -------------------------------------------------------------- trace report

enum class TraceOutcome { traced, not_traced, horizon_limited };

std::string_view to_string(TraceOutcome o) noexcept;

struct TraceReport {
  TraceOutcome verdict = TraceOutcome::not_traced;
  std::vector<std::size_t> tracing_points;
  std::optional<Element> violation;
  std::optional<std::size_t> horizon;
};

/// Runs the tracing oracle. An empty search on a truncated carrier is
/// horizon-limited unless the caller holds a certificate (`genuine`).
template <DynamicalSystem Sys>
TraceReport trace_report(const Sys& sys, const PseudoOrbit<typename Sys::Point>& po, const Entourage& u,
                         bool genuine = false) {
  TraceReport r;
  r.horizon = sys.carrier().horizon();
  r.tracing_points = tracing_search(sys, po, u);
  if (!r.tracing_points.empty()) {
    r.verdict = TraceOutcome::traced;
  } else {
    r.verdict = (sys.carrier().is_total() || genuine) ? TraceOutcome::not_traced : TraceOutcome::horizon_limited;
  }
  return r;
}

}  // namespace shadowlab
