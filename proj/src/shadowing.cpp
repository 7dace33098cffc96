#include "shadowlab/shadowing.hpp"

#include <algorithm>

namespace shadowlab {

Configuration trace_point_sft(const Carrier& carrier, const PseudoOrbit<Configuration>& po) {
  if (carrier.left_identities().empty()) throw Error(Errc::no_left_identity, "the carrier has no left identity");
  if (po.family.size() != carrier.size()) throw Error(Errc::space_mismatch, "pseudo-orbit is not indexed by the carrier");
  const Element e = carrier.left_identities().front();
  Configuration x(carrier.size());
  for (Element s = 0; s < carrier.size(); ++s) x[s] = po.family[s][e];
  return x;
}

EquicontinuousTrace trace_point_equicontinuous(const ActionTable& sys, const PseudoOrbit<std::size_t>& po,
                                               const ElementSet& sigma, const Entourage& v, const Entourage& u) {
  const auto one = sys.carrier().identity();
  if (!one) throw Error(Errc::not_a_monoid, "the carrier has no identity element");
  if (po.family.size() != sys.carrier().size()) throw Error(Errc::space_mismatch, "pseudo-orbit is not indexed by the carrier");
  EquicontinuousTrace out;
  out.point = po.family[*one];
  out.premise = is_pseudo_orbit(sys, po, sigma, v);
  out.premise_met = out.premise.ok;
  out.trace = is_traced(sys, po, out.point, u);
  return out;
}

unsigned sigma_ball_depth(const Carrier& carrier, const ElementSet& sigma, const ElementSet& k_set) {
  if (sigma.empty()) throw Error(Errc::invalid_argument, "Σ must not be empty");
  ElementSet reached = sigma;
  ElementSet power = sigma;
  std::vector<ElementSet> seen{power};
  for (unsigned n = 1;; ++n) {
    if (k_set.is_subset_of(reached)) return n;
    power = carrier.product(sigma, power);
    if (power.empty() || std::find(seen.begin(), seen.end(), power) != seen.end()) break;
    seen.push_back(power);
    reached = set_union(reached, power);
  }
  for (Element k : k_set) {
    if (!reached.contains(k)) {
      throw Error(Errc::k_not_in_ball, "element " + carrier.label(k) + " is not a product of Σ within the carrier");
    }
  }
  return 0;  // unreachable
}

ParameterChain sigma_to_general_params(const ShiftSystem& sys, const ElementSet& sigma, const ElementSet& k_set,
                                       const Entourage& w) {
  const auto* target = std::get_if<CoordEntourage>(&w);
  if (target == nullptr) throw Error(Errc::space_mismatch, "shift systems take coordinate entourages");
  const auto& c = sys.carrier();
  const unsigned n = sigma_ball_depth(c, sigma, k_set);
  std::vector<ElementSet> js(n);
  js[n - 1] = target->coords;
  for (unsigned i = n - 1; i > 0; --i) js[i - 1] = set_union(js[i], c.product(js[i], sigma));
  ParameterChain out;
  out.n = n;
  for (auto& j : js) out.chain.push_back(CoordEntourage{j});
  out.v = out.chain.front();
  return out;
}

ParameterChain sigma_to_general_params(const ActionTable& sys, const ElementSet& sigma, const ElementSet& k_set,
                                       const Entourage& w) {
  const unsigned n = sigma_ball_depth(sys.carrier(), sigma, k_set);
  const std::size_t np = sys.size();
  std::vector<Entourage> chain(n);
  chain[n - 1] = root(sys.as_relation(w), 2);
  for (unsigned i = n - 1; i > 0; --i) {
    const auto& next = std::get<RelationEntourage>(chain[i]);
    RelationEntourage bound = next;
    for (Element g : sigma) {
      for (std::size_t x = 0; x < np; ++x) {
        for (std::size_t y = 0; y < np; ++y) {
          if (!next.contains(sys.act(g, x), sys.act(g, y))) bound.set(x, y, false);
        }
      }
    }
    chain[i - 1] = root(bound, 2);
  }
  ParameterChain out;
  out.n = n;
  out.chain = chain;
  out.v = chain.front();
  return out;
}

Approximation sft_approximation(const ShiftSystem& x_sys, const ElementSet& window, std::size_t cap) {
  auto z = sft_from_samples(x_sys.carrier_ptr(), x_sys.alphabet(), x_sys.points(), window);
  Approximation out{z, enumerate_points(z, cap), true, std::nullopt};
  for (const auto& x : x_sys.points()) {
    if (!sft_membership(z, x).member) {
      out.contains_x = false;
      break;
    }
  }
  const auto& c = x_sys.carrier();
  auto realized = [&](const Configuration& p) {
    for (Element s = 0; s < c.size(); ++s) {
      const auto sp = shift_apply(c, s, p);
      const bool seen = std::any_of(x_sys.points().begin(), x_sys.points().end(),
                                    [&](const Configuration& x) { return agree_on(x, sp, window); });
      if (!seen) return false;
    }
    return true;
  };
  for (const auto& p : out.z_points) {
    if (x_sys.contains(p)) continue;
    ++out.outside;
    if (!out.separating && realized(p)) out.separating = p;
  }
  return out;
}

PseudoOrbit<Configuration> pseudo_orbit_from_approximant(const ShiftSystem& x_sys, const Configuration& z,
                                                         const ElementSet& window) {
  const auto& c = x_sys.carrier();
  if (z.size() != c.size()) throw Error(Errc::space_mismatch, "configuration size differs from the carrier");
  PseudoOrbit<Configuration> po;
  for (Element s = 0; s < c.size(); ++s) {
    const auto sz = shift_apply(c, s, z);
    const Configuration* match = nullptr;
    for (const auto& x : x_sys.points()) {
      if (agree_on(x, sz, window)) {
        match = &x;
        break;
      }
    }
    if (match == nullptr) {
      throw Error(Errc::no_matching_point, "no point of X matches the window pattern at " + c.label(s));
    }
    po.family.push_back(*match);
  }
  return po;
}

std::string_view to_string(TraceOutcome o) noexcept {
  switch (o) {
    case TraceOutcome::traced: return "traced";
    case TraceOutcome::not_traced: return "not-traced";
    case TraceOutcome::horizon_limited: return "horizon-limited";
  }
  return "unknown";
}

}  // namespace shadowlab
