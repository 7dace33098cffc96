#include "shadowlab/stability.hpp"

#include <numeric>

namespace shadowlab {

namespace {

void require_same_space(const ActionTable& alpha, const ActionTable& beta) {
  if (!alpha.same_space(beta)) throw Error(Errc::space_mismatch, "actions live on different carriers or point sets");
}

}  // namespace

Entourage action_distance(const ActionTable& alpha, const ActionTable& beta, const ElementSet& k_set) {
  require_same_space(alpha, beta);
  if (alpha.has_coordinates()) {
    std::vector<Element> agree;
    for (std::size_t j = 0; j < alpha.coordinate_count(); ++j) {
      bool same = true;
      for (Element k : k_set) {
        for (std::size_t x = 0; x < alpha.size() && same; ++x) {
          same = alpha.coordinates()[alpha.act(k, x)][j] == alpha.coordinates()[beta.act(k, x)][j];
        }
        if (!same) break;
      }
      if (same) agree.push_back(j);
    }
    return CoordEntourage{ElementSet(std::move(agree))};
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (Element k : k_set) {
    for (std::size_t x = 0; x < alpha.size(); ++x) pairs.emplace_back(alpha.act(k, x), beta.act(k, x));
  }
  return RelationEntourage::from_pairs(alpha.size(), pairs);
}

std::optional<std::pair<Element, std::size_t>> check_semiconjugacy(const ActionTable& alpha, const ActionTable& beta,
                                                                    const PointMap& h) {
  for (Element s = 0; s < alpha.carrier().size(); ++s) {
    for (std::size_t x = 0; x < alpha.size(); ++x) {
      if (alpha.act(s, h[x]) != h[beta.act(s, x)]) return std::pair{s, x};
    }
  }
  return std::nullopt;
}

ConjugacyMap semiconjugacy_solve(const ActionTable& alpha, const ActionTable& beta, const SemiconjugacyParams& params) {
  require_same_space(alpha, beta);
  ConjugacyMap out;
  out.params = params;
  const std::size_t n = alpha.size();
  if (n <= 1) {
    out.h.assign(n, 0);
    out.verified = true;
    return out;
  }
  if (!is_symmetric(params.v)) throw Error(Errc::premise_unverified, "V is not symmetric");
  if (!is_subset(power(params.v, 3), params.e)) throw Error(Errc::premise_unverified, "V∘V∘V is not inside E");
  if (auto ev = is_expansivity_entourage(alpha, params.e); !ev.expansive) {
    throw Error(Errc::premise_unverified, "α is not E-expansive: points " + alpha.point_labels()[ev.inseparable->first] +
                                              " and " + alpha.point_labels()[ev.inseparable->second] +
                                              " are never separated");
  }
  const auto& c = alpha.carrier();
  for (Element k : params.k) {
    for (std::size_t x = 0; x < n; ++x) {
      if (!alpha.close(params.w, alpha.act(k, x), beta.act(k, x))) {
        throw Error(Errc::not_in_neighborhood,
                    "β is not W-close to α at k=" + c.label(k) + ", x=" + alpha.point_labels()[x]);
      }
    }
  }
  out.h.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    PseudoOrbit<std::size_t> po;
    for (Element s = 0; s < c.size(); ++s) po.family.push_back(beta.act(s, x));
    if (auto pv = is_pseudo_orbit(alpha, po, params.k, params.w); !pv.ok) {
      throw Error(Errc::premise_unverified, "β-orbit of " + alpha.point_labels()[x] + " is not an α-(K,W)-pseudo-orbit");
    }
    const auto tracers = tracing_search(alpha, po, params.v);
    if (tracers.empty()) {
      throw Error(Errc::tracing_not_found, "no α-orbit V-traces the β-orbit of " + alpha.point_labels()[x]);
    }
    if (tracers.size() > 1) {
      throw Error(Errc::tracing_not_unique, "β-orbit of " + alpha.point_labels()[x] + " has " +
                                                std::to_string(tracers.size()) + " V-tracing points");
    }
    out.h[x] = tracers.front();
  }
  out.violation = check_semiconjugacy(alpha, beta, out.h);
  out.verified = !out.violation.has_value();
  return out;
}

ClosenessVerdict verify_stability_closeness(const ActionTable& space, const PointMap& h, const Entourage& u) {
  if (!space.carrier().identity()) throw Error(Errc::not_a_monoid, "closeness is stated for monoid actions");
  if (h.size() != space.size()) throw Error(Errc::space_mismatch, "map size differs from the point count");
  ClosenessVerdict v;
  for (std::size_t x = 0; x < h.size(); ++x) {
    if (!space.close(u, h[x], x)) {
      v.ok = false;
      v.violation = x;
      return v;
    }
  }
  return v;
}

std::string_view to_string(QualityMode m) noexcept {
  return m == QualityMode::injective ? "injective" : "surjective-minimal";
}

bool is_minimal(const ActionTable& sys) {
  const auto& c = sys.carrier();
  for (std::size_t x = 0; x < sys.size(); ++x) {
    std::vector<bool> hit(sys.size(), false);
    std::size_t count = 0;
    for (Element s = 0; s < c.size(); ++s) {
      const auto y = sys.act(s, x);
      if (!hit[y]) {
        hit[y] = true;
        ++count;
      }
    }
    if (count != sys.size()) return false;
  }
  return true;
}

QualityVerdict verify_conjugacy_quality(const PointMap& h, const ActionTable& alpha, const ActionTable& beta,
                                        QualityMode mode, const Entourage& e, bool require_premise) {
  require_same_space(alpha, beta);
  if (h.size() != alpha.size()) throw Error(Errc::space_mismatch, "map size differs from the point count");
  QualityVerdict v;
  if (mode == QualityMode::injective) {
    v.premise_verified = is_expansivity_entourage(beta, e).expansive;
  } else {
    v.premise_verified = is_minimal(alpha);
  }
  if (require_premise && !v.premise_verified) {
    throw Error(Errc::premise_unverified, std::string(mode == QualityMode::injective ? "β is not E-expansive"
                                                                                     : "α is not minimal"));
  }
  if (mode == QualityMode::injective) {
    std::vector<std::optional<std::size_t>> preimage(alpha.size());
    for (std::size_t x = 0; x < h.size(); ++x) {
      if (preimage[h[x]]) {
        v.ok = false;
        v.collision = std::pair{*preimage[h[x]], x};
        return v;
      }
      preimage[h[x]] = x;
    }
  } else {
    std::vector<bool> hit(alpha.size(), false);
    for (auto y : h) hit[y] = true;
    for (std::size_t y = 0; y < hit.size(); ++y) {
      if (!hit[y]) {
        v.ok = false;
        v.missed = y;
        return v;
      }
    }
  }
  return v;
}

}  // namespace shadowlab
