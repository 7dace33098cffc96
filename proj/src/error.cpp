#include "shadowlab/error.hpp"

#include <cstdlib>

namespace shadowlab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::parse_error: return "parse-error";
    case Errc::cap_exceeded: return "cap-exceeded";
    case Errc::associativity_violation: return "associativity-violation";
    case Errc::label_collision: return "label-collision";
    case Errc::space_mismatch: return "space-mismatch";
    case Errc::horizon_insufficient: return "horizon-insufficient";
    case Errc::window_escapes_horizon: return "window-escapes-horizon";
    case Errc::no_left_identity: return "no-left-identity";
    case Errc::not_a_monoid: return "not-a-monoid";
    case Errc::k_not_in_ball: return "K-not-in-ball";
    case Errc::no_matching_point: return "no-matching-point";
    case Errc::not_in_neighborhood: return "not-in-neighborhood";
    case Errc::tracing_not_unique: return "tracing-not-unique";
    case Errc::tracing_not_found: return "tracing-not-found";
    case Errc::premise_unverified: return "premise-unverified";
    case Errc::generator_not_invertible: return "generator-not-invertible";
    case Errc::tree_mismatch: return "tree-mismatch";
    case Errc::depth_mismatch: return "depth-mismatch";
  }
  return "unknown";
}

std::size_t enumeration_cap() {
  constexpr std::size_t kDefault = 1'000'000;
  const char* env = std::getenv("SHADOWLAB_CAP");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return kDefault;
  return static_cast<std::size_t>(v);
}

}  // namespace shadowlab
