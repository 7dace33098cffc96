#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shadowlab {

enum class Errc {
  invalid_argument,
  parse_error,
  cap_exceeded,
  associativity_violation,
  label_collision,
  space_mismatch,
  horizon_insufficient,
  window_escapes_horizon,
  no_left_identity,
  not_a_monoid,
  k_not_in_ball,
  no_matching_point,
  not_in_neighborhood,
  tracing_not_unique,
  tracing_not_found,
  premise_unverified,
  generator_not_invertible,
  tree_mismatch,
  depth_mismatch,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Enumeration bound shared by every exhaustive search. Reads SHADOWLAB_CAP
/// (default 10^6).
std::size_t enumeration_cap();

}  // namespace shadowlab
