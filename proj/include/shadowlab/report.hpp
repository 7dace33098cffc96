#pragma once

// Machine-readable run reports. Everything except the optional wall time is a
// function of the arguments, the input files and the seed.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace shadowlab {

struct RunReport {
  std::string command;
  /// FNV-1a 64 over the arguments and the bytes of every input file, in hex.
  std::string inputs_digest;
  std::uint64_t seed = 0;
  std::optional<std::size_t> horizon;
  std::optional<unsigned> depth;
  std::string verdict;
  int exit_code = 0;
  nlohmann::json result = nlohmann::json::object();
  /// Only filled with --timing, so default reports stay byte-identical.
  std::optional<double> wall_ms;

  bool operator==(const RunReport&) const = default;
};

nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);
/// Pretty-printed JSON with a trailing newline.
std::string emit(const RunReport& r);

class Fnv1a {
 public:
  void update(std::string_view bytes);
  std::uint64_t value() const noexcept { return h_; }
  std::string hex() const;

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

}  // namespace shadowlab
