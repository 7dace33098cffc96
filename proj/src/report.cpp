#include "shadowlab/report.hpp"

#include <cstdio>

#include "shadowlab/error.hpp"

namespace shadowlab {

using nlohmann::json;

json to_json(const RunReport& r) {
  json j{{"command", r.command},   {"inputs_digest", r.inputs_digest}, {"seed", r.seed},
         {"horizon", nullptr},     {"depth", nullptr},                 {"verdict", r.verdict},
         {"exit_code", r.exit_code}, {"result", r.result}};
  if (r.horizon) j["horizon"] = *r.horizon;
  if (r.depth) j["depth"] = *r.depth;
  if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
  return j;
}

RunReport report_from_json(const json& j) {
  try {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.inputs_digest = j.at("inputs_digest").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("horizon").is_null()) r.horizon = j.at("horizon").get<std::size_t>();
    if (!j.at("depth").is_null()) r.depth = j.at("depth").get<unsigned>();
    r.verdict = j.at("verdict").get<std::string>();
    r.exit_code = j.at("exit_code").get<int>();
    r.result = j.at("result");
    if (j.contains("wall_ms")) r.wall_ms = j.at("wall_ms").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("malformed run report: ") + e.what());
  }
}

std::string emit(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

void Fnv1a::update(std::string_view bytes) {
  for (unsigned char c : bytes) {
    h_ ^= c;
    h_ *= 0x100000001b3ull;
  }
}

std::string Fnv1a::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
  return buf;
}

}  // namespace shadowlab
