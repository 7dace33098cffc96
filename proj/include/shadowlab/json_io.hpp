#pragma once

// JSON loaders and emitters for the file formats the CLI reads. Inputs that
// are not JSON objects themselves (a string ending in .json) are read as file
// paths relative to the working directory.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shadowlab/action_table.hpp"
#include "shadowlab/shadowing.hpp"
#include "shadowlab/symbolic.hpp"
#include "shadowlab/trees.hpp"

namespace shadowlab::io {

using nlohmann::json;

/// Parses a file; parse errors carry the file name and byte offset.
json read_json_file(const std::filesystem::path& path);
/// Inline JSON text, or a path to a JSON file.
json read_json_arg(const std::string& arg);
/// Resolves a nested value that may itself be a path string.
json resolve(const json& j);

struct LoadedSemigroup {
  std::shared_ptr<const Carrier> carrier;
  /// Present for finite tables; truncated monoids carry no table.
  std::optional<SemigroupTable> table;
};

/// {"elements","table"}, {"generators","horizon","relations"} or
/// {"family":"cyclic|right_zero|left_zero|null|saturating|trivial|semilattice","n":k}.
/// A truncated monoid without "horizon" takes `default_horizon`.
LoadedSemigroup load_semigroup(const json& j, std::size_t default_horizon);
SemigroupTable load_table(const json& j);
json to_json(const SemigroupTable& s);

/// ℕ truncated at the horizon: the default carrier of subshifts.
std::shared_ptr<const Carrier> naturals(std::size_t horizon);

/// {"alphabet","window","forbidden"|"allowed","carrier"?}.
Subshift load_subshift(const json& j, std::size_t default_horizon);
json to_json(const Subshift& x);

/// A configuration is a string of one-character symbols in carrier order, an
/// array of symbol labels, or an object {element label: symbol}. '.' and
/// null mark undefined coordinates.
Configuration load_configuration(const json& j, const Carrier& c, const std::vector<std::string>& alphabet);
std::string format_configuration(const Configuration& x, const std::vector<std::string>& alphabet);

/// {"type":"coord","K":[labels]}, {"type":"relation","pairs":[[p,q],...]},
/// {"type":"diagonal"} or {"type":"full"}; coordinate labels resolve against
/// the carrier for shift systems.
Entourage load_entourage(const json& j, const ShiftSystem& sys);
/// Coordinate labels resolve against the action's coordinate labels, pair
/// entries against its point labels.
Entourage load_entourage(const json& j, const ActionTable& sys);
json to_json(const Entourage& e, const std::vector<std::string>& coord_labels,
             const std::vector<std::string>& point_labels);

/// {"index_horizon": L, "family": {word: configuration}}; every carrier
/// element needs an entry and L must match the carrier horizon.
PseudoOrbit<Configuration> load_pseudo_orbit(const json& j, const ShiftSystem& sys);
json to_json(const PseudoOrbit<Configuration>& po, const ShiftSystem& sys);

/// {"arity","states","transition":{q:{letter:q'}},"output":{q:[...]}}.
MealyMachine load_mealy(const json& j);
json to_json(const MealyMachine& m);

/// Actions on finite point sets:
///   {"semigroup": S, "points": [...], "generators": {g: [images]}} or "maps": {s: [images]},
///     optional "coordinates": {"labels": [...], "values": {point: [...]}};
///   {"subshift": X} (shift action on the enumerated points);
///   {"machine": M, "depth": D, "generators": [states]?} (boundary action);
///   {"base": A, "conjugate": {point: point}} (φαφ⁻¹ for a permutation φ).
ActionTable load_action(const json& j, std::size_t default_horizon);

/// Point labels or indices to a point map.
PointMap load_point_map(const json& j, const ActionTable& sys);

}  // namespace shadowlab::io
