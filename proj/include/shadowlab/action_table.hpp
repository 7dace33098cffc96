#pragma once

// Actions of a carrier on a finite point set, stored as one map per carrier
// element. Points may carry coordinates (e.g. symbols of a configuration or
// letters of a ray), which makes coordinate entourages available.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shadowlab/semigroup.hpp"
#include "shadowlab/symbolic.hpp"
#include "shadowlab/uniformity.hpp"

namespace shadowlab {

using PointMap = std::vector<std::size_t>;

class ActionTable {
 public:
  using Point = std::size_t;

  /// maps[s][p] = α_s(p) for every carrier element s. The action law
  /// α_s ∘ α_t = α_{st} is verified wherever st is defined.
  ActionTable(std::shared_ptr<const Carrier> carrier, std::vector<std::string> point_labels,
              std::vector<PointMap> maps);

  /// Builds the maps for every element from the generator maps (indexed like
  /// carrier().generators()). Works for truncated monoids and for tables
  /// generated by their designated generators.
  static ActionTable from_generators(std::shared_ptr<const Carrier> carrier, std::vector<std::string> point_labels,
                                     const std::vector<PointMap>& generator_maps);

  /// The shift action on an enumerated shift system over a total carrier.
  static ActionTable from_shift(const ShiftSystem& sys);

  const Carrier& carrier() const noexcept { return *carrier_; }
  const std::shared_ptr<const Carrier>& carrier_ptr() const noexcept { return carrier_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& point_labels() const noexcept { return labels_; }
  std::optional<std::size_t> find_point(const std::string& label) const;

  Point act(Element s, Point p) const { return maps_[s][p]; }
  const PointMap& map(Element s) const { return maps_[s]; }
  const std::vector<PointMap>& maps() const noexcept { return maps_; }

  void set_coordinates(std::vector<std::string> coordinate_labels, std::vector<std::vector<int>> values);
  bool has_coordinates() const noexcept { return !coordinate_labels_.empty(); }
  const std::vector<std::string>& coordinate_labels() const noexcept { return coordinate_labels_; }
  const std::vector<std::vector<int>>& coordinates() const noexcept { return coords_; }
  std::size_t coordinate_count() const noexcept { return coordinate_labels_.size(); }
  ElementSet parse_coordinates(const std::vector<std::string>& labels) const;

  bool close(const Entourage& e, Point x, Point y) const;
  /// The relation form of an entourage on this point set.
  RelationEntourage as_relation(const Entourage& e) const;

  /// β = φ α φ^{-1} for a permutation φ of the points.
  ActionTable conjugate(const PointMap& phi) const;

  /// Same carrier, same point labels and coordinates.
  bool same_space(const ActionTable& other) const;

 private:
  std::shared_ptr<const Carrier> carrier_;
  std::vector<std::string> labels_;
  std::vector<PointMap> maps_;
  std::vector<Point> points_;
  std::vector<std::string> coordinate_labels_;
  std::vector<std::vector<int>> coords_;
};

}  // namespace shadowlab
