#include "shadowlab/action_table.hpp"

#include <deque>
#include <numeric>

namespace shadowlab {

namespace {

PointMap identity_map(std::size_t n) {
  PointMap m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return m;
}

PointMap compose_maps(const PointMap& f, const PointMap& g) {
  PointMap out(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) out[p] = f[g[p]];
  return out;
}

}  // namespace

ActionTable::ActionTable(std::shared_ptr<const Carrier> carrier, std::vector<std::string> point_labels,
                         std::vector<PointMap> maps)
    : carrier_(std::move(carrier)), labels_(std::move(point_labels)), maps_(std::move(maps)) {
  const std::size_t n = labels_.size();
  const auto& c = *carrier_;
  if (maps_.size() != c.size()) throw Error(Errc::invalid_argument, "action table needs one map per carrier element");
  for (const auto& m : maps_) {
    if (m.size() != n) throw Error(Errc::invalid_argument, "action map size differs from the point count");
    for (auto v : m) {
      if (v >= n) throw Error(Errc::invalid_argument, "action map sends a point out of range");
    }
  }
  for (Element s = 0; s < c.size(); ++s) {
    for (Element t = 0; t < c.size(); ++t) {
      auto st = c.product(s, t);
      if (!st) continue;
      for (std::size_t p = 0; p < n; ++p) {
        if (maps_[s][maps_[t][p]] != maps_[*st][p]) {
          throw Error(Errc::invalid_argument, "action law fails: " + c.label(s) + "(" + c.label(t) + "(" + labels_[p] +
                                                  ")) differs from " + c.label(*st) + "(" + labels_[p] + ")");
        }
      }
    }
  }
  points_ = identity_map(n);
}

ActionTable ActionTable::from_generators(std::shared_ptr<const Carrier> carrier, std::vector<std::string> point_labels,
                                         const std::vector<PointMap>& generator_maps) {
  const auto& c = *carrier;
  const auto& gens = c.generators();
  if (generator_maps.size() != gens.size()) {
    throw Error(Errc::invalid_argument, "one map per carrier generator is required");
  }
  const std::size_t n = point_labels.size();
  std::vector<std::optional<PointMap>> maps(c.size());
  std::deque<Element> queue;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (generator_maps[i].size() != n) throw Error(Errc::invalid_argument, "generator map size differs from point count");
    maps[gens[i]] = generator_maps[i];
    queue.push_back(gens[i]);
  }
  for (Element e = 0; e < c.size(); ++e) {
    const bool empty_word = !c.is_total() && c.length(e) == 0;
    if (!maps[e] && (empty_word || c.identity() == e)) {
      maps[e] = identity_map(n);
      queue.push_back(e);
    }
  }
  while (!queue.empty()) {
    const Element t = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto gt = c.product(gens[i], t);
      if (!gt || maps[*gt]) continue;
      maps[*gt] = compose_maps(generator_maps[i], *maps[t]);
      queue.push_back(*gt);
    }
  }
  std::vector<PointMap> out;
  out.reserve(c.size());
  for (Element e = 0; e < c.size(); ++e) {
    if (!maps[e]) throw Error(Errc::invalid_argument, "element " + c.label(e) + " is not reached from the generators");
    out.push_back(std::move(*maps[e]));
  }
  return ActionTable(std::move(carrier), std::move(point_labels), std::move(out));
}

ActionTable ActionTable::from_shift(const ShiftSystem& sys) {
  const auto& c = sys.carrier();
  if (!c.is_total()) throw Error(Errc::invalid_argument, "shift action tables need a total carrier");
  const auto& pts = sys.points();
  std::vector<std::string> labels;
  for (const auto& p : pts) {
    std::string l;
    for (Symbol v : p) l += sys.alphabet()[static_cast<std::size_t>(v)];
    labels.push_back(std::move(l));
  }
  std::vector<PointMap> maps(c.size(), PointMap(pts.size()));
  for (Element s = 0; s < c.size(); ++s) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto j = sys.index_of(sys.act(s, pts[i]));
      if (!j) throw Error(Errc::invalid_argument, "point set is not shift-invariant");
      maps[s][i] = *j;
    }
  }
  ActionTable table(sys.carrier_ptr(), std::move(labels), std::move(maps));
  std::vector<std::vector<int>> values;
  for (const auto& p : pts) values.emplace_back(p.begin(), p.end());
  table.set_coordinates(c.labels(), std::move(values));
  return table;
}

std::optional<std::size_t> ActionTable::find_point(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

void ActionTable::set_coordinates(std::vector<std::string> coordinate_labels, std::vector<std::vector<int>> values) {
  if (values.size() != size()) throw Error(Errc::invalid_argument, "one coordinate row per point is required");
  for (const auto& row : values) {
    if (row.size() != coordinate_labels.size()) throw Error(Errc::invalid_argument, "coordinate row has the wrong width");
  }
  coordinate_labels_ = std::move(coordinate_labels);
  coords_ = std::move(values);
}

ElementSet ActionTable::parse_coordinates(const std::vector<std::string>& labels) const {
  std::vector<Element> out;
  for (const auto& l : labels) {
    bool found = false;
    for (std::size_t i = 0; i < coordinate_labels_.size() && !found; ++i) {
      if (coordinate_labels_[i] == l) {
        out.push_back(i);
        found = true;
      }
    }
    if (!found) throw Error(Errc::invalid_argument, "unknown coordinate '" + l + "'");
  }
  return ElementSet(std::move(out));
}

bool ActionTable::close(const Entourage& e, Point x, Point y) const {
  if (const auto* c = std::get_if<CoordEntourage>(&e)) {
    if (!has_coordinates()) throw Error(Errc::space_mismatch, "this action table has no coordinates");
    for (Element k : c->coords) {
      if (k >= coordinate_count()) throw Error(Errc::space_mismatch, "coordinate index out of range");
      if (coords_[x][k] != coords_[y][k]) return false;
    }
    return true;
  }
  const auto& rel = std::get<RelationEntourage>(e);
  if (rel.points() != size()) throw Error(Errc::space_mismatch, "relation entourage is over a different point count");
  return rel.contains(x, y);
}

RelationEntourage ActionTable::as_relation(const Entourage& e) const {
  if (const auto* rel = std::get_if<RelationEntourage>(&e)) {
    if (rel->points() != size()) throw Error(Errc::space_mismatch, "relation entourage is over a different point count");
    return *rel;
  }
  std::vector<std::uint8_t> m(size() * size());
  for (std::size_t x = 0; x < size(); ++x) {
    for (std::size_t y = 0; y < size(); ++y) m[x * size() + y] = close(e, x, y) ? 1 : 0;
  }
  return RelationEntourage(size(), std::move(m));
}

ActionTable ActionTable::conjugate(const PointMap& phi) const {
  if (phi.size() != size()) throw Error(Errc::space_mismatch, "permutation size differs from the point count");
  PointMap inv(size(), size());
  for (std::size_t p = 0; p < size(); ++p) {
    if (phi[p] >= size() || inv[phi[p]] != size()) throw Error(Errc::invalid_argument, "conjugating map is not a permutation");
    inv[phi[p]] = p;
  }
  std::vector<PointMap> maps;
  maps.reserve(maps_.size());
  for (const auto& m : maps_) maps.push_back(compose_maps(phi, compose_maps(m, inv)));
  ActionTable out(carrier_, labels_, std::move(maps));
  out.coordinate_labels_ = coordinate_labels_;
  out.coords_ = coords_;
  return out;
}

bool ActionTable::same_space(const ActionTable& other) const {
  return (carrier_ == other.carrier_ || *carrier_ == *other.carrier_) && labels_ == other.labels_ &&
         coordinate_labels_ == other.coordinate_labels_ && coords_ == other.coords_;
}

}  // namespace shadowlab
