#include "shadowlab/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace shadowlab::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::parse_error, msg); }

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) bad(std::string(what) + " needs a \"" + key + "\" field");
  return j.at(key);
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) bad(std::string(what) + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::size_t index_in(const std::vector<std::string>& labels, const std::string& label, const char* what) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  bad(std::string("unknown ") + what + " '" + label + "'");
}

Symbol symbol_of(const json& v, const std::vector<std::string>& alphabet) {
  if (v.is_null()) return kUndefinedSymbol;
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_number_integer()) {
    s = std::to_string(v.get<long long>());
  } else {
    bad("symbols must be strings or integers");
  }
  if (s == ".") return kUndefinedSymbol;
  return static_cast<Symbol>(index_in(alphabet, s, "symbol"));
}

std::vector<std::pair<std::size_t, std::size_t>> pairs_of(const json& j, auto&& lookup) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& p : field(j, "pairs", "relation entourage")) {
    if (!p.is_array() || p.size() != 2) bad("relation pairs must be two-element arrays");
    out.emplace_back(lookup(p[0]), lookup(p[1]));
  }
  return out;
}

std::string entourage_type(const json& j) {
  if (!j.is_object()) bad("entourage must be an object");
  return j.value("type", std::string("coord"));
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json read_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    try {
      return json::parse(arg);
    } catch (const json::parse_error& e) {
      bad("inline JSON: byte " + std::to_string(e.byte) + ": " + e.what());
    }
  }
  return read_json_file(arg);
}

json resolve(const json& j) { return j.is_string() ? read_json_arg(j.get<std::string>()) : j; }

// ------------------------------------------------------------------ semigroups

SemigroupTable load_table(const json& j) {
  auto loaded = load_semigroup(j, 0);
  if (!loaded.table) bad("a finite semigroup table is required here");
  return *loaded.table;
}

LoadedSemigroup load_semigroup(const json& raw, std::size_t default_horizon) {
  const json j = resolve(raw);
  if (!j.is_object()) bad("semigroup must be a JSON object");
  auto wrap = [](SemigroupTable t) {
    auto c = std::make_shared<const Carrier>(t.carrier());
    return LoadedSemigroup{std::move(c), std::move(t)};
  };
  if (j.contains("table")) {
    const auto labels = string_list(field(j, "elements", "semigroup"), "elements");
    std::vector<std::vector<Element>> rows;
    const auto& t = j.at("table");
    if (!t.is_array()) bad("table must be an array of rows");
    for (const auto& row : t) {
      if (!row.is_array()) bad("table rows must be arrays");
      auto& r = rows.emplace_back();
      for (const auto& v : row) {
        if (v.is_number_unsigned()) {
          r.push_back(v.get<Element>());
        } else if (v.is_string()) {
          r.push_back(index_in(labels, v.get<std::string>(), "element"));
        } else {
          bad("table entries must be element indices or labels");
        }
      }
    }
    return wrap(SemigroupTable(labels, rows));
  }
  if (j.contains("family")) {
    const auto fam = j.at("family").get<std::string>();
    const auto n = j.value("n", std::size_t{2});
    if (fam == "cyclic") return wrap(families::cyclic_group(n));
    if (fam == "right_zero") return wrap(families::right_zero(n));
    if (fam == "left_zero") return wrap(families::left_zero(n));
    if (fam == "null") return wrap(families::null_semigroup(n));
    if (fam == "saturating") return wrap(families::saturating_monoid(n));
    if (fam == "trivial") return wrap(families::trivial_monoid());
    if (fam == "semilattice") return wrap(families::two_element_semilattice());
    bad("unknown semigroup family '" + fam + "'");
  }
  if (j.contains("generators")) {
    const auto gens = string_list(j.at("generators"), "generators");
    const auto horizon = j.value("horizon", default_horizon);
    std::vector<std::string> rels;
    if (j.contains("relations")) rels = string_list(j.at("relations"), "relations");
    auto m = truncate_free_monoid(gens, horizon, rels);
    return LoadedSemigroup{std::make_shared<const Carrier>(m.carrier()), std::nullopt};
  }
  bad("semigroup JSON needs \"table\", \"family\" or \"generators\"");
}

json to_json(const SemigroupTable& s) {
  return json{{"elements", s.labels()}, {"table", s.rows()}};
}

std::shared_ptr<const Carrier> naturals(std::size_t horizon) {
  return std::make_shared<const Carrier>(truncate_free_monoid({"a"}, horizon).carrier());
}

// -------------------------------------------------------------------- symbolic

Subshift load_subshift(const json& raw, std::size_t default_horizon) {
  const json j = resolve(raw);
  const auto alphabet = string_list(field(j, "alphabet", "subshift"), "alphabet");
  auto carrier = j.contains("carrier") ? load_semigroup(j.at("carrier"), default_horizon).carrier
                                       : naturals(default_horizon);
  const auto window = carrier->parse_set(string_list(field(j, "window", "subshift"), "window"));
  auto patterns = [&](const json& list) {
    std::vector<Pattern> out;
    if (!list.is_array()) bad("patterns must be arrays");
    for (const auto& p : list) {
      if (!p.is_array() || p.size() != window.size()) bad("each pattern needs one symbol per window element");
      Pattern q;
      for (const auto& v : p) {
        const auto s = symbol_of(v, alphabet);
        if (s == kUndefinedSymbol) bad("patterns must be fully defined");
        q.push_back(s);
      }
      out.push_back(std::move(q));
    }
    return out;
  };
  if (j.contains("allowed")) return Subshift(std::move(carrier), alphabet, window, patterns(j.at("allowed")));
  return Subshift::from_forbidden(std::move(carrier), alphabet, window,
                                  j.contains("forbidden") ? patterns(j.at("forbidden")) : std::vector<Pattern>{});
}

json to_json(const Subshift& x) {
  std::vector<std::string> window;
  for (Element w : x.window()) window.push_back(x.carrier().label(w));
  json forbidden = json::array();
  for (const auto& p : x.forbidden()) {
    json q = json::array();
    for (Symbol v : p) q.push_back(x.alphabet()[static_cast<std::size_t>(v)]);
    forbidden.push_back(std::move(q));
  }
  return json{{"alphabet", x.alphabet()}, {"window", window}, {"forbidden", forbidden}};
}

Configuration load_configuration(const json& j, const Carrier& c, const std::vector<std::string>& alphabet) {
  Configuration x(c.size(), kUndefinedSymbol);
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.size() != c.size()) {
      bad("configuration '" + s + "' has " + std::to_string(s.size()) + " symbols, the carrier has " +
          std::to_string(c.size()) + " elements");
    }
    for (std::size_t i = 0; i < s.size(); ++i) x[i] = symbol_of(std::string(1, s[i]), alphabet);
  } else if (j.is_array()) {
    if (j.size() != c.size()) bad("configuration length differs from the carrier size");
    for (std::size_t i = 0; i < j.size(); ++i) x[i] = symbol_of(j[i], alphabet);
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) x[c.at(k)] = symbol_of(v, alphabet);
  } else {
    bad("configuration must be a string, array or object");
  }
  return x;
}

std::string format_configuration(const Configuration& x, const std::vector<std::string>& alphabet) {
  bool single = true;
  for (const auto& a : alphabet) single = single && a.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!single && i > 0) out += ' ';
    out += x[i] == kUndefinedSymbol ? std::string(".") : alphabet[static_cast<std::size_t>(x[i])];
  }
  return out;
}

// ------------------------------------------------------------------ entourages

Entourage load_entourage(const json& raw, const ShiftSystem& sys) {
  const json j = resolve(raw);
  const auto type = entourage_type(j);
  if (type == "coord") return coord(sys.carrier().parse_set(string_list(field(j, "K", "coord entourage"), "K")));
  const std::size_t n = sys.points().size();
  if (type == "diagonal") return RelationEntourage::diagonal(n);
  if (type == "full") return RelationEntourage::full(n);
  if (type == "relation") {
    auto lookup = [&](const json& v) {
      auto i = sys.index_of(load_configuration(v, sys.carrier(), sys.alphabet()));
      if (!i) bad("relation entry " + v.dump() + " is not a point of the system");
      return *i;
    };
    return RelationEntourage::from_pairs(n, pairs_of(j, lookup));
  }
  bad("unknown entourage type '" + type + "'");
}

Entourage load_entourage(const json& raw, const ActionTable& sys) {
  const json j = resolve(raw);
  const auto type = entourage_type(j);
  if (type == "coord") return coord(sys.parse_coordinates(string_list(field(j, "K", "coord entourage"), "K")));
  const std::size_t n = sys.size();
  if (type == "diagonal") return RelationEntourage::diagonal(n);
  if (type == "full") return RelationEntourage::full(n);
  if (type == "relation") {
    auto lookup = [&](const json& v) -> std::size_t {
      if (v.is_number_unsigned() && v.get<std::size_t>() < n) return v.get<std::size_t>();
      if (v.is_string()) {
        if (auto p = sys.find_point(v.get<std::string>())) return *p;
      }
      bad("relation entry " + v.dump() + " is not a point of the action");
    };
    return RelationEntourage::from_pairs(n, pairs_of(j, lookup));
  }
  bad("unknown entourage type '" + type + "'");
}

json to_json(const Entourage& e, const std::vector<std::string>& coord_labels,
             const std::vector<std::string>& point_labels) {
  if (const auto* c = std::get_if<CoordEntourage>(&e)) {
    json k = json::array();
    for (Element i : c->coords) k.push_back(i < coord_labels.size() ? coord_labels[i] : std::to_string(i));
    return json{{"type", "coord"}, {"K", k}};
  }
  const auto& r = std::get<RelationEntourage>(e);
  json pairs = json::array();
  for (auto [x, y] : r.pairs()) {
    auto name = [&](std::size_t p) { return p < point_labels.size() ? point_labels[p] : std::to_string(p); };
    pairs.push_back(json::array({name(x), name(y)}));
  }
  return json{{"type", "relation"}, {"pairs", pairs}};
}

// ---------------------------------------------------------------- pseudo-orbits

PseudoOrbit<Configuration> load_pseudo_orbit(const json& raw, const ShiftSystem& sys) {
  const json j = resolve(raw);
  const auto& c = sys.carrier();
  if (j.contains("index_horizon")) {
    const auto l = j.at("index_horizon").get<std::size_t>();
    if (c.horizon() != l) {
      throw Error(Errc::space_mismatch, "pseudo-orbit is indexed up to horizon " + std::to_string(l) +
                                            " but the carrier horizon is " +
                                            (c.horizon() ? std::to_string(*c.horizon()) : std::string("none")));
    }
  }
  const auto& fam = field(j, "family", "pseudo-orbit");
  if (!fam.is_object()) bad("pseudo-orbit family must be an object keyed by carrier elements");
  std::vector<std::optional<Configuration>> members(c.size());
  for (const auto& [word, config] : fam.items()) {
    members[c.at(word)] = load_configuration(config, c, sys.alphabet());
  }
  PseudoOrbit<Configuration> po;
  for (Element s = 0; s < c.size(); ++s) {
    if (!members[s]) bad("pseudo-orbit has no member at " + (c.label(s).empty() ? std::string("ε") : c.label(s)));
    po.family.push_back(std::move(*members[s]));
  }
  return po;
}

json to_json(const PseudoOrbit<Configuration>& po, const ShiftSystem& sys) {
  const auto& c = sys.carrier();
  json fam = json::object();
  for (Element s = 0; s < c.size(); ++s) fam[c.label(s)] = format_configuration(po.family[s], sys.alphabet());
  json out{{"family", fam}};
  if (c.horizon()) out["index_horizon"] = *c.horizon();
  return out;
}

// ------------------------------------------------------------------------ Mealy

MealyMachine load_mealy(const json& raw) {
  const json j = resolve(raw);
  MealyMachine m;
  m.arity = field(j, "arity", "machine").get<unsigned>();
  m.states = string_list(field(j, "states", "machine"), "states");
  const auto& tr = field(j, "transition", "machine");
  const auto& out = field(j, "output", "machine");
  for (const auto& q : m.states) {
    if (!tr.contains(q) || !out.contains(q)) bad("state '" + q + "' lacks a transition or output entry");
    auto& row = m.transition.emplace_back(m.arity);
    const auto& t = tr.at(q);
    for (unsigned a = 0; a < m.arity; ++a) {
      const json& next = t.is_array() ? t.at(a) : t.at(std::to_string(a));
      row[a] = index_in(m.states, next.get<std::string>(), "state");
    }
    auto& o = m.output.emplace_back();
    for (const auto& v : out.at(q)) o.push_back(v.get<unsigned>());
  }
  m.validate();
  return m;
}

json to_json(const MealyMachine& m) {
  json tr = json::object(), out = json::object();
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    json row = json::object();
    for (unsigned a = 0; a < m.arity; ++a) row[std::to_string(a)] = m.states[m.transition[q][a]];
    tr[m.states[q]] = row;
    out[m.states[q]] = m.output[q];
  }
  return json{{"arity", m.arity}, {"states", m.states}, {"transition", tr}, {"output", out}};
}

// ---------------------------------------------------------------------- actions

PointMap load_point_map(const json& raw, const ActionTable& sys) {
  const json j = resolve(raw);
  PointMap out;
  auto point = [&](const json& v) -> std::size_t {
    if (v.is_number_unsigned() && v.get<std::size_t>() < sys.size()) return v.get<std::size_t>();
    if (v.is_string()) {
      if (auto p = sys.find_point(v.get<std::string>())) return *p;
    }
    bad("map entry " + v.dump() + " is not a point of the action");
  };
  if (j.is_array()) {
    if (j.size() != sys.size()) bad("point map needs one entry per point");
    for (const auto& v : j) out.push_back(point(v));
  } else if (j.is_object()) {
    out.resize(sys.size());
    for (std::size_t p = 0; p < sys.size(); ++p) out[p] = p;
    for (const auto& [k, v] : j.items()) out[point(json(k))] = point(v);
  } else {
    bad("point map must be an array or an object");
  }
  return out;
}

ActionTable load_action(const json& raw, std::size_t default_horizon) {
  const json j = resolve(raw);
  if (!j.is_object()) bad("action must be a JSON object");
  if (j.contains("base")) {
    auto base = load_action(j.at("base"), default_horizon);
    if (!j.contains("conjugate")) return base;
    return base.conjugate(load_point_map(j.at("conjugate"), base));
  }
  if (j.contains("subshift")) {
    ShiftSystem sys(load_subshift(j.at("subshift"), default_horizon));
    return ActionTable::from_shift(sys);
  }
  if (j.contains("machine")) {
    const auto m = load_mealy(j.at("machine"));
    const auto depth = field(j, "depth", "boundary action").get<unsigned>();
    const auto all = mealy_endomorphisms(m, depth);
    std::vector<std::string> names = j.contains("generators") ? string_list(j.at("generators"), "generators") : m.states;
    std::vector<TreeEndomorphism> gens;
    for (const auto& q : names) gens.push_back(all[m.state(q)]);
    return boundary_action(gens, names, j.value("horizon", default_horizon));
  }
  auto loaded = load_semigroup(field(j, "semigroup", "action"), default_horizon);
  const auto labels = string_list(field(j, "points", "action"), "points");
  auto images = [&](const json& list) {
    if (!list.is_array() || list.size() != labels.size()) bad("each map needs one image per point");
    PointMap m;
    for (const auto& v : list) {
      if (v.is_number_unsigned()) {
        m.push_back(v.get<std::size_t>());
      } else {
        m.push_back(index_in(labels, v.get<std::string>(), "point"));
      }
    }
    return m;
  };
  std::optional<ActionTable> table;
  const auto& c = *loaded.carrier;
  if (j.contains("maps")) {
    std::vector<PointMap> maps(c.size());
    std::vector<bool> seen(c.size(), false);
    for (const auto& [s, list] : j.at("maps").items()) {
      const auto e = c.at(s);
      maps[e] = images(list);
      seen[e] = true;
    }
    for (Element s = 0; s < c.size(); ++s) {
      if (!seen[s]) bad("action maps miss element " + c.label(s));
    }
    table.emplace(loaded.carrier, labels, std::move(maps));
  } else {
    const auto& g = field(j, "generators", "action");
    std::vector<PointMap> gen_maps(c.generators().size());
    std::vector<bool> seen(gen_maps.size(), false);
    for (const auto& [name, list] : g.items()) {
      const auto e = c.at(name);
      std::size_t slot = gen_maps.size();
      for (std::size_t i = 0; i < c.generators().size(); ++i) {
        if (c.generators()[i] == e) slot = i;
      }
      if (slot == gen_maps.size()) bad("'" + name + "' is not a generator of the carrier");
      gen_maps[slot] = images(list);
      seen[slot] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) bad("action misses generator " + c.label(c.generators()[i]));
    }
    table.emplace(ActionTable::from_generators(loaded.carrier, labels, gen_maps));
  }
  if (j.contains("coordinates")) {
    const auto& co = j.at("coordinates");
    auto names = string_list(field(co, "labels", "coordinates"), "coordinate labels");
    const auto& vals = field(co, "values", "coordinates");
    std::vector<std::vector<int>> values(labels.size());
    for (std::size_t p = 0; p < labels.size(); ++p) {
      const json& row = vals.is_array() ? vals.at(p) : vals.at(labels[p]);
      values[p] = row.get<std::vector<int>>();
    }
    table->set_coordinates(std::move(names), std::move(values));
  }
  return std::move(*table);
}

}  // namespace shadowlab::io
