#include "shadowlab/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shadowlab/json_io.hpp"
#include "shadowlab/stability.hpp"

namespace shadowlab::cli {

using nlohmann::json;

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::cap_exceeded:
    case Errc::horizon_insufficient:
    case Errc::window_escapes_horizon:
      return kHorizon;
    case Errc::parse_error:
    case Errc::invalid_argument:
    case Errc::label_collision:
    case Errc::space_mismatch:
    case Errc::associativity_violation:
    case Errc::tree_mismatch:
    case Errc::depth_mismatch:
      return kUsage;
    default:
      return kFalsified;
  }
}

namespace {

struct Options {
  std::uint64_t seed = 0;
  std::size_t horizon = 8;
  std::optional<unsigned> depth;
  std::string format = "table";
  bool timing = false;

  std::vector<std::string> semigroups;
  std::size_t alphabet = 2;
  std::string subshift, po, point, builtin = "even", window;
  std::string k_set, sigma, e, v, u, w;
  std::string alpha, beta, h, mode;
  std::string machine, generators, from, to, out_path;
  std::optional<unsigned> level;
  unsigned n0 = 1, arity = 2;
  std::size_t limit = 16, samples = 50;
  bool genuine = false, product = false;
};

std::vector<std::string> split_labels(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  if (s.front() == '[') {
    for (const auto& v : io::read_json_arg(s)) out.push_back(v.get<std::string>());
    return out;
  }
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<std::string> labels_of(const Carrier& c, const ElementSet& k) {
  std::vector<std::string> out;
  for (Element e : k) out.push_back(c.label(e));
  return out;
}

json pair_or_null(const auto& opt, auto&& f) { return opt ? f(*opt) : json(nullptr); }

class Session {
 public:
  explicit Session(Options o) : o_(std::move(o)) {}

  RunReport& report() { return r_; }
  Fnv1a& digest() { return digest_; }

  int dispatch(const std::string& group, const std::string& cmd) {
    if (group == "sgp") {
      if (cmd == "check") return sgp_check();
      if (cmd == "cover") return sgp_cover();
      if (cmd == "glue") return sgp_glue();
    } else if (group == "shift") {
      if (cmd == "expansivity") return shift_expansivity();
      if (cmd == "enum") return shift_enum();
      if (cmd == "member") return shift_member();
    } else if (group == "shadow") {
      if (cmd == "verify") return shadow_verify();
      if (cmd == "trace") return shadow_trace();
      if (cmd == "params") return shadow_params();
      if (cmd == "counterexample") return shadow_counterexample();
    } else if (group == "stab") {
      if (cmd == "solve") return stab_solve();
      if (cmd == "verify") return stab_verify();
    } else if (group == "tree") {
      if (cmd == "orbit") return tree_orbit();
      if (cmd == "transitivity") return tree_transitivity();
      if (cmd == "rho") return tree_rho();
      if (cmd == "witness") return tree_witness();
      if (cmd == "minimal") return tree_minimal();
    }
    throw Error(Errc::invalid_argument, "unknown command " + group + " " + cmd);
  }

 private:
  // Reads inline JSON or a file, folding the bytes into the inputs digest.
  json input(const std::string& arg, const char* what) {
    if (arg.empty()) throw Error(Errc::invalid_argument, std::string("missing --") + what);
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return io::read_json_arg(arg);
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw Error(Errc::parse_error, "cannot open " + arg);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto text = buf.str();
    digest_.update(text);
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(Errc::parse_error, arg + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
  }

  json entourage_arg(const std::string& arg, const char* what) {
    if (arg.empty()) throw Error(Errc::invalid_argument, std::string("missing --") + what);
    const auto first = arg.find_first_not_of(" \t\n");
    if (arg[first] == '{' || arg.ends_with(".json")) return input(arg, what);
    return json{{"type", "coord"}, {"K", split_labels(arg)}};
  }

  Subshift load_subshift() {
    auto x = io::load_subshift(input(o_.subshift, "subshift"), o_.horizon);
    r_.horizon = x.carrier().horizon();
    return x;
  }

  SemigroupTable load_table(std::size_t i = 0) {
    if (o_.semigroups.size() <= i) throw Error(Errc::invalid_argument, "missing --semigroup");
    return io::load_table(input(o_.semigroups[i], "semigroup"));
  }

  std::vector<std::string> alphabet_labels(std::size_t k) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(std::to_string(i));
    return out;
  }

  // ---------------------------------------------------------------- sgp

  int sgp_check() {
    if (o_.semigroups.empty()) throw Error(Errc::invalid_argument, "missing --semigroup");
    const auto j = input(o_.semigroups.front(), "semigroup");
    std::optional<io::LoadedSemigroup> s;
    try {
      s = io::load_semigroup(j, o_.horizon);
    } catch (const Error& e) {
      if (e.code() != Errc::associativity_violation) throw;
      r_.verdict = "not-associative";
      r_.result = {{"associative", false}, {"witness", e.what()}};
      return kFalsified;
    }
    const auto& c = *s->carrier;
    r_.horizon = c.horizon();
    r_.verdict = "associative";
    r_.result = {{"associative", true}, {"size", c.size()}, {"elements", c.labels()}};
    r_.result["identity"] = c.identity() ? json(c.label(*c.identity())) : json(nullptr);
    if (s->table) {
      const auto st = structural_scan(*s->table);
      auto names = [&](const std::vector<Element>& v) { return labels_of(c, ElementSet(v)); };
      r_.result["left_identities"] = names(st.left_identities);
      r_.result["right_identities"] = names(st.right_identities);
      r_.result["left_zeros"] = names(st.left_zeros);
      r_.result["right_zeros"] = names(st.right_zeros);
      r_.result["zeros"] = names(st.zeros);
    } else {
      r_.result["generators"] = labels_of(c, c.generators());
      r_.result["certified_up_to_horizon"] = *c.horizon();
    }
    return kVerified;
  }

  int sgp_cover() {
    const auto t = load_table();
    const auto lc = left_cover(t);
    r_.result = {{"size", t.size()}};
    if (lc.cover) {
      r_.verdict = "left-cover";
      r_.result["cover"] = labels_of(t.carrier(), *lc.cover);
      r_.result["cover_size"] = lc.cover->size();
      return kVerified;
    }
    r_.verdict = "no-left-cover";
    r_.result["cover"] = nullptr;
    r_.result["outside_square"] = t.labels()[*lc.outside_square];
    return kFalsified;
  }

  int sgp_glue() {
    if (o_.semigroups.size() < 2) throw Error(Errc::invalid_argument, "glue needs at least two --semigroup inputs");
    std::vector<SemigroupTable> parts;
    for (std::size_t i = 0; i < o_.semigroups.size(); ++i) parts.push_back(load_table(i));
    const auto g = glued_union(parts);
    const auto lc = left_cover(g);
    const std::size_t cover = lc.cover ? lc.cover->size() : 0;
    r_.result = {{"parts", parts.size()},
                 {"size", g.size()},
                 {"minimal_cover_size", cover},
                 {"cover", lc.cover ? json(labels_of(g.carrier(), *lc.cover)) : json(nullptr)},
                 {"semigroup", io::to_json(g)}};
    if (!o_.out_path.empty()) {
      std::ofstream f(o_.out_path);
      f << io::to_json(g).dump(2) << "\n";
    }
    const bool ok = cover == parts.size();
    r_.verdict = ok ? "cover-size-equals-parts" : "cover-size-differs";
    return ok ? kVerified : kFalsified;
  }

  // -------------------------------------------------------------- shift

  int shift_expansivity() {
    const auto t = load_table();
    const auto v = full_shift_expansivity_window(t, o_.alphabet);
    const auto letters = alphabet_labels(o_.alphabet);
    r_.result = {{"size", t.size()}, {"alphabet", o_.alphabet}};
    r_.result["window"] = v.window ? json(labels_of(t.carrier(), *v.window)) : json(nullptr);
    r_.result["witness"] = pair_or_null(v.witness, [&](const auto& p) {
      return json::array({io::format_configuration(p.first, letters), io::format_configuration(p.second, letters)});
    });
    r_.result["outside_square"] = v.outside_square ? json(t.labels()[*v.outside_square]) : json(nullptr);
    r_.result["verified"] = v.verified ? json(*v.verified) : json(nullptr);
    r_.verdict = v.window ? "expansive" : "not-expansive";
    return v.window ? kVerified : kFalsified;
  }

  int shift_enum() {
    const auto x = load_subshift();
    const ShiftSystem sys(x);
    json pts = json::array();
    for (std::size_t i = 0; i < sys.points().size() && i < o_.limit; ++i) {
      pts.push_back(io::format_configuration(sys.points()[i], x.alphabet()));
    }
    r_.verdict = "enumerated";
    r_.result = {{"count", sys.points().size()}, {"points", pts}, {"truncated", sys.points().size() > o_.limit}};
    return kVerified;
  }

  int shift_member() {
    const auto x = load_subshift();
    if (o_.point.empty()) throw Error(Errc::invalid_argument, "missing --point");
    const json pj = o_.point.front() == '{' || o_.point.front() == '[' ? io::read_json_arg(o_.point) : json(o_.point);
    const auto cfg = io::load_configuration(pj, x.carrier(), x.alphabet());
    const auto m = sft_membership(x, cfg);
    r_.verdict = m.member ? "member" : "not-member";
    r_.result = {{"member", m.member}, {"checked", m.checked}, {"skipped", m.skipped}};
    r_.result["violation"] = m.violation ? json(x.carrier().label(*m.violation)) : json(nullptr);
    return m.member ? kVerified : kFalsified;
  }

  // ------------------------------------------------------------- shadow

  int shadow_verify() {
    const ShiftSystem sys(load_subshift());
    const auto po = io::load_pseudo_orbit(input(o_.po, "po"), sys);
    const auto& c = sys.carrier();
    const auto k = c.parse_set(split_labels(o_.k_set));
    const auto v = io::load_entourage(entourage_arg(o_.v, "V"), sys);
    const auto pv = is_pseudo_orbit(sys, po, k, v);
    r_.verdict = pv.ok ? "pseudo-orbit" : "not-pseudo-orbit";
    r_.result = {{"pseudo_orbit", pv.ok}, {"checked", pv.checked}, {"skipped", pv.skipped}};
    r_.result["violation"] = pair_or_null(pv.violation, [&](const auto& p) {
      return json{{"k", c.label(p.first)}, {"s", c.label(p.second)}};
    });
    return pv.ok ? kVerified : kFalsified;
  }

  int shadow_trace() {
    const ShiftSystem sys(load_subshift());
    const auto po = io::load_pseudo_orbit(input(o_.po, "po"), sys);
    const auto u = io::load_entourage(entourage_arg(o_.u, "U"), sys);
    const auto tr = trace_report(sys, po, u, o_.genuine);
    json pts = json::array();
    for (auto i : tr.tracing_points) pts.push_back(io::format_configuration(sys.points()[i], sys.alphabet()));
    r_.verdict = std::string(to_string(tr.verdict));
    r_.result = {{"verdict", r_.verdict}, {"tracing_points", pts}, {"horizon", tr.horizon ? json(*tr.horizon) : json(nullptr)}};
    r_.result["point"] = pts.empty() ? json(nullptr) : pts.front();
    if (!sys.carrier().left_identities().empty()) {
      // The candidate built from the pseudo-orbit's values at a left identity.
      const auto cand = trace_point_sft(sys.carrier(), po);
      const auto tv = is_traced(sys, po, cand, u);
      r_.result["candidate"] = io::format_configuration(cand, sys.alphabet());
      r_.result["candidate_traces"] = tv.traced;
      r_.result["violation"] = tv.violation ? json(sys.carrier().label(*tv.violation)) : json(nullptr);
    }
    switch (tr.verdict) {
      case TraceOutcome::traced: return kVerified;
      case TraceOutcome::not_traced: return kFalsified;
      case TraceOutcome::horizon_limited: return kHorizon;
    }
    return kFalsified;
  }

  int shadow_params() {
    std::optional<Subshift> x;
    if (!o_.subshift.empty()) {
      x.emplace(load_subshift());
    } else {
      auto c = io::naturals(o_.horizon);
      r_.horizon = o_.horizon;
      x.emplace(Subshift::full(c, alphabet_labels(o_.alphabet), ElementSet{c->at("e")}));
    }
    const ShiftSystem sys(*x);
    const auto& c = sys.carrier();
    const auto sigma = c.parse_set(split_labels(o_.sigma.empty() ? std::string("a") : o_.sigma));
    const auto k = c.parse_set(split_labels(o_.k_set));
    const auto w = io::load_entourage(entourage_arg(o_.w.empty() ? std::string("e") : o_.w, "W"), sys);
    const auto chain = sigma_to_general_params(sys, sigma, k, w);
    std::vector<std::string> coords = c.labels();
    json links = json::array();
    for (const auto& e : chain.chain) links.push_back(io::to_json(e, coords, {}));
    Rng rng(o_.seed);
    std::size_t passed = 0;
    json failure = nullptr;
    for (std::size_t i = 0; i < o_.samples; ++i) {
      const auto po = random_pseudo_orbit(sys, sigma, chain.v, rng, 4 * c.size());
      const auto pv = is_pseudo_orbit(sys, po, k, w);
      if (pv.ok) {
        ++passed;
      } else if (failure.is_null()) {
        failure = {{"sample", i}, {"k", c.label(pv.violation->first)}, {"s", c.label(pv.violation->second)}};
      }
    }
    const bool ok = passed == o_.samples;
    r_.verdict = ok ? "parameters-verified" : "parameters-falsified";
    r_.result = {{"n", chain.n}, {"V", io::to_json(chain.v, coords, {})}, {"chain", links},
                 {"samples", o_.samples}, {"passed", passed}, {"failure", failure}};
    return ok ? kVerified : kFalsified;
  }

  int shadow_counterexample() {
    if (o_.builtin != "even") throw Error(Errc::invalid_argument, "the only builtin non-SFT is 'even'");
    const auto x = even_shift(o_.horizon);
    r_.horizon = o_.horizon;
    const auto& c = x.carrier();
    const auto window = o_.window.empty() ? c.ball(std::min<std::size_t>(4, o_.horizon)) : c.parse_set(split_labels(o_.window));
    const auto approx = sft_approximation(x, window);
    r_.result = {{"builtin", o_.builtin}, {"window", labels_of(c, window)}, {"x_points", x.points().size()},
                 {"z_points", approx.z_points.size()}, {"z_contains_x", approx.contains_x}};
    if (!approx.separating) {
      r_.verdict = "no-counterexample";
      r_.result["separating"] = nullptr;
      return kFalsified;
    }
    const auto po = pseudo_orbit_from_approximant(x, *approx.separating, window);
    const auto tracers = tracing_search(x, po, coord(ElementSet{c.at("e")}));
    r_.result["separating"] = io::format_configuration(*approx.separating, x.alphabet());
    r_.result["pseudo_orbit"] = io::to_json(po, x);
    r_.result["tracers"] = tracers.size();
    const bool ok = tracers.empty();
    r_.verdict = ok ? "shadowing-fails" : "traced";
    return ok ? kVerified : kFalsified;
  }

  // --------------------------------------------------------------- stab

  std::pair<ActionTable, ActionTable> load_pair() {
    auto a = io::load_action(input(o_.alpha, "alpha"), o_.horizon);
    auto b = io::load_action(input(o_.beta, "beta"), o_.horizon);
    r_.horizon = a.carrier().horizon();
    return {std::move(a), std::move(b)};
  }

  json map_json(const ActionTable& a, const PointMap& h) {
    json out = json::object();
    for (std::size_t x = 0; x < h.size(); ++x) out[a.point_labels()[x]] = a.point_labels()[h[x]];
    return out;
  }

  json quality_json(const ActionTable& a, const ActionTable& b, const PointMap& h, const Entourage& e) {
    const auto mode = o_.mode == "surjective" ? QualityMode::surjective_minimal : QualityMode::injective;
    const auto q = verify_conjugacy_quality(h, a, b, mode, e);
    json out{{"mode", std::string(to_string(mode))}, {"ok", q.ok}, {"premise_verified", q.premise_verified}};
    out["collision"] = pair_or_null(q.collision, [&](const auto& p) {
      return json::array({a.point_labels()[p.first], a.point_labels()[p.second]});
    });
    out["missed"] = q.missed ? json(a.point_labels()[*q.missed]) : json(nullptr);
    return out;
  }

  json closeness_json(const ActionTable& a, const PointMap& h, const Entourage& u, bool& ok) {
    if (!a.carrier().identity()) return nullptr;
    const auto cv = verify_stability_closeness(a, h, u);
    ok = ok && cv.ok;
    return {{"ok", cv.ok}, {"violation", cv.violation ? json(a.point_labels()[*cv.violation]) : json(nullptr)}};
  }

  int stab_solve() {
    const auto [alpha, beta] = load_pair();
    SemiconjugacyParams p;
    p.e = io::load_entourage(entourage_arg(o_.e, "E"), alpha);
    p.v = io::load_entourage(entourage_arg(o_.v, "V"), alpha);
    p.w = io::load_entourage(entourage_arg(o_.w, "W"), alpha);
    p.k = alpha.carrier().parse_set(split_labels(o_.k_set));
    const auto u = o_.u.empty() ? p.e : io::load_entourage(entourage_arg(o_.u, "U"), alpha);
    const auto sol = semiconjugacy_solve(alpha, beta, p);
    bool ok = sol.verified;
    r_.result = {{"h", map_json(alpha, sol.h)}, {"verified", sol.verified}};
    r_.result["violation"] = pair_or_null(sol.violation, [&](const auto& v) {
      return json{{"s", alpha.carrier().label(v.first)}, {"x", alpha.point_labels()[v.second]}};
    });
    r_.result["closeness"] = closeness_json(alpha, sol.h, u, ok);
    r_.result["quality"] = quality_json(alpha, beta, sol.h, p.e);
    r_.verdict = ok ? "semiconjugacy" : "semiconjugacy-failed";
    return ok ? kVerified : kFalsified;
  }

  int stab_verify() {
    const auto [alpha, beta] = load_pair();
    const auto h = io::load_point_map(input(o_.h, "h"), alpha);
    const auto viol = check_semiconjugacy(alpha, beta, h);
    bool ok = !viol;
    r_.result = {{"h", map_json(alpha, h)}, {"semiconjugacy", !viol}};
    r_.result["violation"] = pair_or_null(viol, [&](const auto& v) {
      return json{{"s", alpha.carrier().label(v.first)}, {"x", alpha.point_labels()[v.second]}};
    });
    if (!o_.u.empty()) {
      r_.result["closeness"] = closeness_json(alpha, h, io::load_entourage(entourage_arg(o_.u, "U"), alpha), ok);
    }
    if (!o_.mode.empty()) {
      const Entourage e = o_.e.empty() ? Entourage(RelationEntourage::diagonal(alpha.size()))
                                       : io::load_entourage(entourage_arg(o_.e, "E"), alpha);
      r_.result["quality"] = quality_json(alpha, beta, h, e);
      ok = ok && r_.result["quality"]["ok"].get<bool>();
    }
    r_.verdict = ok ? "verified" : "falsified";
    return ok ? kVerified : kFalsified;
  }

  // --------------------------------------------------------------- tree

  struct TreeInput {
    MealyMachine machine;
    std::vector<std::string> names;
    std::vector<TreeEndomorphism> gens;
  };

  TreeInput load_tree(unsigned depth) {
    TreeInput t;
    t.machine = o_.machine.empty() ? MealyMachine::grigorchuk() : io::load_mealy(input(o_.machine, "machine"));
    const auto all = mealy_endomorphisms(t.machine, depth);
    t.names = o_.generators.empty() ? t.machine.states : split_labels(o_.generators);
    for (const auto& q : t.names) t.gens.push_back(all[t.machine.state(q)]);
    r_.depth = depth;
    return t;
  }

  std::string word_of(const RootedTree& tree, unsigned n, std::size_t v) {
    std::string s;
    for (auto a : tree.word(n, v)) s += std::to_string(a);
    return s;
  }

  int tree_orbit() {
    const auto t = load_tree(o_.depth.value_or(4));
    json levels = json::array();
    bool all = true;
    for (unsigned n = 0; n <= t.gens.front().depth(); ++n) {
      const auto p = level_orbits(t.gens, n);
      json sizes = json::array();
      for (const auto& b : p.blocks) sizes.push_back(b.size());
      levels.push_back({{"level", n}, {"blocks", p.blocks.size()}, {"orbit_sizes", sizes}});
      all = all && p.transitive();
    }
    r_.verdict = all ? "level-transitive" : "not-level-transitive";
    r_.result = {{"generators", t.names}, {"levels", levels}, {"level_transitive", all}};
    return all ? kVerified : kFalsified;
  }

  int tree_transitivity() {
    const unsigned depth = o_.depth.value_or(4);
    const auto t = load_tree(depth);
    const auto& tree = t.gens.front().tree();
    const unsigned top = o_.level.value_or(depth);
    if (top > depth) throw Error(Errc::depth_mismatch, "--level exceeds --depth");
    json levels = json::array();
    bool ok = true;
    for (unsigned n = 1; n <= top; ++n) {
      std::optional<std::pair<std::size_t, std::size_t>> pair;
      if (n == top && (!o_.from.empty() || !o_.to.empty())) {
        auto vertex = [&](const std::string& w) {
          std::vector<unsigned> letters;
          for (char ch : w) letters.push_back(static_cast<unsigned>(ch - '0'));
          if (letters.size() != n) throw Error(Errc::invalid_argument, "vertex '" + w + "' is not on level " + std::to_string(n));
          return tree.vertex(letters);
        };
        pair = std::pair{o_.from.empty() ? std::size_t{0} : vertex(o_.from),
                         o_.to.empty() ? tree.level_size(n) - 1 : vertex(o_.to)};
      }
      const auto w = semigroup_transitivity_from_group(t.gens, n, pair);
      json word = json::array();
      for (auto [g, e] : w.word) word.push_back(json::array({t.names[g], e}));
      levels.push_back({{"level", n},
                        {"transitive", w.transitive},
                        {"from", word_of(tree, n, w.from)},
                        {"to", word_of(tree, n, w.to)},
                        {"n_exponent", w.n_exponent},
                        {"word", word},
                        {"verified", w.verified}});
      ok = ok && w.transitive && w.verified;
    }
    r_.verdict = ok ? "semigroup-transitive" : "not-transitive";
    r_.result = {{"generators", t.names}, {"levels", levels}};
    return ok ? kVerified : kFalsified;
  }

  int tree_rho() {
    const unsigned depth = o_.depth.value_or(o_.n0 + 1);
    r_.depth = depth;
    const auto img = rho_image(o_.arity, depth, o_.n0);
    const bool ok = img.image_size <= img.bound;
    r_.verdict = ok ? "within-bound" : "exceeds-bound";
    r_.result = {{"arity", o_.arity},          {"n0", o_.n0},       {"endomorphisms", img.endomorphisms},
                 {"image_size", img.image_size}, {"bound", img.bound}, {"exact_bound", img.image_size == img.bound}};
    return ok ? kVerified : kFalsified;
  }

  int tree_witness() {
    const auto t = load_tree(o_.depth.value_or(4));
    const auto& tree = t.gens.front().tree();
    const auto w = nonstability_witness(t.gens, o_.n0);
    json beta = json::object();
    for (std::size_t leaf = 0; leaf < w.beta_orbit_sizes.size(); ++leaf) {
      beta[word_of(tree, w.depth, leaf)] = w.beta_orbit_sizes[leaf];
    }
    r_.result = {{"generators", t.names},
                 {"n0", w.n0},
                 {"premise", w.premise},
                 {"alpha_orbit_sizes", w.alpha_orbit_sizes},
                 {"multiplicative", w.multiplicative},
                 {"multiplicativity_pairs", w.multiplicativity_pairs},
                 {"rho_image_size", w.rho_image_size},
                 {"rho_bound", w.rho_bound},
                 {"beta_orbit_sizes", beta},
                 {"beta_bounded", w.beta_bounded},
                 {"sample_ray", word_of(tree, w.depth, w.sample_ray)},
                 {"candidates_checked", w.candidates_checked},
                 {"no_semiconjugacy", w.no_semiconjugacy}};
    r_.result["conflict"] = pair_or_null(w.conflict, [&](const auto& c) {
      return json{{"candidate", word_of(tree, w.depth, c[0])},
                  {"beta_point", word_of(tree, w.depth, c[1])},
                  {"alpha_images", json::array({word_of(tree, w.depth, c[2]), word_of(tree, w.depth, c[3])})}};
    });
    const bool ok = w.holds();
    r_.verdict = ok ? "not-semistable" : "witness-failed";
    return ok ? kVerified : kFalsified;
  }

  int tree_minimal() {
    auto t = load_tree(o_.depth.value_or(4));
    if (o_.product) {
      std::vector<TreeEndomorphism> gens;
      std::vector<std::string> names;
      for (std::size_t i = 0; i < t.gens.size(); ++i) {
        for (std::size_t j = 0; j < t.gens.size(); ++j) {
          gens.push_back(product_embedding(t.gens[i], t.gens[j]));
          names.push_back("(" + t.names[i] + "," + t.names[j] + ")");
        }
      }
      t.gens = std::move(gens);
      t.names = std::move(names);
    }
    const auto m = minimality_check(t.gens);
    r_.verdict = m.minimal ? "minimal" : "not-minimal";
    r_.result = {{"generators", t.names}, {"minimal", m.minimal}, {"block_counts", m.block_counts}};
    r_.result["first_failing_level"] = m.first_failing_level ? json(*m.first_failing_level) : json(nullptr);
    return m.minimal ? kVerified : kFalsified;
  }

  Options o_;
  RunReport r_;
  Fnv1a digest_;
};

void print_table(const RunReport& r, std::ostream& out) {
  out << r.command << ": " << r.verdict << " (exit " << r.exit_code << ")\n";
  if (r.horizon) out << "  horizon: " << *r.horizon << "\n";
  if (r.depth) out << "  depth: " << *r.depth << "\n";
  for (const auto& [k, v] : r.result.items()) {
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << "  " << k << ":\n";
      for (const auto& row : v) out << "    " << row.dump() << "\n";
    } else {
      out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
  if (r.wall_ms) out << "  wall_ms: " << *r.wall_ms << "\n";
}

}  // namespace

RunOutcome run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Expansivity, shadowing and stability on finite and truncated semigroup actions", "shadowlab"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Seed for every random choice");
  app.add_option("--horizon", o.horizon, "Word-length horizon of truncated carriers");
  app.add_option("--depth", o.depth, "Tree depth");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--timing", o.timing, "Record wall time in the report");

  auto group = [&](const char* name, const char* help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [](CLI::App* g, const char* name, const char* help) {
    auto* c = g->add_subcommand(name, help);
    c->fallthrough();
    return c;
  };

  auto* sgp = group("sgp", "Finite semigroups");
  auto* sgp_check = leaf(sgp, "check", "Load a semigroup, re-verify associativity, list structure");
  auto* sgp_cover = leaf(sgp, "cover", "Smallest K with KS = S");
  auto* sgp_glue = leaf(sgp, "glue", "Glued union of semigroups with a new zero");
  for (auto* c : {sgp_check, sgp_cover, sgp_glue}) c->add_option("--semigroup", o.semigroups, "Semigroup JSON")->required();
  sgp_glue->add_option("--out", o.out_path, "Write the glued table here");

  auto* shift = group("shift", "Shift spaces");
  auto* sh_exp = leaf(shift, "expansivity", "Expansivity of the full shift");
  sh_exp->add_option("--semigroup", o.semigroups, "Semigroup JSON")->required();
  sh_exp->add_option("--alphabet", o.alphabet, "Alphabet size");
  auto* sh_enum = leaf(shift, "enum", "Enumerate the points of a subshift");
  auto* sh_member = leaf(shift, "member", "Membership of a configuration");
  for (auto* c : {sh_enum, sh_member}) c->add_option("--subshift", o.subshift, "Subshift JSON")->required();
  sh_enum->add_option("--limit", o.limit, "Points to list");
  sh_member->add_option("--point", o.point, "Configuration")->required();

  auto* shadow = group("shadow", "Pseudo-orbits and tracing");
  auto* sd_verify = leaf(shadow, "verify", "Check the (K,V)-pseudo-orbit condition");
  auto* sd_trace = leaf(shadow, "trace", "Search for tracing points");
  auto* sd_params = leaf(shadow, "params", "Convert (Σ,·) parameters to (K,W) parameters");
  auto* sd_counter = leaf(shadow, "counterexample", "Untraceable pseudo-orbit for a non-SFT");
  for (auto* c : {sd_verify, sd_trace}) {
    c->add_option("--subshift", o.subshift, "Subshift JSON")->required();
    c->add_option("--po", o.po, "Pseudo-orbit JSON")->required();
  }
  sd_verify->add_option("--K", o.k_set, "Elements k, comma separated")->required();
  sd_verify->add_option("--V", o.v, "Entourage")->required();
  sd_trace->add_option("--U", o.u, "Entourage")->required();
  sd_trace->add_flag("--genuine", o.genuine, "Report failures as genuine rather than horizon-limited");
  sd_params->add_option("--subshift", o.subshift, "Subshift JSON (default: full shift over ℕ)");
  sd_params->add_option("--alphabet", o.alphabet, "Alphabet size of the default full shift");
  sd_params->add_option("--sigma", o.sigma, "Generating set Σ");
  sd_params->add_option("--K", o.k_set, "Target set K")->required();
  sd_params->add_option("--W", o.w, "Target entourage W");
  sd_params->add_option("--samples", o.samples, "Seeded pseudo-orbits to check");
  sd_counter->add_option("--builtin", o.builtin, "Non-SFT to use")->check(CLI::IsMember({"even"}));
  sd_counter->add_option("--window", o.window, "Window W");

  auto* stab = group("stab", "Semiconjugacies");
  auto* st_solve = leaf(stab, "solve", "Build h by tracing β-orbits");
  auto* st_verify = leaf(stab, "verify", "Check a given h");
  for (auto* c : {st_solve, st_verify}) {
    c->add_option("--alpha", o.alpha, "Action JSON")->required();
    c->add_option("--beta", o.beta, "Action JSON")->required();
    c->add_option("--U", o.u, "Closeness entourage");
    c->add_option("--E", o.e, "Expansivity entourage");
    c->add_option("--mode", o.mode, "Quality check")->check(CLI::IsMember({"injective", "surjective"}));
  }
  st_solve->add_option("--V", o.v, "Tracing entourage")->required();
  st_solve->add_option("--K", o.k_set, "Pseudo-orbit set K")->required();
  st_solve->add_option("--W", o.w, "Pseudo-orbit entourage")->required();
  st_verify->add_option("--map", o.h, "Point map h as JSON")->required();

  auto* tree = group("tree", "Rooted trees and Mealy machines");
  auto* tr_orbit = leaf(tree, "orbit", "Level orbits");
  auto* tr_trans = leaf(tree, "transitivity", "Positive-word transitivity witnesses");
  auto* tr_rho = leaf(tree, "rho", "Size of the ρ-truncation image");
  auto* tr_witness = leaf(tree, "witness", "Nonstability witness");
  auto* tr_minimal = leaf(tree, "minimal", "Level-transitivity at every level");
  for (auto* c : {tr_orbit, tr_trans, tr_witness, tr_minimal}) {
    c->add_option("--machine", o.machine, "Mealy machine JSON (default: Grigorchuk)");
    c->add_option("--generators", o.generators, "States to use as generators");
  }
  tr_trans->add_option("--level", o.level, "Top level");
  tr_trans->add_option("--from", o.from, "Source vertex word");
  tr_trans->add_option("--to", o.to, "Target vertex word");
  tr_rho->add_option("--arity", o.arity, "Tree arity");
  for (auto* c : {tr_rho, tr_witness}) c->add_option("--n0", o.n0, "Truncation level");
  tr_minimal->add_flag("--product", o.product, "Use the product embeddings (s, s')");

  RunOutcome outcome;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    outcome.exit_code = kVerified;
    return outcome;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    outcome.exit_code = kVerified;
    return outcome;
  } catch (const CLI::ParseError& e) {
    err << "shadowlab: " << e.what() << "\n";
    outcome.exit_code = kUsage;
    outcome.report.verdict = "usage";
    outcome.report.exit_code = kUsage;
    return outcome;
  }

  std::string group_name, cmd_name;
  for (auto* g : app.get_subcommands()) {
    group_name = g->get_name();
    for (auto* c : g->get_subcommands()) cmd_name = c->get_name();
  }

  Session session(o);
  auto& r = session.report();
  r.command = group_name + " " + cmd_name;
  r.seed = o.seed;
  for (const auto& a : args) {
    if (a == "--timing") continue;
    session.digest().update(a);
    session.digest().update(std::string_view("\0", 1));
  }
  const auto start = std::chrono::steady_clock::now();
  int code = kVerified;
  try {
    code = session.dispatch(group_name, cmd_name);
  } catch (const Error& e) {
    code = exit_code_for(e.code());
    r.verdict = std::string(to_string(e.code()));
    r.result = {{"error", e.what()}};
    err << "shadowlab: " << e.what() << "\n";
  } catch (const json::exception& e) {
    code = kUsage;
    r.verdict = "parse-error";
    r.result = {{"error", e.what()}};
    err << "shadowlab: " << e.what() << "\n";
  }
  r.exit_code = code;
  r.inputs_digest = session.digest().hex();
  if (o.timing) {
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  if (o.format == "json") {
    out << emit(r);
  } else {
    print_table(r, out);
  }
  outcome.exit_code = code;
  outcome.report = r;
  return outcome;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr).exit_code;
}

}  // namespace shadowlab::cli
