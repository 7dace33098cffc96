// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every check is exact; the only tolerance is the per-criterion time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "oracles.hpp"
#include "shadowlab/json_io.hpp"
#include "shadowlab/stability.hpp"
#include "shadowlab/trees.hpp"

using namespace shadowlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

// Collects the first failure message; later checks still run.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      first_ = what;
    }
  }
  Outcome done(const std::string& summary) const { return {pass_, pass_ ? summary : first_ + "; " + summary}; }

 private:
  bool pass_ = true;
  std::string first_;
};

std::shared_ptr<const Carrier> carrier_of(const SemigroupTable& t) { return std::make_shared<const Carrier>(t.carrier()); }

ShiftSystem full_shift(std::shared_ptr<const Carrier> c) {
  return ShiftSystem(Subshift::full(c, {"0", "1"}, ElementSet{0}));
}

std::vector<std::vector<std::size_t>> rows_of(const SemigroupTable& t) { return t.rows(); }

ShiftSystem golden_mean(std::size_t horizon) {
  auto c = io::naturals(horizon);
  return ShiftSystem(Subshift::from_forbidden(c, {"0", "1"}, ElementSet{c->at("e"), c->at("a")}, {{1, 1}}));
}

// ------------------------------------------------------------------ criteria

Outcome ac1() {
  Check ck;
  std::size_t systems = 0, entourages = 0;
  for (const auto& [name, t] : catalog::small_semigroups()) {
    if (t.size() > 4) continue;
    ++systems;
    const auto sys = full_shift(carrier_of(t));
    const auto verdict = full_shift_expansivity_window(t, 2);
    bool some_expansive = false;
    for (std::size_t mask = 0; mask < (std::size_t{1} << t.size()); ++mask) {
      std::vector<Element> k;
      for (Element e = 0; e < t.size(); ++e) {
        if (mask >> e & 1u) k.push_back(e);
      }
      ++entourages;
      const bool expansive = is_expansivity_entourage(sys, coord(ElementSet(k))).expansive;
      ck.expect(expansive == oracle::left_covers(rows_of(t), k), name + ": E_K expansive iff KS = S fails");
      some_expansive = some_expansive || expansive;
    }
    ck.expect(verdict.window.has_value() == some_expansive, name + ": window verdict disagrees with exhaustive search");
    if (verdict.window) {
      ck.expect(is_expansivity_entourage(sys, coord(*verdict.window)).expansive, name + ": returned window not expansive");
    } else {
      ck.expect(verdict.witness.has_value(), name + ": no witness pair");
    }
  }
  ck.expect(systems >= 8, "catalog too small");
  return ck.done(std::to_string(systems) + " semigroups, " + std::to_string(entourages) + " coordinate entourages");
}

Outcome ac2() {
  Check ck;
  using namespace families;
  const std::vector<SemigroupTable> pool{trivial_monoid("u"), cyclic_group(2), right_zero(2), saturating_monoid(2)};
  std::string sizes;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto g = glued_union(std::vector<SemigroupTable>(pool.begin(), pool.begin() + static_cast<long>(n)));
    const auto lc = left_cover(g);
    const std::size_t got = lc.cover ? lc.cover->size() : 0;
    // Brute force: smallest covering subset.
    std::size_t best = 0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << g.size()); ++mask) {
      std::vector<std::size_t> k;
      for (std::size_t e = 0; e < g.size(); ++e) {
        if (mask >> e & 1u) k.push_back(e);
      }
      if (oracle::left_covers(g.rows(), k) && (best == 0 || k.size() < best)) best = k.size();
    }
    ck.expect(got == n && best == n, "n=" + std::to_string(n) + ": minimal cover " + std::to_string(got));
    sizes += (sizes.empty() ? "" : ",") + std::to_string(got);
  }
  return ck.done("minimal |K| for n=2,3,4: " + sizes);
}

Outcome ac3() {
  Check ck;
  const auto sys = golden_mean(8);
  const auto x = Subshift::from_forbidden(sys.carrier_ptr(), {"0", "1"}, ElementSet{0, 1}, {{1, 1}});
  const auto& c = sys.carrier();
  const ElementSet t{c.at("e"), c.at("a")};
  const Entourage eh = coord(ElementSet{c.at("e")});
  ck.expect(sys.points().size() == oracle::golden_count(c.size()), "golden mean point count");
  std::size_t ok = 0, perturbed = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    auto po = random_pseudo_orbit(sys, t, eh, rng, 40);
    ck.expect(is_pseudo_orbit(sys, po, t, eh).ok, "seed " + std::to_string(seed) + " is not a pseudo-orbit");
    if (tracing_search(sys, po, coord(c.all())).empty()) ++perturbed;
    const auto y = trace_point_sft(c, po);
    if (sft_membership(x, y).member && is_traced(sys, po, y, eh).traced) ++ok;
  }
  ck.expect(ok == 500, std::to_string(ok) + "/500 traced");
  ck.expect(perturbed > 0, "no pseudo-orbit differs from a true orbit");
  return ck.done(std::to_string(ok) + "/500 traced, " + std::to_string(perturbed) + " not true orbits");
}

Outcome ac4() {
  Check ck;
  const std::size_t horizon = 8;
  const auto x = even_shift(horizon);
  const auto& c = x.carrier();
  std::vector<oracle::Word> words;
  for (auto& w : oracle::all_words(horizon + 1)) {
    if (oracle::even(w)) words.push_back(w);
  }
  const auto x_count = oracle::even_count(horizon + 1);
  ck.expect(words.size() == x_count && x.points().size() == x_count, "even shift point count");
  std::size_t windows = 0;
  std::string counts;
  for (std::size_t mask = 0; mask < 16; ++mask) {
    std::vector<std::size_t> offsets{0};
    for (std::size_t i = 1; i <= 4; ++i) {
      if (mask >> (i - 1) & 1u) offsets.push_back(i);
    }
    std::vector<Element> w;
    for (auto o : offsets) w.push_back(c.at(o == 0 ? std::string("e") : std::string(o, 'a')));
    const ElementSet window(w);
    ++windows;
    const auto approx = sft_approximation(x, window);
    const auto z_count = oracle::window_count(horizon + 1, offsets, oracle::observed_patterns(words, offsets));
    const std::string tag = "W=" + std::to_string(mask);
    ck.expect(approx.z_points.size() == z_count, tag + ": |Z| " + std::to_string(approx.z_points.size()) +
                                                       " vs oracle " + std::to_string(z_count));
    ck.expect(approx.contains_x && z_count > x_count, tag + ": Z does not strictly contain X");
    ck.expect(approx.separating.has_value(), tag + ": no separating point");
    if (!approx.separating) continue;
    const auto po = pseudo_orbit_from_approximant(x, *approx.separating, window);
    ck.expect(tracing_search(x, po, coord(ElementSet{c.at("e")})).empty(), tag + ": pseudo-orbit is traced");
    if (mask == 15) counts = "|X|=" + std::to_string(x_count) + ", |Z| at W={ε..a⁴}=" + std::to_string(z_count);
  }
  return ck.done(std::to_string(windows) + " windows, " + counts);
}

Outcome ac5() {
  Check ck;
  std::size_t systems = 0, runs = 0;
  auto probe = [&](const std::string& name, const ShiftSystem& sys, const ElementSet& k) {
    const Entourage e = coord(k);
    if (!is_expansivity_entourage(sys, e).expansive) return;
    const Entourage v = e;  // coordinate entourages are idempotent: V∘V = V ⊆ E
    ck.expect(is_subset(compose(v, v), e), name + ": V∘V not inside E");
    ++systems;
    const auto all = sys.carrier().all();
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Rng rng(seed);
      auto po = random_pseudo_orbit(sys, all, v, rng, 30);
      ++runs;
      ck.expect(tracing_search(sys, po, v).size() <= 1, name + ": two tracing points at seed " + std::to_string(seed));
    }
  };
  for (const auto& [name, t] : catalog::small_semigroups()) {
    if (t.size() > 4) continue;
    const auto verdict = full_shift_expansivity_window(t, 2);
    if (verdict.window) probe(name, full_shift(carrier_of(t)), *verdict.window);
  }
  const auto gm = golden_mean(8);
  probe("golden-mean", gm, ElementSet{gm.carrier().at("e")});
  return ck.done(std::to_string(systems) + " expansive systems, " + std::to_string(runs) + " pseudo-orbits");
}

Outcome ac6() {
  Check ck;
  auto c = io::naturals(8);
  const ShiftSystem sys(Subshift::full(c, {"0", "1"}, ElementSet{0}));
  const ElementSet sigma{c->at("a")};
  const ElementSet k{c->at("aa"), c->at("aaa")};
  const Entourage w = coord(ElementSet{c->at("e")});
  const auto chain = sigma_to_general_params(sys, sigma, k, w);
  ck.expect(chain.v == coord(ElementSet{c->at("e"), c->at("a"), c->at("aa")}), "V differs from E_{ε,a,a²}");
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    auto po = random_pseudo_orbit(sys, sigma, chain.v, rng, 40);
    if (is_pseudo_orbit(sys, po, sigma, chain.v).ok && is_pseudo_orbit(sys, po, k, w).ok) ++ok;
  }
  ck.expect(ok == 200, std::to_string(ok) + "/200");
  return ck.done("V = E_{ε,a,a²}, " + std::to_string(ok) + "/200 (K,W)-pseudo-orbits");
}

Outcome ac7() {
  Check ck;
  // Golden mean over the saturating monoid {e, a, ..., a⁸}: 55 points.
  auto c = carrier_of(families::saturating_monoid(8));
  const auto x = Subshift::from_forbidden(c, {"0", "1"}, ElementSet{0, 1}, {{1, 1}});
  const auto alpha = ActionTable::from_shift(ShiftSystem(x));
  ck.expect(alpha.size() == 55, "expected 55 points, got " + std::to_string(alpha.size()));
  SemiconjugacyParams p{coord(ElementSet{0}), coord(ElementSet{0}), ElementSet{0, 1}, coord(ElementSet{0})};

  // Identity fixpoint.
  const auto id = semiconjugacy_solve(alpha, alpha, p);
  bool identity = id.verified;
  for (std::size_t i = 0; i < id.h.size(); ++i) identity = identity && id.h[i] == i;
  ck.expect(identity, "solver on (α, α) is not the identity");

  // β = φαφ⁻¹ with φ swapping two points that differ only at a⁴.
  const auto p0 = *alpha.find_point("000000000");
  const auto p1 = *alpha.find_point("000010000");
  PointMap phi(alpha.size());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = i;
  std::swap(phi[p0], phi[p1]);
  const auto beta = alpha.conjugate(phi);
  ck.expect(beta.maps() != alpha.maps(), "perturbation left α unchanged");
  const auto sol = semiconjugacy_solve(alpha, beta, p);
  ck.expect(sol.verified && !check_semiconjugacy(alpha, beta, sol.h), "α_s∘h = h∘β_s fails");
  ck.expect(sol.h == phi, "h differs from the conjugating swap");
  ck.expect(verify_stability_closeness(alpha, sol.h, p.e).ok, "closeness with U = E fails");
  ck.expect(verify_stability_closeness(alpha, sol.h, coord(ElementSet{})).ok, "closeness with U ⊋ E fails");
  return ck.done("identity fixpoint, perturbed pair solved with h = φ on 55 points");
}

Outcome ac8() {
  Check ck;
  const auto r1 = rho_image(2, 3, 1);
  const auto r2 = rho_image(2, 3, 2);
  ck.expect(r1.endomorphisms == 16384, "End(T_2) at depth 3 should have 4^7 elements");
  ck.expect(r1.image_size == 4 && r1.bound == 4, "n0=1 image " + std::to_string(r1.image_size));
  ck.expect(r2.bound == 256 && r2.image_size <= 256 && r2.image_size == 64, "n0=2 image " + std::to_string(r2.image_size));
  return ck.done("n0=1: " + std::to_string(r1.image_size) + " = " + std::to_string(r1.bound) +
                 "; n0=2: " + std::to_string(r2.image_size) + " <= " + std::to_string(r2.bound));
}

std::vector<TreeEndomorphism> grigorchuk_gens(unsigned depth) {
  const auto all = mealy_endomorphisms(MealyMachine::grigorchuk(), depth);
  return {all[0], all[1], all[2], all[3]};
}

std::string leaf_word(const RootedTree& t, unsigned n, std::size_t v) {
  std::string s;
  for (auto a : t.word(n, v)) s += static_cast<char>('0' + a);
  return s;
}

Outcome ac9() {
  Check ck;
  const auto gens = grigorchuk_gens(5);
  const auto& tree = gens.front().tree();
  std::size_t witnesses = 0;
  for (unsigned n = 1; n <= 5; ++n) {
    const auto p = level_orbits(gens, n);
    ck.expect(p.transitive() && p.blocks.front().size() == (std::size_t{1} << n), "level " + std::to_string(n));
    ck.expect(oracle::grigorchuk_orbit("abcd", std::string(n, '0')).size() == (std::size_t{1} << n),
              "oracle orbit at level " + std::to_string(n));
    for (std::size_t v = 0; v < tree.level_size(n); ++v) {
      const auto w = semigroup_transitivity_from_group(gens, n, std::pair{std::size_t{0}, v});
      bool positive = !w.word.empty() || v == 0;
      std::string image = std::string(n, '0');
      for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
        positive = positive && it->second >= 1;
        for (std::uint64_t i = 0; i < it->second; ++i) image = oracle::grigorchuk("abcd"[it->first], image);
      }
      ck.expect(w.transitive && w.verified && positive && image == leaf_word(tree, n, v),
                "witness 0 -> " + leaf_word(tree, n, v));
      ++witnesses;
    }
  }
  const auto r = nonstability_witness(grigorchuk_gens(4), 1);
  ck.expect(r.holds(), "nonstability witness fails at n0=1, D=4");
  ck.expect(r.rho_image_size <= 4, "ρ-image larger than 4");
  return ck.done("levels 1..5 transitive, " + std::to_string(witnesses) + " positive-word witnesses, no h on " +
                 std::to_string(r.beta_orbit_sizes.size()) + " rays");
}

Outcome ac10() {
  Check ck;
  const auto gens = grigorchuk_gens(4);
  const auto sys = boundary_action(gens, {"a", "b", "c", "d"}, 3);
  const auto sigma = sys.carrier().generators();
  const Entourage v = coord(levels_up_to(4));
  const Entourage u = coord(levels_up_to(2));
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    auto po = random_pseudo_orbit(sys, sigma, v, rng, 40);
    const auto t = trace_point_equicontinuous(sys, po, sigma, v, u);
    if (t.premise_met && t.trace.traced) ++ok;
  }
  ck.expect(ok == 200, std::to_string(ok) + "/200");
  return ck.done(std::to_string(ok) + "/200 traced in E_{levels<=2}, " + std::to_string(sys.carrier().size()) +
                 " carrier elements");
}

Outcome ac11() {
  Check ck;
  const unsigned depth = 5;
  const auto all = mealy_endomorphisms(MealyMachine::grigorchuk(), depth);
  const auto& a = all[0];
  const auto& id = all[4];
  std::vector<std::pair<std::string, std::vector<TreeEndomorphism>>> sets{
      {"grigorchuk", {all[0], all[1], all[2], all[3]}},
      {"identity", {id}},
      {"swap", {a}},
      {"product", {product_embedding(a, id), product_embedding(all[1], all[3]), product_embedding(id, a)}}};
  std::size_t pairs = 0;
  for (const auto& [name, gens] : sets) {
    auto closure = semigroup_closure(gens, 4096);
    closure.push_back(TreeEndomorphism::identity(gens.front().tree_ptr()));
    const auto& tree = gens.front().tree();
    for (unsigned n = 0; n < depth; ++n) {
      const auto p = unseparated_pair(gens, n);
      ck.expect(p.has_value(), name + ": no unseparated pair at n=" + std::to_string(n));
      if (!p) continue;
      ++pairs;
      bool never = p->first != p->second;
      for (const auto& f : closure) {
        const auto x = f.level(depth)[p->first];
        const auto y = f.level(depth)[p->second];
        never = never && tree.ancestor(depth, x, n) == tree.ancestor(depth, y, n);
      }
      ck.expect(never, name + ": pair is separated at n=" + std::to_string(n));
    }
  }
  return ck.done(std::to_string(pairs) + " unseparated pairs across " + std::to_string(sets.size()) + " generator sets");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "full-shift expansivity iff left cover", 10, ac1},
      {2, "glued union minimal cover", 1, ac2},
      {3, "SFT tracing constructor", 30, ac3},
      {4, "even shift shadowing failure", 60, ac4},
      {5, "unique tracing", 30, ac5},
      {6, "Σ to K parameter conversion", 10, ac6},
      {7, "semiconjugacy solver", 60, ac7},
      {8, "ρ-image bound", 5, ac8},
      {9, "Grigorchuk transitivity and nonstability", 60, ac9},
      {10, "equicontinuous tracing", 30, ac10},
      {11, "tree actions are not expansive", 10, ac11},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over budget";
    }
    if (!o.pass) ++failures;
    std::printf("AC%-2d %s  %s: %s (%.2fs / %.0fs)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs,
                c.budget_s);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
