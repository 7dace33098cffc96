#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "oracles.hpp"
#include "shadowlab/json_io.hpp"
#include "shadowlab/shadowing.hpp"

using namespace shadowlab;

namespace {

ShiftSystem golden_mean(std::size_t horizon) {
  auto c = io::naturals(horizon);
  return ShiftSystem(Subshift::from_forbidden(c, {"0", "1"}, ElementSet{c->at("e"), c->at("a")}, {{1, 1}}));
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("orbits are pseudo-orbits traced by their point") {
  const auto sys = golden_mean(6);
  const auto& c = sys.carrier();
  const ElementSet k{c.at("e"), c.at("a")};
  const Entourage v = coord(ElementSet{c.at("e")});
  for (const auto& x : sys.points()) {
    const auto po = orbit_family(sys, x);
    const auto pv = is_pseudo_orbit(sys, po, k, v);
    CHECK(pv.ok);
    CHECK(pv.skipped == 1);
    CHECK(is_traced(sys, po, x, coord(c.all())).traced);
    CHECK(trace_point_sft(c, po) == x);
  }
}

TEST_CASE("pseudo-orbit violations are located") {
  const auto sys = golden_mean(3);
  const auto& c = sys.carrier();
  auto po = orbit_family(sys, sys.points()[0]);
  po.family[c.at("a")] = Configuration{1, 0, 0, kUndefinedSymbol};
  const auto pv = is_pseudo_orbit(sys, po, ElementSet{c.at("a")}, coord(ElementSet{c.at("e")}));
  CHECK_FALSE(pv.ok);
  REQUIRE(pv.violation);
  CHECK(pv.violation->first == c.at("a"));
  CHECK(pv.violation->second == c.at("e"));
}

TEST_CASE("seeded pseudo-orbits are deterministic") {
  const auto sys = golden_mean(6);
  const auto& c = sys.carrier();
  const ElementSet k{c.at("e"), c.at("a")};
  const Entourage v = coord(ElementSet{c.at("e")});
  Rng r1(42), r2(42);
  const auto a = random_pseudo_orbit(sys, k, v, r1, 30);
  const auto b = random_pseudo_orbit(sys, k, v, r2, 30);
  CHECK(a == b);
  CHECK(is_pseudo_orbit(sys, a, k, v).ok);
  const auto y = trace_point_sft(c, a);
  CHECK(is_traced(sys, a, y, v).traced);
}

TEST_CASE("tracing needs a left identity") {
  const auto null2 = families::null_semigroup(2);
  PseudoOrbit<Configuration> po{{Configuration{0, 0}, Configuration{0, 0}}};
  CHECK(code_of([&] { trace_point_sft(null2.carrier(), po); }) == Errc::no_left_identity);
}

TEST_CASE("Σ-ball depth and parameter chains") {
  const auto sys = golden_mean(4);
  const auto& c = sys.carrier();
  const ElementSet sigma{c.at("a")};
  CHECK(sigma_ball_depth(c, sigma, ElementSet{c.at("aa")}) == 2);
  CHECK(sigma_ball_depth(c, sigma, ElementSet{c.at("a"), c.at("aaa")}) == 3);
  CHECK(code_of([&] { sigma_ball_depth(c, sigma, ElementSet{c.at("e")}); }) == Errc::k_not_in_ball);

  const auto chain = sigma_to_general_params(sys, sigma, ElementSet{c.at("aa")}, coord(ElementSet{c.at("e")}));
  CHECK(chain.n == 2);
  CHECK(chain.v == coord(ElementSet{c.at("e"), c.at("a")}));
  REQUIRE(chain.chain.size() == 2);
  CHECK(chain.chain[1] == coord(ElementSet{c.at("e")}));
  CHECK_THROWS_AS(sigma_to_general_params(sys, sigma, ElementSet{c.at("aa")}, RelationEntourage::diagonal(3)), Error);
}

TEST_CASE("relation parameter chain on a finite action") {
  // Z3 rotating three points.
  const auto z3 = families::cyclic_group(3);
  auto c = std::make_shared<const Carrier>(z3.carrier());
  const ActionTable rot(c, {"p", "q", "r"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  const Entourage w = RelationEntourage::from_pairs(3, {{0, 1}, {1, 2}});
  const auto chain = sigma_to_general_params(rot, ElementSet{1}, ElementSet{2}, w);
  CHECK(chain.n == 2);
  for (const auto& vi : chain.chain) CHECK(is_symmetric(vi));
  CHECK(is_subset(power(chain.chain.back(), 2), w));
  // Each level pulls back through the generator.
  for (std::size_t i = 0; i + 1 < chain.chain.size(); ++i) {
    const auto vi = rot.as_relation(chain.chain[i]);
    const auto vn = rot.as_relation(chain.chain[i + 1]);
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = 0; y < 3; ++y)
        if (vi.contains(x, y)) CHECK(vn.contains(rot.act(1, x), rot.act(1, y)));
  }
}

TEST_CASE("equicontinuous tracing") {
  const auto z2 = families::cyclic_group(2);
  auto c = std::make_shared<const Carrier>(z2.carrier());
  const ActionTable swap(c, {"p", "q"}, {{0, 1}, {1, 0}});
  const auto po = orbit_family(swap, std::size_t{1});
  const Entourage d = RelationEntourage::diagonal(2);
  const auto t = trace_point_equicontinuous(swap, po, ElementSet{1}, d, d);
  CHECK(t.point == 1);
  CHECK(t.premise_met);
  CHECK(t.trace.traced);

  const auto rz = families::right_zero(2);
  const ActionTable fixed(std::make_shared<const Carrier>(rz.carrier()), {"p"}, {{0}, {0}});
  const PseudoOrbit<std::size_t> fpo{{0, 0}};
  CHECK(code_of([&] {
          trace_point_equicontinuous(fixed, fpo, ElementSet{0}, RelationEntourage::diagonal(1),
                                     RelationEntourage::diagonal(1));
        }) == Errc::not_a_monoid);
}

TEST_CASE("trace report verdicts") {
  const auto sys = golden_mean(3);
  const auto& c = sys.carrier();
  const auto po = orbit_family(sys, sys.points()[2]);
  const auto ok = trace_report(sys, po, coord(c.all()));
  CHECK(ok.verdict == TraceOutcome::traced);
  CHECK(ok.tracing_points == std::vector<std::size_t>{2});

  PseudoOrbit<Configuration> bad{std::vector<Configuration>(c.size(), Configuration{1, 1, 1, 1})};
  const auto limited = trace_report(sys, bad, coord(ElementSet{c.at("e")}));
  CHECK(limited.verdict == TraceOutcome::horizon_limited);
  CHECK(limited.horizon == std::optional<std::size_t>(3));
  CHECK(trace_report(sys, bad, coord(ElementSet{c.at("e")}), true).verdict == TraceOutcome::not_traced);
  CHECK(to_string(TraceOutcome::horizon_limited) == "horizon-limited");
}

TEST_CASE("SFT approximation of the even shift") {
  const auto x = even_shift(6);
  const auto& c = x.carrier();
  const ElementSet w{c.at("e"), c.at("a"), c.at("aa")};
  const auto ap = sft_approximation(x, w);
  CHECK(ap.contains_x);
  CHECK(ap.z_points.size() >= x.points().size());
  CHECK(ap.outside == ap.z_points.size() - x.points().size());
  REQUIRE(ap.separating);
  CHECK_FALSE(x.contains(*ap.separating));
  const auto po = pseudo_orbit_from_approximant(x, *ap.separating, w);
  CHECK(po.family.size() == c.size());
  for (const auto& m : po.family) CHECK(x.contains(m));
  // Each member shows the approximant's window pattern.
  for (Element s = 0; s < c.size(); ++s) {
    const auto sz = x.act(s, *ap.separating);
    CHECK(agree_on(po.family[s], sz, w));
  }
}
