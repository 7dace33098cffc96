#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "shadowlab/stability.hpp"

using namespace shadowlab;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::invalid_argument;
}

// Golden mean shift over {e, a, ..., a^top} with a saturating.
ActionTable golden_mean_action(std::size_t top) {
  auto c = std::make_shared<const Carrier>(families::saturating_monoid(top).carrier());
  const ShiftSystem sys(Subshift::from_forbidden(c, {"0", "1"}, ElementSet{0, 1}, {{1, 1}}));
  return ActionTable::from_shift(sys);
}

PointMap swap_map(std::size_t n, std::size_t p, std::size_t q) {
  PointMap phi(n);
  for (std::size_t i = 0; i < n; ++i) phi[i] = i;
  phi[p] = q;
  phi[q] = p;
  return phi;
}

ActionTable z3_rotation() {
  auto c = std::make_shared<const Carrier>(families::cyclic_group(3).carrier());
  return ActionTable(c, {"100", "010", "001"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
}

SemiconjugacyParams unit_params(const ActionTable& a) {
  const Entourage e0 = coord(a.parse_coordinates({"e"}));
  return {e0, e0, ElementSet{0, 1}, e0};
}

}  // namespace

TEST_CASE("an action is its own fixpoint") {
  const auto alpha = golden_mean_action(4);
  const auto m = semiconjugacy_solve(alpha, alpha, unit_params(alpha));
  CHECK(m.verified);
  for (std::size_t x = 0; x < alpha.size(); ++x) CHECK(m.h[x] == x);
  CHECK(verify_stability_closeness(alpha, m.h, coord(alpha.parse_coordinates({"e"}))).ok);
}

TEST_CASE("a conjugated golden mean action is recovered") {
  const auto alpha = golden_mean_action(4);
  const auto p = *alpha.find_point("00000");
  const auto q = *alpha.find_point("00100");
  const auto phi = swap_map(alpha.size(), p, q);
  const auto beta = alpha.conjugate(phi);
  const auto m = semiconjugacy_solve(alpha, beta, unit_params(alpha));
  CHECK(m.verified);
  CHECK(m.h == phi);
  CHECK_FALSE(check_semiconjugacy(alpha, beta, m.h));
  const auto inj = verify_conjugacy_quality(m.h, alpha, beta, QualityMode::injective, unit_params(alpha).e);
  CHECK(inj.ok);
  CHECK(inj.premise_verified);
  // The swap moves x = 00000 far from h(x) at the coordinate aa.
  const auto all = verify_stability_closeness(alpha, m.h, coord(alpha.parse_coordinates({"e", "a", "aa"})));
  CHECK_FALSE(all.ok);
  CHECK(verify_stability_closeness(alpha, m.h, coord(alpha.parse_coordinates({"e"}))).ok);
}

TEST_CASE("solver premises") {
  const auto alpha = golden_mean_action(4);
  auto params = unit_params(alpha);
  params.e = coord(ElementSet{});
  CHECK(code_of([&] { semiconjugacy_solve(alpha, alpha, params); }) == Errc::premise_unverified);

  const auto far = alpha.conjugate(swap_map(alpha.size(), *alpha.find_point("00000"), *alpha.find_point("10000")));
  CHECK(code_of([&] { semiconjugacy_solve(alpha, far, unit_params(alpha)); }) == Errc::not_in_neighborhood);

  const auto rot = z3_rotation();
  CHECK(code_of([&] { semiconjugacy_solve(alpha, rot, unit_params(alpha)); }) == Errc::space_mismatch);
}

TEST_CASE("quality modes") {
  const auto alpha = golden_mean_action(3);
  const PointMap constant(alpha.size(), 0);
  const auto inj = verify_conjugacy_quality(constant, alpha, alpha, QualityMode::injective, unit_params(alpha).e);
  CHECK_FALSE(inj.ok);
  REQUIRE(inj.collision);
  CHECK(inj.collision->first == 0);
  CHECK(inj.collision->second == 1);

  // The golden mean action has a fixed point, so it is not minimal.
  CHECK_FALSE(is_minimal(alpha));
  const auto s = verify_conjugacy_quality(constant, alpha, alpha, QualityMode::surjective_minimal, coord(ElementSet{}));
  CHECK_FALSE(s.premise_verified);
  CHECK(code_of([&] {
          verify_conjugacy_quality(constant, alpha, alpha, QualityMode::surjective_minimal, coord(ElementSet{}), true);
        }) == Errc::premise_unverified);

  const auto rot = z3_rotation();
  CHECK(is_minimal(rot));
  const Entourage d = RelationEntourage::diagonal(3);
  const auto ok = verify_conjugacy_quality({1, 2, 0}, rot, rot, QualityMode::surjective_minimal, d, true);
  CHECK(ok.ok);
  CHECK(ok.premise_verified);
  const auto miss = verify_conjugacy_quality({0, 0, 2}, rot, rot, QualityMode::surjective_minimal, d);
  CHECK_FALSE(miss.ok);
  CHECK(miss.missed == std::optional<std::size_t>(1));
  CHECK(to_string(QualityMode::surjective_minimal) == "surjective-minimal");
}

TEST_CASE("closeness is stated for monoids") {
  auto c = std::make_shared<const Carrier>(families::right_zero(2).carrier());
  const ActionTable a(c, {"p"}, {{0}, {0}});
  CHECK(code_of([&] { verify_stability_closeness(a, {0}, RelationEntourage::diagonal(1)); }) == Errc::not_a_monoid);
}

TEST_CASE("action distance") {
  const auto alpha = golden_mean_action(4);
  CHECK(action_distance(alpha, alpha, ElementSet{0, 1}) == coord(alpha.parse_coordinates({"e", "a", "aa", "aaa", "aaaa"})));
  const auto beta = alpha.conjugate(swap_map(alpha.size(), *alpha.find_point("00000"), *alpha.find_point("00100")));
  const auto d = action_distance(alpha, beta, ElementSet{0, 1});
  CHECK(is_subset(d, coord(alpha.parse_coordinates({"e"}))));
  CHECK_FALSE(std::get<CoordEntourage>(d).coords.contains(alpha.parse_coordinates({"a"})[0]));

  const auto rot = z3_rotation();
  const auto back = ActionTable(rot.carrier_ptr(), rot.point_labels(), {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}});
  const auto r = std::get<RelationEntourage>(action_distance(rot, back, ElementSet{1}));
  CHECK(r.pairs().size() == 3);
}
