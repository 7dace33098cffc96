#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "shadowlab/expansivity.hpp"
#include "shadowlab/json_io.hpp"
#include "shadowlab/symbolic.hpp"

using namespace shadowlab;

namespace {

Configuration to_config(const oracle::Word& w) { return Configuration(w.begin(), w.end()); }

Subshift golden_subshift(std::size_t horizon) {
  auto c = io::naturals(horizon);
  return Subshift::from_forbidden(c, {"0", "1"}, ElementSet{c->at("e"), c->at("a")}, {{1, 1}});
}

std::shared_ptr<const Carrier> carrier_of(const SemigroupTable& t) { return std::make_shared<const Carrier>(t.carrier()); }

}  // namespace

TEST_CASE("shift on the naturals reads ahead") {
  auto c = io::naturals(3);
  const Configuration x{0, 1, 1, 0};
  const auto ax = shift_apply(*c, c->at("a"), x);
  CHECK(ax[c->at("e")] == x[c->at("a")]);
  CHECK(ax[c->at("aa")] == x[c->at("aaa")]);
  CHECK(ax[c->at("aaa")] == kUndefinedSymbol);
  CHECK_FALSE(is_total(ax));
  CHECK(shift_apply(*c, c->at("e"), x) == x);
  // Undefined coordinates are ignored by agreement.
  CHECK(agree_on(ax, Configuration{1, 1, 0, 1}, c->all()));
  CHECK_FALSE(agree_on(ax, Configuration{0, 1, 0, 1}, ElementSet{0}));
}

TEST_CASE("shift on a table is a left action") {
  const auto z3 = families::cyclic_group(3);
  const auto& c = z3.carrier();
  const Configuration x{0, 1, 2};
  for (Element s = 0; s < 3; ++s)
    for (Element t = 0; t < 3; ++t) {
      CHECK(shift_apply(c, s, shift_apply(c, t, x)) == shift_apply(c, z3(s, t), x));
      CHECK(shift_apply(c, s, x)[t] == x[z3(t, s)]);
    }
}

TEST_CASE("golden mean point counts match the transfer matrix") {
  for (std::size_t h = 1; h <= 10; ++h) {
    CAPTURE(h);
    const auto x = golden_subshift(h);
    const auto pts = enumerate_points(x);
    CHECK(pts.size() == oracle::golden_count(h + 1));
    std::size_t brute = 0;
    for (const auto& w : oracle::all_words(h + 1)) brute += oracle::golden(w) ? 1 : 0;
    CHECK(pts.size() == brute);
  }
}

TEST_CASE("even shift counts match the oracle") {
  for (std::size_t h = 0; h <= 10; ++h) {
    CAPTURE(h);
    const auto sys = even_shift(h);
    CHECK(sys.points().size() == oracle::even_count(h + 1));
    for (const auto& w : oracle::all_words(h + 1)) CHECK(sys.contains(to_config(w)) == oracle::even(w));
  }
}

TEST_CASE("windowed subshift counts") {
  auto c = io::naturals(7);
  const ElementSet w{c->at("e"), c->at("aa")};
  // Forbid a 1 two steps after a 1.
  const auto x = Subshift::from_forbidden(c, {"0", "1"}, w, {{1, 1}});
  const std::set<oracle::Word> allowed{{0, 0}, {0, 1}, {1, 0}};
  CHECK(enumerate_points(x).size() == oracle::window_count(8, {0, 2}, allowed));
  CHECK(x.forbidden() == std::vector<Pattern>{{1, 1}});
}

TEST_CASE("membership") {
  const auto x = golden_subshift(4);
  const auto ok = sft_membership(x, Configuration{1, 0, 1, 0, 0});
  CHECK(ok.member);
  CHECK(ok.checked == 4);
  const auto bad = sft_membership(x, Configuration{0, 0, 1, 1, 0});
  CHECK_FALSE(bad.member);
  REQUIRE(bad.violation);
  CHECK(x.carrier().label(*bad.violation) == "aa");

  auto c = io::naturals(3);
  const auto y = Subshift::from_forbidden(c, {"0", "1"}, ElementSet{c->at("e"), c->at("aaa")}, {{1, 1}});
  try {
    sft_membership(y, Configuration{0, 0, 0, kUndefinedSymbol});
    FAIL("expected window-escapes-horizon");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::window_escapes_horizon);
  }
}

TEST_CASE("full shift expansivity over tables") {
  const auto null2 = families::null_semigroup(2);
  const auto v = full_shift_expansivity_window(null2, 2);
  CHECK_FALSE(v.window);
  REQUIRE(v.witness);
  REQUIRE(v.outside_square);
  CHECK(null2.labels()[*v.outside_square] == "n0");
  // The witness pair differs only outside SS, so no shift separates it.
  const auto sys = ShiftSystem(Subshift::full(carrier_of(null2), {"0", "1"}, ElementSet{0}));
  for (Element s = 0; s < 2; ++s) {
    CHECK(sys.act(s, v.witness->first) == sys.act(s, v.witness->second));
  }

  const auto z2 = families::cyclic_group(2);
  const auto vz = full_shift_expansivity_window(z2, 2);
  REQUIRE(vz.window);
  CHECK(*vz.window == ElementSet{0});
  CHECK(vz.verified == std::optional<bool>(true));
  const auto zs = ShiftSystem(Subshift::full(carrier_of(z2), {"0", "1"}, ElementSet{0}));
  CHECK(is_expansivity_entourage(zs, coord(ElementSet{0})).expansive);
}

TEST_CASE("uniform expansivity set") {
  const auto sys = ShiftSystem(golden_subshift(5));
  const auto& c = sys.carrier();
  const auto k0 = uniform_expansivity_set(sys, coord(ElementSet{c.at("e")}), coord(c.all()), c.all());
  // Every coordinate must be read once.
  CHECK(k0.size() == c.size());
  CHECK_THROWS_AS(uniform_expansivity_set(sys, coord(ElementSet{c.at("e")}), coord(c.all()), ElementSet{0}), Error);
}

TEST_CASE("SFT from samples") {
  auto c = io::naturals(6);
  std::vector<Configuration> samples;
  std::vector<oracle::Word> words;
  for (const auto& w : oracle::all_words(7)) {
    if (oracle::even(w)) {
      samples.push_back(to_config(w));
      words.push_back(w);
    }
  }
  const ElementSet w{c->at("e"), c->at("a"), c->at("aa")};
  const auto z = sft_from_samples(c, {"0", "1"}, samples, w);
  const auto seen = oracle::observed_patterns(words, {0, 1, 2});
  CHECK(z.patterns().size() == seen.size());
  for (const auto& p : z.patterns()) CHECK(seen.contains(oracle::Word(p.begin(), p.end())));
  for (const auto& x : samples) CHECK(sft_membership(z, x).member);
}

TEST_CASE("shift systems reject foreign points") {
  auto c = io::naturals(2);
  CHECK_THROWS_AS(ShiftSystem(c, {"0", "1"}, {Configuration{0, 2, 0}}), Error);
  CHECK_THROWS_AS(ShiftSystem(c, {"0", "1"}, {Configuration{0, kUndefinedSymbol, 0}}), Error);
  const ShiftSystem sys(golden_subshift(2));
  CHECK(sys.index_of(Configuration{1, 0, 1}).has_value());
  CHECK_FALSE(sys.contains(Configuration{1, 1, 0}));
}
