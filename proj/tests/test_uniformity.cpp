#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shadowlab/rng.hpp"
#include "shadowlab/uniformity.hpp"

using namespace shadowlab;

namespace {

// Boolean matrix product, written independently of the library.
std::vector<std::uint8_t> bool_product(const RelationEntourage& a, const RelationEntourage& b) {
  const std::size_t n = a.points();
  std::vector<std::uint8_t> out(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (a.contains(x, y) && b.contains(y, z)) out[x * n + z] = 1;
  return out;
}

RelationEntourage random_relation(std::size_t n, Rng& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (rng.below(3) == 0) pairs.emplace_back(x, y);
  return RelationEntourage::from_pairs(n, pairs);
}

}  // namespace

TEST_CASE("coordinate entourage algebra") {
  const Entourage a = coord(ElementSet{0, 1});
  const Entourage b = coord(ElementSet{1, 2});
  CHECK(compose(a, b) == coord(ElementSet{1}));
  CHECK(intersect(a, b) == coord(ElementSet{0, 1, 2}));
  CHECK(is_subset(coord(ElementSet{0, 1, 2}), a));
  CHECK_FALSE(is_subset(a, coord(ElementSet{0, 1, 2})));
  CHECK(is_subset(a, coord(ElementSet{})));
  CHECK(is_symmetric(a));
  CHECK(power(a, 3) == a);
  CHECK(root(a, 2) == a);
  CHECK(inverse(a) == a);
}

TEST_CASE("relation entourages must be reflexive") {
  CHECK_THROWS_AS(RelationEntourage(2, {0, 1, 1, 1}), Error);
  const auto d = RelationEntourage::diagonal(3);
  CHECK(d.pairs().empty());
  CHECK(RelationEntourage::full(3).pairs().size() == 3);
  const auto r = RelationEntourage::from_pairs(3, {{0, 2}});
  CHECK(r.contains(2, 0));
  CHECK(r.is_symmetric());
}

TEST_CASE("relation composition matches a boolean product") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_relation(6, rng);
    const auto b = random_relation(6, rng);
    const auto ab = std::get<RelationEntourage>(compose(Entourage(a), Entourage(b)));
    CHECK(ab.matrix() == bool_product(a, b));
    const auto ia = std::get<RelationEntourage>(intersect(Entourage(a), Entourage(b)));
    for (std::size_t x = 0; x < 6; ++x)
      for (std::size_t y = 0; y < 6; ++y) CHECK(ia.contains(x, y) == (a.contains(x, y) && b.contains(x, y)));
  }
}

TEST_CASE("roots are reflexive symmetric and square into the target") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Entourage r = random_relation(7, rng);
    for (unsigned p : {2u, 3u}) {
      const auto v = root(r, p);
      CHECK(is_symmetric(v));
      CHECK(is_subset(power(v, p), r));
      CHECK(is_subset(Entourage(RelationEntourage::diagonal(7)), v));
    }
  }
  // A transitive relation is its own root.
  const Entourage eq = RelationEntourage::from_pairs(4, {{0, 1}, {2, 3}});
  CHECK(root(eq, 2) == eq);
  // A path 0-1-2 loses an edge.
  const Entourage path = RelationEntourage::from_pairs(3, {{0, 1}, {1, 2}});
  const auto v = root(path, 2);
  CHECK(is_subset(power(v, 2), path));
  CHECK(v != path);
}
