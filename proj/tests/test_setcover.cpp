#include "doctest.h"

#include <random>

#include "ldiv/setcover.hpp"

using namespace lattdiv;

TEST_CASE("small hand instances") {
  Bitset a(3), b(3), c(3);
  a.set(0);
  a.set(1);
  b.set(1);
  b.set(2);
  c.set(2);
  auto r = solve_set_cover(3, {a, b, c}, {1, 1, 1});
  CHECK(r.feasible);
  CHECK(r.cost == 2);
  // weighted: cheap singletons beat the expensive pair
  auto w = solve_set_cover(3, {a, b, c}, {5, 5, 1});
  CHECK(w.cost == 6);
  Bitset empty(3);
  auto bad = solve_set_cover(3, {a, empty}, {1, 1});
  CHECK_FALSE(bad.feasible);
  REQUIRE(bad.uncovered.has_value());
  CHECK(*bad.uncovered == 2);
  CHECK(solve_set_cover(0, {}, {}).cost == 0);
}

TEST_CASE("branch and bound matches brute force on random instances") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t universe = 1 + rng() % 12;
    const std::size_t count = 1 + rng() % 14;
    std::vector<Bitset> masks;
    std::vector<std::uint64_t> weights;
    for (std::size_t i = 0; i < count; ++i) {
      Bitset m(universe);
      for (std::size_t e = 0; e < universe; ++e)
        if (rng() % 3 == 0) m.set(e);
      masks.push_back(m);
      weights.push_back(1 + rng() % (trial % 2 ? 9 : 1));
    }
    auto fast = solve_set_cover(universe, masks, weights);
    auto slow = brute_force_set_cover(universe, masks, weights);
    REQUIRE(fast.feasible == slow.feasible);
    if (!fast.feasible) continue;
    CHECK(fast.cost == slow.cost);
    Bitset covered(universe);
    std::uint64_t cost = 0;
    for (std::size_t i : fast.chosen) {
      covered |= masks[i];
      cost += weights[i];
    }
    CHECK(covered.count() == universe);
    CHECK(cost == fast.cost);
  }
}
