#include "doctest.h"

#include <random>

#include "ldiv/constructors.hpp"
#include "ldiv/divisibility.hpp"
#include "ldiv/lattice.hpp"

using namespace lattdiv;

namespace {

PermGroup conjugate_group(const PermGroup& h, const Permutation& g) {
  std::vector<Permutation> gens;
  for (const auto& x : h.generators()) gens.push_back(conjugate(g, x));
  return PermGroup::generate(h.degree(), std::move(gens));
}

std::vector<PermGroup> sample_groups() {
  return {symmetric_group(4), dihedral_group(6), alternating_group(5),
          direct_product(dihedral_group(4), cyclic_group(2)),
          semidirect_product(cyclic_action(5, 4, 2)).group()};
}

}  // namespace

TEST_CASE("class size is the index of the normalizer") {
  for (const auto& g : sample_groups()) {
    std::size_t total = 0;
    for (const auto& c : subgroup_conjugacy_classes(g)) {
      CHECK(c.class_size == g.order() / normalizer(g, c.representative).order());
      total += c.class_size;
    }
    CHECK(total == all_subgroups(g).subgroups.size());
  }
}

TEST_CASE("delta and Delta are invariant under conjugating H") {
  std::mt19937_64 rng(17);
  for (const auto& g : sample_groups()) {
    if (g.order() > 40) continue;
    for (const auto& c : subgroup_conjugacy_classes(g)) {
      const auto& h = c.representative;
      if (h.order() == g.order()) continue;
      const auto& x = g.elements()[rng() % g.order()];
      const auto moved = conjugate_group(h, x);
      for (std::uint64_t ell : prime_divisors(g.order())) {
        const auto a = exact_values(group_pair(g, h), ell);
        const auto b = exact_values(group_pair(g, moved), ell);
        CHECK(a.divisible == b.divisible);
        CHECK(a.delta == b.delta);
        CHECK(a.strongly_divisible == b.strongly_divisible);
        CHECK(a.big_delta == b.big_delta);
      }
    }
  }
}

TEST_CASE("quotient projection is a homomorphism") {
  std::mt19937_64 rng(23);
  for (const auto& g : sample_groups()) {
    for (const auto& c : subgroup_conjugacy_classes(g)) {
      if (c.class_size != 1) continue;
      const auto q = quotient_action(g, c.representative);
      CHECK(q.group.order() * c.representative.order() == g.order());
      for (int trial = 0; trial < 20; ++trial) {
        const auto& a = g.elements()[rng() % g.order()];
        const auto& b = g.elements()[rng() % g.order()];
        CHECK(q.project(a * b) == q.project(a) * q.project(b));
      }
      for (const auto& n : c.representative.elements()) CHECK(q.project(n).is_identity());
    }
  }
}
