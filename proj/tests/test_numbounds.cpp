#include "doctest.h"

#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "ldiv/constructors.hpp"
#include "ldiv/error.hpp"
#include "ldiv/numbounds.hpp"

using namespace lattdiv;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

UnitData field(std::uint64_t r1, std::uint64_t r2, bool mu = false) {
  return UnitData{r1, r2, r1 + 2 * r2, mu};
}

}  // namespace

TEST_CASE("unit ranks") {
  CHECK(unit_l_rank(field(1, 0), 2).value == 1);
  CHECK(unit_l_rank(field(1, 0), 2).forced_mu);
  CHECK(unit_l_rank(field(1, 0), 3).value == 0);
  CHECK(unit_l_rank(field(0, 1), 2).value == 1);
  CHECK(unit_l_rank(field(0, 1, true), 3).value == 1);
  CHECK_FALSE(unit_l_rank(field(0, 1, true), 2).forced_mu);
  CHECK_THROWS_AS(unit_l_rank(UnitData{1, 1, 2, false}, 2), ValidationError);
  CHECK_THROWS_AS(unit_l_rank(field(1, 0), 4), ValidationError);
}

TEST_CASE("valuations and omega") {
  CHECK(e_ell(12, 2) == 2);
  CHECK(e_ell(12, 3) == 1);
  CHECK(e_ell(7, 2) == 0);
  CHECK(omega(12) == 2);
  CHECK(omega(-7) == 1);
  CHECK(omega(1) == 0);
  CHECK_THROWS_AS(omega(0), ValidationError);
}

TEST_CASE("rank bound examples") {
  RankBoundInput in;
  in.ell = 2;
  in.mode = RankMode::weak;
  in.count = 10;
  in.invariant = 2;
  in.unit_k = field(2, 0);
  in.unit_f = field(1, 0);
  in.rel_degree = 2;
  auto b = rank_bound(in);
  CHECK(b.real_bound == Rational(3));
  CHECK(b.effective_bound == 3);

  in.mode = RankMode::strong;
  in.count = 9;
  in.unit_k = field(0, 1);
  b = rank_bound(in);
  CHECK(b.real_bound == Rational(7, 2));
  CHECK(b.effective_bound == 4);

  in.count = 0;
  b = rank_bound(in);
  CHECK(b.real_bound <= Rational(0));
  CHECK_FALSE(b.warnings.empty());

  in.count = 3;
  in.invariant = 0;
  CHECK_THROWS_AS(rank_bound(in), ValidationError);

  in.mode = RankMode::base;
  in.count = 5;
  in.kummer_rank = 1;
  CHECK(rank_bound(in).real_bound == Rational(4));

  in.unit_k = field(1, 0);
  CHECK_THROWS_AS(rank_bound(in), ValidationError);
}

TEST_CASE("rank bound monotonicity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    RankBoundInput in;
    in.ell = std::vector<std::uint64_t>{2, 3, 5}[rng() % 3];
    in.mode = rng() % 2 ? RankMode::weak : RankMode::strong;
    in.unit_f = field(1, 0);
    const std::uint64_t r1 = rng() % 5;
    const std::uint64_t r2 = 1 + rng() % 4;
    in.unit_k = field(r1, r2);
    in.rel_degree = r1 + 2 * r2;
    in.count = 1 + rng() % 50;
    in.invariant = Rational(1 + static_cast<std::int64_t>(rng() % 6), 1 + static_cast<std::int64_t>(rng() % 3));
    const auto base = rank_bound(in).real_bound;

    auto more = in;
    more.count += 1 + rng() % 5;
    CHECK(rank_bound(more).real_bound > base);
    auto larger = in;
    larger.invariant += Rational(1, 2);
    CHECK(rank_bound(larger).real_bound < base);
    auto mu = in;
    mu.unit_k.has_mu_ell = true;
    CHECK(rank_bound(mu).real_bound <= base);
  }
}

TEST_CASE("golod shafarevich") {
  CHECK(golod_shafarevich(5, 0));
  CHECK_FALSE(golod_shafarevich(4, 0));
  CHECK(golod_shafarevich(7, 4));
  CHECK_FALSE(golod_shafarevich(2, 0));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto rk = static_cast<std::int64_t>(rng() % 200);
    const auto u = static_cast<std::int64_t>(rng() % 2000);
    const bool oracle = Big(rk) > 2 + 2 * boost::multiprecision::sqrt(Big(u + 1));
    CHECK(golod_shafarevich(rk, u) == oracle);
  }
}

TEST_CASE("tower criteria") {
  TowerInput in;
  in.degree = 2;
  in.closure_degree = 2;
  in.unit_k = field(2, 0);
  in.unit_f = field(1, 0);
  in.per_prime = {TowerPrime{2, 1, true, true}};
  in.omega_f_disc = 0;
  auto r = tower_criteria(in);
  CHECK_FALSE(r.omega_criterion);
  CHECK_FALSE(r.degree_criterion);

  // bracket = 2 + 2 sqrt 2 + 2 - 1 + 1, about 6.83
  in.omega_f_disc = 6;
  CHECK_FALSE(tower_criteria(in).omega_criterion);
  in.omega_f_disc = 7;
  r = tower_criteria(in);
  CHECK(r.omega_criterion);
  CHECK(r.details.at(0).bracket_within_4n);

  in.degree = 6;
  in.closure_degree = 6;
  in.unit_k = field(6, 0);
  in.omega_f_disc = 24;
  in.per_prime = {TowerPrime{2, 1, true, true}, TowerPrime{3, 1, false, false}};
  r = tower_criteria(in);
  CHECK(r.omega_degree == 2);
  CHECK_FALSE(r.degree_criterion);
  in.omega_degree = 1;
  CHECK_THROWS_AS(tower_criteria(in), ValidationError);

  // omega_F(D) = 24 >= 4 * 6 * 1 with a prime-power degree.
  TowerInput cubic;
  cubic.degree = 3;
  cubic.closure_degree = 6;
  cubic.unit_k = field(3, 0);
  cubic.unit_f = field(1, 0);
  cubic.omega_f_disc = 24;
  cubic.per_prime = {TowerPrime{3, 1, false, false}};
  CHECK(tower_criteria(cubic).degree_criterion);
  cubic.omega_f_disc = 23;
  CHECK_FALSE(tower_criteria(cubic).degree_criterion);
  cubic.per_prime.clear();
  CHECK_THROWS_AS(tower_criteria(cubic), ValidationError);
}

TEST_CASE("ray class bound") {
  auto r = rayclass_bound(0, 1, 2, {Place{true, false, 0}});
  CHECK(r.e == 2);
  CHECK(r.bound == 3);
  r = rayclass_bound(2, 7, 3, {});
  CHECK(r.e == 2);
  CHECK(r.bound == 4);
  r = rayclass_bound(0, 0, 2, {Place{false, true, 1}});
  CHECK(r.epsilons.at(0) == 2);
  CHECK_THROWS_AS(rayclass_bound(0, 0, 2, {Place{false, true, 0}}), ValidationError);
  CHECK_THROWS_AS(rayclass_bound(0, 0, 2, std::vector<Place>(70, Place{true, false, 0})), CapExceeded);

  std::vector<Place> a{{true, false, 0}, {false, false, 0}};
  std::vector<Place> b{{false, true, 3}};
  auto ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  CHECK(rayclass_bound(0, 0, 5, ab).e == rayclass_bound(0, 0, 5, a).e + rayclass_bound(0, 0, 5, b).e);
  CHECK(rayclass_bound(0, 0, 5, ab).bound > rayclass_bound(0, 0, 5, a).bound);
}

TEST_CASE("malle a") {
  auto s2 = symmetric_group(2);
  CHECK(malle_a(group_pair(s2, PermGroup::trivial(2))).a == Rational(1));
  auto s3 = symmetric_group(3);
  auto stab = PermGroup::generate(3, {Permutation::from_cycles("(2 3)", 3)});
  CHECK(malle_a(group_pair(s3, stab)).a == Rational(1));
  auto c4 = cyclic_group(4);
  auto r = malle_a(group_pair(c4, PermGroup::trivial(4)));
  CHECK(r.a == Rational(1, 2));
  CHECK(r.excluded == 1);
  CHECK_THROWS_AS(malle_a(group_pair(c4, c4)), ValidationError);

  // conjugate H gives the same value
  auto d = dihedral_pair(6);
  auto g = dihedral_rotation(6);
  auto conj = PermGroup::generate(6, {conjugate(g, dihedral_reflection(6))});
  CHECK(malle_a(d).a == malle_a(group_pair(d.g, conj)).a);
}

TEST_CASE("malle exponent") {
  auto r = malle_exponent(2, 2, {{2, 1}}, {{2, 1}});
  CHECK(r.e == 6);
  CHECK(malle_exponent(1, 5, {}, {}).degenerate);
  CHECK(malle_exponent(1, 5, {}, {}).e == 0);
  CHECK_THROWS_AS(malle_exponent(2, 3, {{2, 1}}, {{2, 1}}), ValidationError);

  auto pair = dihedral_pair(8);
  auto m = malle_exponent(pair, 16, {{2, 1}});
  CHECK(m.deltas.at(2) == 2);
  CHECK(m.nilpotent);
  const Big oracle = boost::multiprecision::floor(Big(2) * (Big(16) + 2 * boost::multiprecision::sqrt(Big(16)) + 3 + 2 - 1));
  CHECK(m.e == oracle.convert_to<std::int64_t>());

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t index = 2 + rng() % 40;
    const std::uint64_t d = index * (1 + rng() % 6);
    std::map<std::uint64_t, std::uint64_t> deltas, rk;
    Big best = -1;
    for (std::uint64_t ell : prime_divisors(index)) {
      deltas[ell] = 1 + rng() % 5;
      rk[ell] = rng() % 4;
      const Big term = boost::multiprecision::floor(
          Big(deltas[ell]) * (Big(d) + 2 * boost::multiprecision::sqrt(Big(d)) +
                              Big(e_ell(index, ell)) + 2 - Big(rk[ell])));
      if (term > best) best = term;
    }
    const auto expect = static_cast<std::int64_t>(prime_divisors(index).size()) * best.convert_to<std::int64_t>();
    CHECK(malle_exponent(index, d, deltas, rk).e == expect);
  }
}
