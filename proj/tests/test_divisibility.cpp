#include "doctest.h"

#include "ldiv/bounds.hpp"
#include "ldiv/constructors.hpp"
#include "ldiv/divisibility.hpp"
#include "ldiv/error.hpp"

using namespace lattdiv;

namespace {

Permutation cyc(const char* s, std::size_t n) { return Permutation::from_cycles(s, n); }

GroupPair trivial_pair(const PermGroup& g) { return group_pair(g, PermGroup::trivial(g.degree())); }

// r^a s^b in D_n
Permutation rs(std::uint64_t n, std::int64_t a, bool s) {
  auto r = dihedral_rotation(n).pow(a);
  return s ? r * dihedral_reflection(n) : r;
}

}  // namespace

TEST_CASE("constraints") {
  CHECK(weak_constraints(trivial_pair(cyclic_group(3)), 2).empty());
  CHECK(weak_constraints(dihedral_pair(4), 2).size() == 3);
  auto s3 = symmetric_group(3);
  auto s3pair = group_pair(s3, PermGroup::generate(3, {cyc("(1 2)", 3)}));
  CHECK(weak_constraints(s3pair, 3).size() == 1);

  CHECK(strong_constraints(trivial_pair(cyclic_group(4)), 2).size() == 1);
  CHECK(strong_constraints(trivial_pair(dihedral_group(2)), 2).size() == 3);
  auto c6 = cyclic_group(6);
  CHECK(strong_constraints(group_pair(c6, subgroup(c6, {dihedral_rotation(6).pow(3)})), 2).empty());
  CHECK_THROWS_AS(weak_constraints(dihedral_pair(4), 4), ValidationError);
}

TEST_CASE("cover predicates") {
  auto d8 = dihedral_pair(8);
  auto gp = subgroup(d8.g, {rs(8, 2, false), rs(8, 0, true)});
  auto cons = weak_constraints(d8, 2);
  const WeakConstraint* s_class = nullptr;
  for (const auto& c : cons)
    if (std::find(c.members.begin(), c.members.end(), rs(8, 0, true)) != c.members.end()) s_class = &c;
  REQUIRE(s_class);
  CHECK(covers_weak(gp, d8.h, *s_class));
  // the witness is r^2 s; r^4 s is conjugate to s inside <r^2, s>
  CHECK(conjugacy_class_of(gp, rs(8, 2, true)).size() == 2);
  auto c4s = conjugacy_class_of(gp, rs(8, 4, true));
  CHECK(std::find(c4s.begin(), c4s.end(), rs(8, 0, true)) != c4s.end());
  CHECK_FALSE(covers_weak(d8.h, d8.h, *s_class));

  auto s5 = klein_in_s5_pair();
  auto s5cons = weak_constraints(s5, 2);
  bool transposition_checked = false;
  for (const auto& c : s5cons) {
    if (c.class_rep.cycle_type() == std::vector<std::size_t>{2}) {
      CHECK(covers_weak(s5.g, s5.h, c));
      transposition_checked = true;
    }
  }
  CHECK(transposition_checked);

  StrongConstraint sigma{rs(8, 4, true)};
  CHECK(covers_strong(subgroup(d8.g, {rs(8, 4, false), rs(8, 0, true)}), d8.h, sigma));
  CHECK_FALSE(covers_strong(d8.h, d8.h, sigma));
  auto c4 = cyclic_group(4);
  CHECK(covers_strong(c4, PermGroup::trivial(4), {dihedral_rotation(4).pow(2)}));
}

TEST_CASE("dihedral decisions") {
  for (std::uint64_t n = 3; n <= 16; ++n)
    CHECK_MESSAGE(decide(dihedral_pair(n), 2, Mode::weak) == (n % 4 == 0), "n=" << n);
  CHECK(delta_exact(dihedral_pair(8), 2).delta == 2u);
  CHECK(delta_exact(dihedral_pair(6), 3).delta == 1u);
  CHECK(delta_exact(dihedral_pair(6), 5).delta == 0u);
  CHECK(delta_exact(trivial_pair(symmetric_group(3)), 2).delta == 1u);
}

TEST_CASE("klein examples") {
  auto s5 = delta_exact(klein_in_s5_pair(), 2);
  CHECK_FALSE(s5.weak->divisible);
  CHECK_FALSE(s5.delta.has_value());
  REQUIRE(s5.weak->uncovered.has_value());
  auto s4 = delta_exact(klein_in_s4_pair(), 2);
  CHECK(s4.weak->divisible);
  CHECK(s4.delta == 1u);
}

TEST_CASE("big delta") {
  CHECK(big_delta_exact(trivial_pair(cyclic_group(2)), 2).big_delta == Rational(1));
  CHECK(big_delta_exact(trivial_pair(dihedral_group(2)), 2).big_delta == Rational(2));
  auto r = big_delta_exact(trivial_pair(cyclic_group(4)), 2);
  REQUIRE(r.big_delta.has_value());
  CHECK(*r.big_delta == Rational(1));
}

TEST_CASE("kernels agree with the reference predicates") {
  std::vector<GroupPair> pairs{dihedral_pair(8), dihedral_pair(6), klein_in_s4_pair(),
                               klein_in_s5_pair(), trivial_pair(alternating_group(4))};
  for (const auto& pair : pairs) {
    GroupTable t(pair.g);
    WorkCounter work(kDefaultWorkLimit);
    auto h = indexed(t, pair.h);
    auto mids = join_ascent(t, h, work);
    std::vector<PermGroup> cands;
    for (const auto& k : mids) cands.push_back(to_perm_group(t, k));
    for (bool par : {false, true}) {
      PairEngine e(t, h.members, mids, par);
      for (std::uint64_t ell : prime_divisors(pair.g.order())) {
        CHECK(e.weak_coverage(e.weak_classes(ell)) == reference_weak_coverage(pair, ell, cands));
        CHECK(e.strong_coverage(e.strong_elements(ell)) ==
              reference_strong_coverage(pair, ell, cands));
      }
    }
  }
}

TEST_CASE("theorem bounds") {
  auto d4 = dihedral_pair(4);
  auto b = theorem_bounds(d4, 2, {});
  CHECK(b.at("delta.nilpotent").value == Rational(2));
  CHECK(b.at("delta.generic").value == Rational(2));
  auto d8 = theorem_bounds(dihedral_pair(8), 2, {});
  CHECK(d8.at("delta.semidirect").value == Rational(2));
  CHECK_FALSE(theorem_bounds(dihedral_pair(6), 2, {}).at("delta.semidirect").value.has_value());
  auto report = analyze(dihedral_pair(8), 2, {});
  CHECK(report.violations.empty());
  CHECK(report.delta == 2u);
}

TEST_CASE("semidirect hypothesis") {
  CHECK(semidirect_hypothesis(cyclic_action(8, 2, 7), 2));
  CHECK_FALSE(semidirect_hypothesis(cyclic_action(6, 2, 5), 2));
  CHECK(semidirect_hypothesis(cyclic_action(3, 2, 1), 2));
}

TEST_CASE("scan of A5") {
  auto scan = scan_all_primes(alternating_group(5));
  CHECK(scan.all_prime_count == 1);
  for (const auto& row : scan.rows)
    if (row.all_primes) CHECK(row.representative.order() == 2);
}

TEST_CASE("normal H hides order-ell elements") {
  auto c4 = cyclic_group(4);
  auto h = subgroup(c4, {dihedral_rotation(4).pow(2)});
  auto pair = group_pair(c4, h);
  BoundHints hints;
  hints.normal = h;
  auto r = analyze(pair, 2, hints);
  CHECK(r.delta == std::uint64_t{0});
  CHECK(r.big_delta == Rational(1));
  CHECK(r.bounds.at("delta.quotient").value == Rational(1));
  CHECK_FALSE(r.bounds.at("delta.quotient").equality);
  CHECK(r.bounds.at("big_delta.quotient").equality);
  CHECK_FALSE(r.bounds.at("delta.galois").equality);
  CHECK(r.violations.empty());
}
