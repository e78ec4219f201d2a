#include "doctest.h"

#include "ldiv/lattice.hpp"

using namespace lattdiv;

namespace {

Permutation cyc(const char* s, std::size_t n) { return Permutation::from_cycles(s, n); }

}  // namespace

TEST_CASE("subgroup counts of small groups") {
  auto s4 = PermGroup::generate(4, {cyc("(1 2 3 4)", 4), cyc("(1 2)", 4)});
  auto a5 = PermGroup::generate(5, {cyc("(1 2 3)", 5), cyc("(1 2 3 4 5)", 5)});
  auto klein = PermGroup::generate(4, {cyc("(1 2)(3 4)", 4), cyc("(1 3)(2 4)", 4)});
  auto d4 = PermGroup::generate(4, {cyc("(1 2 3 4)", 4), cyc("(1 3)", 4)});
  CHECK(all_subgroups(s4).subgroups.size() == 30);
  CHECK(subgroup_conjugacy_classes(s4).size() == 11);
  CHECK(all_subgroups(a5).subgroups.size() == 59);
  CHECK(subgroup_conjugacy_classes(a5).size() == 9);
  CHECK(all_subgroups(klein).subgroups.size() == 5);
  CHECK(all_subgroups(d4).subgroups.size() == 10);
}

TEST_CASE("canonical order and closure") {
  auto s4 = PermGroup::generate(4, {cyc("(1 2 3 4)", 4), cyc("(1 2)", 4)});
  auto list = all_subgroups(s4);
  CHECK(list.subgroups.front().order() == 1);
  CHECK(list.subgroups.back() == s4);
  for (std::size_t i = 1; i < list.subgroups.size(); ++i)
    CHECK(list.subgroups[i - 1].order() <= list.subgroups[i].order());
  for (const auto& h : list.subgroups) {
    for (const auto& a : h.elements())
      for (const auto& b : h.elements()) CHECK(h.contains(a * b));
  }
}

TEST_CASE("intermediate subgroups agree with the lattice filter") {
  auto s4 = PermGroup::generate(4, {cyc("(1 2 3 4)", 4), cyc("(1 2)", 4)});
  auto all = all_subgroups(s4);
  for (const auto& h : all.subgroups) {
    auto mid = intermediate_subgroups(s4, h);
    std::vector<PermGroup> expected;
    for (const auto& k : all.subgroups)
      if (is_subgroup(h, k)) expected.push_back(k);
    REQUIRE(mid.subgroups.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(mid.subgroups[i] == expected[i]);
  }
}

TEST_CASE("class sizes sum to the subgroup count") {
  auto a5 = PermGroup::generate(5, {cyc("(1 2 3)", 5), cyc("(1 2 3 4 5)", 5)});
  std::size_t total = 0;
  for (const auto& c : subgroup_conjugacy_classes(a5)) total += c.class_size;
  CHECK(total == 59);
}
