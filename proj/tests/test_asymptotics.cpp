#include "doctest.h"
#include <cmath>

#include "ldiv/asymptotics.hpp"
#include "ldiv/error.hpp"

using namespace lattdiv;

TEST_CASE("integer roots") {
  CHECK(integer_root(100, 2) == 10);
  CHECK(integer_root(99, 2) == 9);
  CHECK(integer_root(1000, 3) == 10);
  CHECK(integer_root(999, 3) == 9);
  CHECK(integer_root(1, 5) == 1);
  CHECK(integer_root(18446744073709551615ULL, 2) == 4294967295ULL);
}

TEST_CASE("pi_k") {
  Census c(1000);
  CHECK(c.pi_k(100, 1) == 25);
  CHECK(c.pi_k(100, 2) == 30);
  CHECK(c.pi_k(1, 3) == 0);
  CHECK(c.pi_k(1000, 1) == 168);
}

TEST_CASE("count_T") {
  Census c(1000);
  CHECK(c.count_t(100, 1, 2) == 16);
  CHECK(c.count_t(1, 4, 3) == 2);
  for (std::uint64_t x : {1, 17, 100, 999})
    for (std::uint64_t k = 1; k <= 3; ++k)
      for (std::uint64_t j = 1; j <= 3; ++j) CHECK(c.count_t(x, k, j) == count_t_definition(x, k, j));
}

TEST_CASE("count_S") {
  Census c(20000);
  CHECK(c.count_s(100, 1, 2) == 22);
  CHECK(count_s_definition(100, 1, 2) == 22);
  std::uint64_t small_omega = 0;
  for (std::uint64_t n = 1; n <= 100; ++n)
    if (c.omega(n) <= 2) ++small_omega;
  CHECK(c.count_s(100, 2, 1) == 2 * small_omega);

  for (std::uint64_t x : {1, 50, 1000, 20000})
    for (std::uint64_t k = 1; k <= 4; ++k)
      for (std::uint64_t j = 1; j <= 3; ++j) {
        CHECK(c.count_s(x, k, j) == count_s_definition(x, k, j));
        CHECK(c.count_s(x, k, j) >= c.count_t(x, k, j));
        if (k > 1) CHECK(c.count_s(x, k, j) >= c.count_s(x, k - 1, j));
      }
}

TEST_CASE("parallel profile matches serial") {
  Census c(200000);
  for (std::uint64_t j = 1; j <= 3; ++j) CHECK(c.profile(200000, j) == c.profile_serial(200000, j));
}

TEST_CASE("caps and ratios") {
  CHECK_THROWS_AS(Census(1000, 999), CapExceeded);
  Census c(100);
  CHECK_THROWS_AS(c.pi_k(101, 1), ValidationError);
  CHECK_THROWS_AS(ratio_table({10}, 1, 1), ValidationError);

  auto t = ratio_table({1000, 100000}, 2, 2);
  CHECK(t.s_target == doctest::Approx(4.0));
  CHECK(t.pi_target == doctest::Approx(1.0));
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].x == 1000);
  CHECK(t.rows[1].s_count >= t.rows[0].s_count);

  auto k1 = ratio_table({100000}, 1, 1);
  CHECK(k1.rows[0].pi_ratio == doctest::Approx(9592.0 * std::log(1e5) / 1e5));
}
