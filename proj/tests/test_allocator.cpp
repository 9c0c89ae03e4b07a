#include <doctest.h>

#include <stdexcept>

#include "gwcacm/allocator.hpp"

using namespace gwcacm;

namespace {
const RateTuple kT{1200, 1200, 1200};
}

TEST_CASE("water-filling order: pair corner, common, private corner, rest") {
  CHECK(allocate(0, kT) == CacheAllocation{0, 0, 0, 1});
  CHECK(allocate(1000, kT) == CacheAllocation{0, 1000, 0, 1});
  CHECK(allocate(1799, kT) == CacheAllocation{0, 1799, 0, 1});
  CHECK(allocate(1800, kT) == CacheAllocation{0, 1800, 0, 2});
  CHECK(allocate(2400, kT) == CacheAllocation{0, 1800, 600, 2});
  CHECK(allocate(3000, kT) == CacheAllocation{0, 1800, 1200, 2});
  CHECK(allocate(4000, kT) == CacheAllocation{1000, 1800, 1200, 2});
  CHECK(allocate(4800, kT) == CacheAllocation{1800, 1800, 1200, 3});
  CHECK(allocate(6000, kT) == CacheAllocation{1800, 3000, 1200, 3});
  CHECK(allocate(6600, kT) == CacheAllocation{1800, 3600, 1200, 4});
  CHECK(allocate(7000, kT) == CacheAllocation{2200, 3600, 1200, 4});
  CHECK(allocate(8400, kT) == CacheAllocation{3600, 3600, 1200, 4});
}

TEST_CASE("allocation clamps at the sum rate and validates input") {
  CHECK(allocate(9000, kT) == allocate(8400, kT));
  CHECK_THROWS_AS(allocate(-1, kT), std::invalid_argument);
  CHECK_THROWS_AS(allocate(0, RateTuple{0, 3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(allocate(0, RateTuple{0, 0, -2}), std::invalid_argument);
  for (Bits M = 0; M <= 8400; M += 7) CHECK(allocate(M, kT).total() == M);
}

TEST_CASE("closed-form peak rate: branch values and boundaries") {
  CHECK(rate_breakpoints(kT) == std::array<Bits, 4>{600, 4800, 6600, 8400});

  CHECK(rate_closed_form(0, kT).rate == 7200.0);
  CHECK(rate_closed_form(2400, kT).rate == 4200.0);
  CHECK(rate_closed_form(6000, kT).rate == 1000.0);
  CHECK(rate_closed_form(8400, kT).rate == 0.0);
  CHECK(rate_closed_form(7000, kT).rate == doctest::Approx(1400.0 / 3).epsilon(1e-12));

  CHECK(rate_closed_form(599, kT).regime_id == 1);
  CHECK(rate_closed_form(600, kT).regime_id == 2);
  CHECK(rate_closed_form(4799, kT).regime_id == 2);
  CHECK(rate_closed_form(4800, kT).regime_id == 3);
  CHECK(rate_closed_form(6599, kT).regime_id == 3);
  CHECK(rate_closed_form(6600, kT).regime_id == 4);

  CHECK_THROWS_AS(rate_closed_form(-1, kT), std::out_of_range);
  CHECK_THROWS_AS(rate_closed_form(8401, kT), std::out_of_range);
}

TEST_CASE("closed form stays on the water-filled decomposition everywhere") {
  // rate_closed_form cross-checks itself against the three sublibrary curves and
  // throws on any mismatch, so the sweep only needs to confirm monotonicity.
  double prev = 1e18;
  for (Bits M = 0; M <= 8400; ++M) {
    const double r = rate_closed_form(M, kT).rate;
    CHECK(r <= prev + 1e-12);
    CHECK(r >= 0.0);
    prev = r;
  }
}

TEST_CASE("degenerate tuples collapse to the expected envelopes") {
  const RateTuple common_only{4800, 0, 0};
  CHECK(rate_closed_form(0, common_only).rate == 4800.0);
  CHECK(rate_closed_form(1000, common_only).rate == 3800.0);
  CHECK(rate_closed_form(4800, common_only).rate == 0.0);

  const RateTuple private_only{0, 0, 2400};
  CHECK(rate_closed_form(0, private_only).rate == 4800.0);
  CHECK(rate_closed_form(3600, private_only).rate == 1200.0);
  CHECK(rate_closed_form(7200, private_only).rate == 0.0);
  CHECK(rate_closed_form(1800, private_only).rate == 3000.0);  // on the first face
  CHECK(rate_closed_form(5400, private_only).rate == 600.0);   // on the second face

  const RateTuple pair_only{0, 1200, 0};
  CHECK(rate_breakpoints(pair_only) ==
        std::array<Bits, 4>{600, 1800, 3600, 3600});
  CHECK(rate_closed_form(0, pair_only).rate == 3600.0);
  CHECK(rate_closed_form(600, pair_only).rate == 2400.0);
  CHECK(rate_closed_form(3600, pair_only).rate == 0.0);
}

TEST_CASE("per-sublibrary rate curves validate their domain") {
  CHECK(rate_l3(0, 1200) == 1200.0);
  CHECK(rate_l2(0, 1200) == 3600.0);
  CHECK(rate_l1(0, 1200) == 2400.0);
  CHECK_THROWS_AS(rate_l3(-1, 1200), std::invalid_argument);
  CHECK_THROWS_AS(rate_l2(3601, 1200), std::invalid_argument);
  CHECK_THROWS_AS(rate_l1(-0.5, 1200), std::invalid_argument);
}

TEST_CASE("curve evaluation sorts and deduplicates its grid") {
  const auto pts = achievable_curve(kT, {8400, 0, 2400, 2400});
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].M == 0);
  CHECK(pts[0].rate == 7200.0);
  CHECK(pts[1].M == 2400);
  CHECK(pts[1].rate == 4200.0);
  CHECK(pts[1].regime_id == 2);
  CHECK(pts[2].M == 8400);
  CHECK(pts[2].rate == 0.0);
}
