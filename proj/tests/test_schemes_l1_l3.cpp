#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "gwcacm/allocator.hpp"
#include "gwcacm/schemes.hpp"

using namespace gwcacm;

namespace {

DescriptionSet priv_library(Bits cv, std::uint64_t seed) {
  SourceSpec spec;
  spec.cv = cv;
  spec.granularity_q = 1;
  return gw_encode(make_structured_library(spec, seed));
}

Bits run_l1(const DescriptionSet& ds, Bits m1, const Demand& d) {
  const CacheContents caches = l1_place(m1, ds);
  CHECK(caches.used_bits(0) == m1);
  CHECK(caches.used_bits(1) == m1);
  const MulticastCodeword y = l1_deliver(d, caches, ds);
  for (int r = 0; r < 2; ++r) {
    const BitString got = l1_decode(r, caches, y, d, ds.tuple.rho_priv);
    CHECK(got == ds.w.at(Subset::single(d.at(r))));
  }
  return y.total_bits();
}

}  // namespace

TEST_CASE("private sublibrary budgets hit the rate curve") {
  const DescriptionSet ds = priv_library(1200, 21);
  const Demand distinct{2, 3};
  const Bits budgets[] = {0, 600, 900, 1800, 2700, 3600};
  const Bits expect[] = {2400, 1800, 1500, 600, 300, 0};
  for (int i = 0; i < 6; ++i) {
    CHECK(run_l1(ds, budgets[i], distinct) == expect[i]);
    CHECK(rate_l1(static_cast<double>(budgets[i]), 1200) ==
          static_cast<double>(expect[i]));
  }
}

TEST_CASE("every demand decodes at every private budget") {
  const DescriptionSet ds = priv_library(24, 9);
  for (Bits m1 : {0, 6, 18, 36, 54, 72}) {
    CAPTURE(m1);
    Bits worst = 0;
    for (const Demand& d : all_demands()) {
      const Bits sent = run_l1(ds, m1, d);
      if (!d.equal()) worst = std::max(worst, sent);
    }
    CHECK(static_cast<double>(worst) == rate_l1(static_cast<double>(m1), 24));
    for (const Demand& d : all_demands())
      if (d.equal()) CHECK(run_l1(ds, m1, d) <= worst);
  }
}

TEST_CASE("half-caching corner sends one coded unit") {
  const DescriptionSet ds = priv_library(1200, 21);
  const CacheContents caches = l1_place(1800, ds);

  // Receiver 1 stores first halves, receiver 2 second halves, uncoded.
  REQUIRE(caches.receiver[0].size() == 3);
  CHECK(caches.receiver[0][0].label == "W1(1)");
  CHECK(caches.receiver[1][2].label == "W3(2)");
  CHECK(caches.receiver[0][1].payload ==
        slice(ds.w.at(Subset::single(2)), 0, 600));

  const Demand d{1, 2};
  const MulticastCodeword y = l1_deliver(d, caches, ds);
  REQUIRE(y.units.size() == 1);
  CHECK(y.units[0].label == "W1(2)⊕W2(1)");
  BitString want = slice(ds.w.at(Subset::single(1)), 600, 600);
  xor_in_place(want, slice(ds.w.at(Subset::single(2)), 0, 600));
  CHECK(y.units[0].payload == want);

  // The same coded unit serves an equal demand.
  const Demand eq{3, 3};
  const MulticastCodeword ye = l1_deliver(eq, caches, ds);
  REQUIRE(ye.units.size() == 1);
  CHECK(ye.units[0].label == "W3(2)⊕W3(1)");
}

TEST_CASE("off-grid private budgets are rejected with the nearest legal ones") {
  const DescriptionSet ds = priv_library(1200, 21);
  CHECK(l1_on_grid(699, 1200));
  CHECK(l1_on_grid(702, 1200));
  CHECK_FALSE(l1_on_grid(700, 1200));
  CHECK_FALSE(l1_on_grid(701, 1200));
  CHECK(l1_nearest_on_grid(700, 1200) == std::pair<Bits, Bits>{699, 702});
  CHECK_THROWS_AS(l1_place(700, ds), std::invalid_argument);
  CHECK_THROWS_AS(l1_place(-5, ds), std::invalid_argument);
  CHECK_THROWS_AS(l1_place(3601, ds), std::invalid_argument);
}

TEST_CASE("common description: cached prefix, multicast suffix") {
  std::mt19937_64 gen(77);
  const BitString w123 = random_bits(gen, 1200);

  SUBCASE("empty cache transmits everything") {
    const CacheContents caches = l3_place(0, w123);
    CHECK(caches.used_bits(0) == 0);
    const MulticastCodeword y = l3_deliver(caches, w123);
    CHECK(y.total_bits() == 1200);
    CHECK(l3_decode(0, caches, y) == w123);
  }

  SUBCASE("budget not dividing the length still packs exactly") {
    const CacheContents caches = l3_place(500, w123);
    CHECK(caches.used_bits(0) == 500);
    CHECK(caches.used_bits(1) == 500);
    // gcd(500, 1200) = 100: five cached packets, seven transmitted.
    CHECK(caches.receiver[0].size() == 5);
    const MulticastCodeword y = l3_deliver(caches, w123);
    CHECK(y.units.size() == 7);
    CHECK(y.total_bits() == 700);
    CHECK(rate_l3(500, 1200) == 700.0);
    DecodeSteps steps;
    CHECK(l3_decode(1, caches, y, &steps) == w123);
    REQUIRE(steps.lines.size() == 1);
    CHECK(steps.lines[0] ==
          "W123 = cached prefix (500 bits) + received suffix (700 bits)");
  }

  SUBCASE("both receivers cache the identical prefix") {
    const CacheContents caches = l3_place(600, w123);
    REQUIRE(caches.receiver[0].size() == caches.receiver[1].size());
    for (std::size_t i = 0; i < caches.receiver[0].size(); ++i)
      CHECK(caches.receiver[0][i].payload == caches.receiver[1][i].payload);
    const MulticastCodeword y = l3_deliver(caches, w123);
    CHECK(y.total_bits() == 600);
    CHECK(l3_decode(0, caches, y) == w123);
  }

  SUBCASE("budgets beyond the description are clamped") {
    const CacheContents caches = l3_place(5000, w123);
    CHECK(caches.used_bits(0) == 1200);
    const MulticastCodeword y = l3_deliver(caches, w123);
    CHECK(y.total_bits() == 0);
    CHECK(l3_decode(0, caches, y) == w123);
    CHECK(rate_l3(5000, 1200) == 0.0);
  }

  SUBCASE("negative budget is rejected") {
    CHECK_THROWS_AS(l3_place(-1, w123), std::invalid_argument);
  }
}
