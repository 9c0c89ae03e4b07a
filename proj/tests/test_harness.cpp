#include <doctest.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gwcacm/harness.hpp"

using namespace gwcacm;

namespace {

SourceSpec balanced() {
  SourceSpec s;
  s.c0 = 1200;
  s.cp = 1200;
  s.cv = 1200;
  return s;
}

}  // namespace

TEST_CASE("single demand: transmitted bits and bit-exact reconstruction") {
  const Library lib = make_structured_library(balanced(), 42);

  const DemandOutcome d12 = run_demand(0, lib, Demand{1, 2});
  CHECK(d12.transmitted_bits == 7200);
  CHECK(d12.decoded_ok == std::array<bool, 2>{true, true});
  CHECK(d12.cache_bits == std::array<Bits, 2>{0, 0});
  CHECK(d12.failure.empty());

  const DemandOutcome d33 = run_demand(0, lib, Demand{3, 3});
  CHECK(d33.transmitted_bits == 4800);

  const DemandOutcome full = run_demand(8400, lib, Demand{2, 1});
  CHECK(full.transmitted_bits == 0);
  CHECK(full.decoded_ok == std::array<bool, 2>{true, true});
  CHECK(full.cache_bits == std::array<Bits, 2>{8400, 8400});
}

TEST_CASE("peak over the nine demands matches the closed form") {
  const Library lib = make_structured_library(balanced(), 7);
  for (Bits M : {0, 600, 2400, 4800, 5700, 6600, 8400}) {
    CAPTURE(M);
    const SimReport rep = run_peak(M, lib);
    REQUIRE(rep.demands.size() == 9);
    CHECK(rep.all_decoded);
    CHECK(rep.budgets_ok);
    CHECK(static_cast<double>(rep.peak_bits) == rep.analytic_rate);
  }
  const SimReport rep = run_peak(2400, lib);
  CHECK(rep.peak_bits == 4200);
  CHECK(rep.regime_id == 2);
  CHECK(rep.lower == 4200.0);
  CHECK(rep.gap == 0.0);
  CHECK(rep.allocation == CacheAllocation{0, 1800, 600, 2});
}

TEST_CASE("budgets the schemes cannot realize are refused") {
  const Library lib = make_structured_library(balanced(), 7);
  const RateTuple t = generating_tuple(balanced());
  CHECK(on_grid(5700, t));
  CHECK_FALSE(on_grid(5701, t));
  CHECK_FALSE(on_grid(601, t));
  CHECK(on_grid(602, t));
  CHECK_FALSE(on_grid(-3, t));
  CHECK(nearest_on_grid(5701, t) == std::pair<Bits, Bits>{5700, 5703});
  CHECK(snap_to_grid(5700, t) == 5700);
  CHECK(snap_to_grid(5701, t) == 5700);
  CHECK(snap_to_grid(5702, t) == 5703);
  try {
    run_demand(5701, lib, Demand{1, 2});
    FAIL("expected a rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("5700 and 5703") != std::string::npos);
  }
}

TEST_CASE("default grid: anchors, interior points, the gap peak") {
  const RateTuple t{1200, 1200, 1200};
  const std::vector<Bits> g = default_grid(t, 4);
  const std::vector<Bits> expect = {0,    120,  240,  360,  480,  600,
                                    1440, 2280, 3120, 3960, 4800, 5160,
                                    5520, 5700, 5880, 6240, 6600, 6960,
                                    7320, 7680, 8040, 8400};
  CHECK(g == expect);
  for (Bits M : g) CHECK(on_grid(M, t));

  CHECK(default_grid(t, 0) == std::vector<Bits>{0, 600, 4800, 5700, 6600, 8400});
  CHECK_THROWS_AS(default_grid(t, -1), std::invalid_argument);
}

TEST_CASE("sweep: clean pass with the expected worst-case gap") {
  const SourceSpec spec = balanced();
  const RateTuple t = generating_tuple(spec);
  const SweepResult res = sweep(spec, 123, default_grid(t, 4));
  CHECK(res.pass());
  CHECK(res.points.size() == 22);
  CHECK(res.max_gap == doctest::Approx(300.0).epsilon(1e-12));
  CHECK(res.max_gap_M == 5700);
  for (const RateCurvePoint& p : res.points) {
    CHECK(p.measured >= 0);
    CHECK(static_cast<double>(p.measured) == p.achievable);
    CHECK(p.lower <= p.achievable + 1e-9);
  }
}

TEST_CASE("fault injection makes the sweep report violations") {
  const SourceSpec spec = balanced();
  REQUIRE(setenv("GWCACM_TAMPER", "drop-l2-unit", 1) == 0);
  const SweepResult res = sweep(spec, 5, {0, 600});
  REQUIRE(unsetenv("GWCACM_TAMPER") == 0);
  CHECK_FALSE(res.pass());
  bool mentions_decode = false;
  for (const std::string& v : res.violations)
    if (v.find("decode failure") != std::string::npos) mentions_decode = true;
  CHECK(mentions_decode);

  // Clean again once the hook is gone.
  CHECK(sweep(spec, 5, {0, 600}).pass());
}

TEST_CASE("traced run keeps the per-receiver decode steps") {
  SourceSpec spec;
  spec.cp = 1200;
  const Library lib = make_structured_library(spec, 1);
  const DemandTrace tr = run_demand_traced(600, lib, Demand{1, 2});
  CHECK(tr.ok == std::array<bool, 2>{true, true});
  CHECK(tr.total_bits == 2400);
  REQUIRE(tr.steps[0].lines.size() == 3);
  CHECK(tr.steps[0].lines[0] == "W12 = W12(1) | W12(2) received");
  CHECK(tr.steps[0].lines[1] == "W13(1) = Z_r1 ⊕ W12(1) ⊕ W23(1)");
  CHECK(tr.steps[0].lines[2] == "W13(2) received");
  REQUIRE(tr.steps[1].lines.size() == 3);
  CHECK(tr.steps[1].lines[1] == "W23(2) = Z_r2 ⊕ W12(2) ⊕ W13(2)");
  CHECK(tr.steps[1].lines[2] == "W23(1) received");
}

TEST_CASE("analytic point carries certificate and branch data") {
  const SourceSpec spec = balanced();
  const RateTuple t = generating_tuple(spec);
  const EntropyProfile h = entropy_profile_structured(spec);
  const RateCurvePoint p = analytic_point(5700, t, h);
  CHECK(p.M == 5700);
  CHECK(p.achievable == 1200.0);
  CHECK(p.lower == 900.0);
  CHECK(p.gap == 300.0);
  CHECK(p.gap_bound == 300.0);
  CHECK(p.regime_id == 3);
  CHECK(p.gap_regime == GapRegime::kMid);
  CHECK(p.bound_applicable);
  CHECK(p.measured == -1);
}
