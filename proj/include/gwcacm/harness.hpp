#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gwcacm/allocator.hpp"
#include "gwcacm/bounds.hpp"
#include "gwcacm/schemes.hpp"
#include "gwcacm/source_model.hpp"

namespace gwcacm {

// Everything one demand produces, kept for rendering step-by-step traces.
struct DemandTrace {
  CacheAllocation alloc;
  RequestSets rs;
  CacheContents l3c, l2c, l1c;
  MulticastCodeword y3, y2, y1;
  Bits total_bits = 0;
  std::array<DecodeSteps, 2> steps;
  std::array<bool, 2> ok = {false, false};
  std::array<std::string, 2> decode_error;
};

struct DemandOutcome {
  Demand demand{1, 1};
  Bits transmitted_bits = 0;
  std::array<bool, 2> decoded_ok = {false, false};
  std::array<Bits, 2> cache_bits = {0, 0};
  std::string failure;  // first problem seen, empty when clean
};

// Runs placement, delivery, and both decoders for one demand, comparing the
// reconstructions against the library bit for bit.
DemandTrace run_demand_traced(Bits M, const Library& lib, const Demand& demand);
DemandOutcome run_demand(Bits M, const Library& lib, const Demand& demand);

struct SimReport {
  Bits M = 0;
  CacheAllocation allocation;
  std::vector<DemandOutcome> demands;  // all nine, row-major in (d1, d2)
  Bits peak_bits = 0;
  double analytic_rate = 0;
  int regime_id = 1;  // closed-form branch
  double lower = 0;
  double gap = 0;
  bool all_decoded = true;
  bool budgets_ok = true;
};

SimReport run_peak(Bits M, const Library& lib);

struct RateCurvePoint {
  Bits M = 0;
  double achievable = 0;
  double lower = 0;
  double gap = 0;
  double gap_bound = 0;
  int regime_id = 1;
  GapRegime gap_regime = GapRegime::kLow;
  bool bound_applicable = true;
  Bits measured = -1;  // peak bits over the nine demands; -1 when not simulated
};

// Closed-form row at one budget, shared by the curve and simulate paths.
RateCurvePoint analytic_point(Bits M, const RateTuple& t,
                              const EntropyProfile& h);

struct SweepResult {
  std::vector<RateCurvePoint> points;
  std::vector<std::string> violations;
  Bits max_gap_M = 0;
  double max_gap = 0;

  bool pass() const { return violations.empty(); }
};

// Simulates every grid point against the closed forms and the converse.
SweepResult sweep(const SourceSpec& spec, std::uint64_t seed,
                  const std::vector<Bits>& grid);

// Budgets the bit-exact schemes can realize after allocation.
bool on_grid(Bits M, const RateTuple& t);
std::pair<Bits, Bits> nearest_on_grid(Bits M, const RateTuple& t);
Bits snap_to_grid(Bits M, const RateTuple& t);

// Default sweep grid: 0, the closed-form breakpoints, the sum rate, q
// equally spaced interior points per branch, and the gap peak, all snapped
// onto the realizable grid.
std::vector<Bits> default_grid(const RateTuple& t, int q);

}  // namespace gwcacm
