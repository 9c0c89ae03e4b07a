#pragma once

#include <array>
#include <vector>

#include "gwcacm/bits.hpp"
#include "gwcacm/gray_wyner.hpp"

namespace gwcacm {

// Split of the per-receiver cache budget across the three sublibraries.
// regime_id numbers the four water-filling regimes in order of M.
struct CacheAllocation {
  Bits m1 = 0;
  Bits m2 = 0;
  Bits m3 = 0;
  int regime_id = 1;

  Bits total() const { return m1 + m2 + m3; }
  friend bool operator==(const CacheAllocation&, const CacheAllocation&) = default;
};

// Water-filling allocation: cache the pair sublibrary up to its 3rho'/2
// corner first, then the common description, then the private descriptions up
// to 3rho/2, then finish the pair sublibrary, then the private remainder.
// Budgets beyond the library sum rate are clamped. Requires even rho' and
// rho so the corner budgets are whole bits.
CacheAllocation allocate(Bits M, const RateTuple& t);

// Per-sublibrary peak delivery rates over the worst demand, as functions of
// the per-receiver budget. Real-valued; exact at on-grid integer budgets.
double rate_l3(double m3, Bits rho0);
double rate_l2(double m2, Bits rho_pair);
double rate_l1(double m1, Bits rho_priv);

// Closed-form achievable peak rate. regime_id numbers the four closed-form
// branches of the rate expression, which do not coincide with the
// allocation's regime numbering.
struct ClosedFormRate {
  double rate = 0;
  int regime_id = 1;
};

// Evaluates the closed form and cross-checks it against the water-filled
// sum rate_l3 + rate_l2 + rate_l1 on every call.
ClosedFormRate rate_closed_form(Bits M, const RateTuple& t);

// Interior branch boundaries of the closed form followed by the sum rate:
// {rho'/2, rho0 + 3(rho'+rho)/2, rho0 + 3rho' + 3rho/2, sum}.
std::array<Bits, 4> rate_breakpoints(const RateTuple& t);

struct CurvePoint {
  Bits M = 0;
  double rate = 0;
  int regime_id = 1;
};

// Evaluates the closed form over a grid of budgets (sorted, deduplicated).
std::vector<CurvePoint> achievable_curve(const RateTuple& t,
                                         const std::vector<Bits>& grid);

}  // namespace gwcacm
