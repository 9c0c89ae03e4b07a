#include "gwcacm/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gwcacm {
namespace {

void check_tuple(const RateTuple& t) {
  if (t.rho0 < 0 || t.rho_pair < 0 || t.rho_priv < 0)
    throw std::invalid_argument("rate tuple components must be nonnegative");
  if (t.rho_pair % 2 != 0 || t.rho_priv % 2 != 0)
    throw std::invalid_argument(
        "rho' and rho must be even for bit-exact corner budgets");
}

}  // namespace

CacheAllocation allocate(Bits M, const RateTuple& t) {
  if (M < 0) throw std::invalid_argument("M must be nonnegative");
  check_tuple(t);
  const Bits r0 = t.rho0;
  const Bits rp = t.rho_pair;
  const Bits rv = t.rho_priv;
  const Bits m = std::min(M, t.sum_rate());

  CacheAllocation a;
  if (2 * m < 3 * rp) {
    a.regime_id = 1;
    a.m2 = m;
  } else if (2 * m < 2 * r0 + 3 * rp + 3 * rv) {
    a.regime_id = 2;
    a.m2 = 3 * rp / 2;
    a.m3 = std::min(m - a.m2, r0);
    a.m1 = m - a.m2 - a.m3;
  } else if (2 * m < 2 * r0 + 6 * rp + 3 * rv) {
    a.regime_id = 3;
    a.m3 = r0;
    a.m1 = 3 * rv / 2;
    a.m2 = m - a.m3 - a.m1;
  } else {
    a.regime_id = 4;
    a.m2 = 3 * rp;
    a.m3 = r0;
    a.m1 = m - a.m2 - a.m3;
  }
  return a;
}

double rate_l3(double m3, Bits rho0) {
  if (m3 < 0) throw std::invalid_argument("m3 must be nonnegative");
  return std::max(0.0, static_cast<double>(rho0) - m3);
}

double rate_l2(double m2, Bits rho_pair) {
  const double r = static_cast<double>(rho_pair);
  if (m2 < 0 || m2 > 3 * r)
    throw std::invalid_argument("m2 outside [0, 3rho']");
  if (2 * m2 < r) return 3 * r - 2 * m2;
  if (2 * m2 < 3 * r) return (5 * r - 2 * m2) / 2;
  return (6 * r - 2 * m2) / 3;
}

double rate_l1(double m1, Bits rho_priv) {
  const double r = static_cast<double>(rho_priv);
  if (m1 < 0 || m1 > 3 * r)
    throw std::invalid_argument("m1 outside [0, 3rho]");
  if (2 * m1 < 3 * r) return 2 * r - m1;
  return (3 * r - m1) / 3;
}

ClosedFormRate rate_closed_form(Bits M, const RateTuple& t) {
  check_tuple(t);
  const Bits r0 = t.rho0;
  const Bits rp = t.rho_pair;
  const Bits rv = t.rho_priv;
  const Bits sum = t.sum_rate();
  if (M < 0 || M > sum) {
    std::ostringstream os;
    os << "M=" << M << " outside [0, " << sum << "]";
    throw std::out_of_range(os.str());
  }

  ClosedFormRate out;
  if (2 * M < rp) {
    out.regime_id = 1;
    out.rate = static_cast<double>(r0 + 3 * rp + 2 * rv - 2 * M);
  } else if (2 * M < 2 * r0 + 3 * rp + 3 * rv) {
    out.regime_id = 2;
    out.rate = static_cast<double>(2 * r0 + 5 * rp + 4 * rv - 2 * M) / 2.0;
  } else if (2 * M < 2 * r0 + 6 * rp + 3 * rv) {
    out.regime_id = 3;
    out.rate = static_cast<double>(4 * r0 + 12 * rp + 9 * rv - 4 * M) / 6.0;
  } else {
    out.regime_id = 4;
    out.rate = static_cast<double>(r0 + 3 * rp + 3 * rv - M) / 3.0;
  }

  // The closed form must always match the water-filled decomposition.
  const double md = static_cast<double>(M);
  double m1 = 0, m2 = 0, m3 = 0;
  if (md < 1.5 * rp) {
    m2 = md;
  } else if (md < r0 + 1.5 * (rp + rv)) {
    m2 = 1.5 * rp;
    m3 = std::min(md - m2, static_cast<double>(r0));
    m1 = md - m2 - m3;
  } else if (md < r0 + 3 * rp + 1.5 * rv) {
    m3 = r0;
    m1 = 1.5 * rv;
    m2 = md - m3 - m1;
  } else {
    m2 = 3.0 * rp;
    m3 = r0;
    m1 = md - m2 - m3;
  }
  const double split = rate_l3(m3, r0) + rate_l2(m2, rp) + rate_l1(m1, rv);
  if (std::fabs(split - out.rate) > 1e-9 * (1.0 + std::fabs(out.rate)))
    throw std::logic_error("achievable rate decomposition mismatch");
  return out;
}

std::array<Bits, 4> rate_breakpoints(const RateTuple& t) {
  check_tuple(t);
  return {t.rho_pair / 2, t.rho0 + 3 * (t.rho_pair + t.rho_priv) / 2,
          t.rho0 + 3 * t.rho_pair + 3 * t.rho_priv / 2, t.sum_rate()};
}

std::vector<CurvePoint> achievable_curve(const RateTuple& t,
                                         const std::vector<Bits>& grid) {
  std::vector<Bits> ms = grid;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::vector<CurvePoint> out;
  out.reserve(ms.size());
  for (Bits M : ms) {
    const ClosedFormRate r = rate_closed_form(M, t);
    out.push_back(CurvePoint{M, r.rate, r.regime_id});
  }
  return out;
}

}  // namespace gwcacm
