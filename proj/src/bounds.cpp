#include "gwcacm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gwcacm/allocator.hpp"

namespace gwcacm {

double lower_bound(Bits M, const EntropyProfile& h) {
  if (M < 0) throw std::invalid_argument("M must be nonnegative");
  const double m = static_cast<double>(M);
  const double c1 = h.h_pair - 2 * m;
  const double c2 = (h.h_pair - m) / 2;
  const double c3 = (h.h_triple - m) / 3;
  const double c4 = (h.h_triple + h.h_single) / 2 - m;
  return std::max({0.0, c1, c2, c3, c4});
}

RateTuple tilde_tuple(const SourceSpec& spec) {
  spec.validate();
  return generating_tuple(spec);
}

const char* GapCertificate::label() const {
  switch (regime) {
    case GapRegime::kLow:
      return "low";
    case GapRegime::kMid:
      return "mid";
    case GapRegime::kOptimal:
      return "optimal";
  }
  return "?";
}

GapCertificate gap_certificate(Bits M, const RateTuple& t,
                               const EntropyProfile& h) {
  GapCertificate c;
  c.M = M;
  c.achievable = rate_closed_form(M, t).rate;
  c.lower = lower_bound(M, h);
  c.gap = c.achievable - c.lower;
  c.applicable = std::fabs(static_cast<double>(t.sum_rate()) - h.h_triple) <=
                 1e-9 * (1.0 + std::fabs(h.h_triple));

  const Bits r0 = t.rho0;
  const Bits rp = t.rho_pair;
  const Bits rv = t.rho_priv;
  const double half_cond = h.h_pair_given_one / 2;  // H(X_j, X_k | X_i) / 2
  if (2 * M < 2 * r0 + 3 * rp + 3 * rv) {
    c.regime = GapRegime::kLow;
    c.bound = std::max(0.0, half_cond - static_cast<double>(rv));
  } else if (2 * M < 2 * r0 + 6 * rp + 3 * rv) {
    c.regime = GapRegime::kMid;
    c.bound = std::max(0.0, half_cond / 2 - static_cast<double>(rv) / 2);
  } else {
    c.regime = GapRegime::kOptimal;
    c.bound = 0;
  }
  return c;
}

std::vector<double> lower_bound_breakpoints(const EntropyProfile& h) {
  const double S = h.h_single;
  const double P = h.h_pair;
  const double T = h.h_triple;
  std::vector<double> pts = {
      P / 3,            // c1 = c2
      (3 * P - T) / 5,  // c1 = c3
      P - (T + S) / 2,  // c1 = c4
      3 * P - 2 * T,    // c2 = c3
      T + S - P,        // c2 = c4
      (T + 3 * S) / 4,  // c3 = c4
      P / 2,            // c1 = 0
      P,                // c2 = 0
      (T + S) / 2,      // c4 = 0
  };
  std::vector<double> out;
  for (double p : pts) {
    if (p < 0 || p > T) continue;
    bool dup = false;
    for (double q : out)
      if (std::fabs(p - q) < 1e-9 * (1.0 + T)) dup = true;
    if (!dup) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double max_gap_location(const EntropyProfile& h) {
  return (h.h_triple + 3 * h.h_single) / 4;
}

}  // namespace gwcacm
