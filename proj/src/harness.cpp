#include "gwcacm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gwcacm {
namespace {

// Fault-injection hook for negative tests: GWCACM_TAMPER=drop-l2-unit drops
// the last pair-sublibrary codeword unit before decoding.
void maybe_tamper(MulticastCodeword* y2) {
  const char* mode = std::getenv("GWCACM_TAMPER");
  if (mode && std::strcmp(mode, "drop-l2-unit") == 0 && !y2->units.empty())
    y2->units.pop_back();
}

void require_on_grid(Bits M, const RateTuple& t) {
  if (on_grid(M, t)) return;
  const auto [lo, hi] = nearest_on_grid(M, t);
  std::ostringstream os;
  os << "M=" << M
     << " is not realizable bit-exactly; nearest on-grid budgets: " << lo
     << " and " << hi;
  throw std::invalid_argument(os.str());
}

}  // namespace

DemandTrace run_demand_traced(Bits M, const Library& lib, const Demand& demand) {
  demand.validate();
  if (M < 0) throw std::invalid_argument("M must be nonnegative");
  const RateTuple t = generating_tuple(lib.spec);
  require_on_grid(M, t);

  DemandTrace tr;
  tr.alloc = allocate(M, t);
  tr.rs = request_sets(demand);

  const DescriptionSet ds = gw_encode(lib);
  const BitString& w123 = ds.w.at(Subset::all());
  tr.l3c = l3_place(tr.alloc.m3, w123);
  tr.l2c = l2_place(tr.alloc.m2, ds);
  tr.l1c = l1_place(tr.alloc.m1, ds);

  tr.y3 = l3_deliver(tr.l3c, w123);
  tr.y2 = l2_deliver(tr.rs.l2, tr.l2c, ds);
  tr.y1 = l1_deliver(demand, tr.l1c, ds);
  maybe_tamper(&tr.y2);
  tr.total_bits = tr.y3.total_bits() + tr.y2.total_bits() + tr.y1.total_bits();

  for (int r = 0; r < 2; ++r) {
    DecodeSteps* steps = &tr.steps[static_cast<std::size_t>(r)];
    try {
      BitString w123_hat = l3_decode(r, tr.l3c, tr.y3, steps);
      std::map<Subset, BitString> descs =
          l2_decode(r, tr.l2c, tr.y2, tr.rs.l2, t.rho_pair, steps);
      BitString priv = l1_decode(r, tr.l1c, tr.y1, demand, t.rho_priv, steps);
      descs[Subset::all()] = std::move(w123_hat);
      descs[Subset::single(demand.at(r))] = std::move(priv);
      const BitString xhat = gw_decode(demand.at(r), descs, t);
      if (xhat == lib.file(demand.at(r))) {
        tr.ok[static_cast<std::size_t>(r)] = true;
      } else {
        std::ostringstream os;
        os << "receiver " << r + 1 << " reconstructed X" << demand.at(r)
           << " with bit errors";
        tr.decode_error[static_cast<std::size_t>(r)] = os.str();
      }
    } catch (const std::exception& e) {
      tr.decode_error[static_cast<std::size_t>(r)] = e.what();
    }
  }
  return tr;
}

DemandOutcome run_demand(Bits M, const Library& lib, const Demand& demand) {
  const DemandTrace tr = run_demand_traced(M, lib, demand);
  DemandOutcome out;
  out.demand = demand;
  out.transmitted_bits = tr.total_bits;
  for (int r = 0; r < 2; ++r) {
    out.decoded_ok[static_cast<std::size_t>(r)] =
        tr.ok[static_cast<std::size_t>(r)];
    out.cache_bits[static_cast<std::size_t>(r)] =
        tr.l3c.used_bits(r) + tr.l2c.used_bits(r) + tr.l1c.used_bits(r);
    if (!tr.ok[static_cast<std::size_t>(r)] && out.failure.empty())
      out.failure = tr.decode_error[static_cast<std::size_t>(r)];
  }
  return out;
}

SimReport run_peak(Bits M, const Library& lib) {
  const RateTuple t = generating_tuple(lib.spec);
  const EntropyProfile h = entropy_profile_structured(lib.spec);

  SimReport rep;
  rep.M = M;
  rep.allocation = allocate(M, t);
  for (const Demand& d : all_demands()) {
    DemandOutcome out = run_demand(M, lib, d);
    rep.peak_bits = std::max(rep.peak_bits, out.transmitted_bits);
    if (!out.decoded_ok[0] || !out.decoded_ok[1]) rep.all_decoded = false;
    if (out.cache_bits[0] > M || out.cache_bits[1] > M) rep.budgets_ok = false;
    rep.demands.push_back(std::move(out));
  }
  const ClosedFormRate r = rate_closed_form(M, t);
  rep.analytic_rate = r.rate;
  rep.regime_id = r.regime_id;
  rep.lower = lower_bound(M, h);
  rep.gap = rep.analytic_rate - rep.lower;
  return rep;
}

RateCurvePoint analytic_point(Bits M, const RateTuple& t,
                              const EntropyProfile& h) {
  const GapCertificate cert = gap_certificate(M, t, h);
  RateCurvePoint p;
  p.M = M;
  p.achievable = cert.achievable;
  p.lower = cert.lower;
  p.gap = cert.gap;
  p.gap_bound = cert.bound;
  p.regime_id = rate_closed_form(M, t).regime_id;
  p.gap_regime = cert.regime;
  p.bound_applicable = cert.applicable;
  return p;
}

SweepResult sweep(const SourceSpec& spec, std::uint64_t seed,
                  const std::vector<Bits>& grid) {
  spec.validate();
  const Library lib = make_structured_library(spec, seed);
  const RateTuple t = generating_tuple(spec);
  const EntropyProfile h = entropy_profile_structured(spec);

  std::vector<Bits> ms = grid;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  SweepResult res;
  Bits prev_peak = -1;
  Bits prev_M = 0;
  for (Bits M : ms) {
    const SimReport rep = run_peak(M, lib);
    RateCurvePoint p = analytic_point(M, t, h);
    p.measured = rep.peak_bits;
    res.points.push_back(p);

    auto flag = [&](const std::string& what) {
      std::ostringstream os;
      os << "M=" << M << ": " << what;
      res.violations.push_back(os.str());
    };
    if (!rep.all_decoded) {
      std::string first = "decode failure";
      for (const DemandOutcome& d : rep.demands)
        if (!d.failure.empty()) {
          first = "decode failure: " + d.failure;
          break;
        }
      flag(first);
    }
    if (!rep.budgets_ok) flag("cache budget exceeded");
    if (static_cast<double>(rep.peak_bits) != p.achievable) {
      std::ostringstream os;
      os << "measured peak " << rep.peak_bits << " != closed form "
         << p.achievable;
      flag(os.str());
    }
    if (p.lower > static_cast<double>(rep.peak_bits) + 1e-9)
      flag("lower bound exceeds the measured rate");
    if (p.bound_applicable && p.gap > p.gap_bound + 1e-9) {
      std::ostringstream os;
      os << "gap " << p.gap << " exceeds its certified ceiling " << p.gap_bound;
      flag(os.str());
    }
    Bits worst_distinct = 0;
    for (const DemandOutcome& d : rep.demands)
      if (!d.demand.equal())
        worst_distinct = std::max(worst_distinct, d.transmitted_bits);
    for (const DemandOutcome& d : rep.demands)
      if (d.demand.equal() && d.transmitted_bits > worst_distinct) {
        std::ostringstream os;
        os << "equal demand (" << d.demand.d1 << "," << d.demand.d2
           << ") transmits " << d.transmitted_bits
           << " bits, above the worst distinct demand " << worst_distinct;
        flag(os.str());
      }
    if (prev_peak >= 0 && rep.peak_bits > prev_peak) {
      std::ostringstream os;
      os << "rate increased from " << prev_peak << " bits at M=" << prev_M;
      flag(os.str());
    }
    prev_peak = rep.peak_bits;
    prev_M = M;
    if (p.gap > res.max_gap) {
      res.max_gap = p.gap;
      res.max_gap_M = M;
    }
  }
  return res;
}

bool on_grid(Bits M, const RateTuple& t) {
  if (M < 0) return false;
  CacheAllocation a;
  try {
    a = allocate(M, t);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return l2_on_grid(a.m2, t.rho_pair) && l1_on_grid(a.m1, t.rho_priv);
}

std::pair<Bits, Bits> nearest_on_grid(Bits M, const RateTuple& t) {
  const Bits sum = t.sum_rate();
  Bits lo = std::min(std::max<Bits>(M, 0), sum);
  Bits hi = lo;
  while (lo > 0 && !on_grid(lo, t)) --lo;
  while (hi < sum && !on_grid(hi, t)) ++hi;
  return {lo, hi};
}

Bits snap_to_grid(Bits M, const RateTuple& t) {
  if (on_grid(M, t)) return M;
  const auto [lo, hi] = nearest_on_grid(M, t);
  if (!on_grid(lo, t)) return hi;
  if (!on_grid(hi, t)) return lo;
  return (M - lo <= hi - M) ? lo : hi;
}

std::vector<Bits> default_grid(const RateTuple& t, int q) {
  if (q < 0) throw std::invalid_argument("q must be nonnegative");
  const Bits sum = t.sum_rate();
  std::set<Bits> pts;
  auto add = [&](Bits M) {
    pts.insert(snap_to_grid(std::clamp<Bits>(M, 0, sum), t));
  };

  std::vector<Bits> anchors = {0};
  for (Bits b : rate_breakpoints(t)) anchors.push_back(b);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  for (Bits a : anchors) add(a);
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    const Bits lo = anchors[i];
    const Bits hi = anchors[i + 1];
    for (int k = 1; k <= q; ++k)
      add(lo + (hi - lo) * k / (q + 1));
  }
  // The gap peak, so sweeps always sample the worst point.
  add((4 * t.rho0 + 9 * t.rho_pair + 6 * t.rho_priv) / 4);
  return std::vector<Bits>(pts.begin(), pts.end());
}

}  // namespace gwcacm
