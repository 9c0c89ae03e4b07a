#pragma once

#include <vector>

#include "gwcacm/bits.hpp"
#include "gwcacm/gray_wyner.hpp"
#include "gwcacm/source_model.hpp"

namespace gwcacm {

// Cut-set style converse: the maximum of four entropy constraints (and 0).
double lower_bound(Bits M, const EntropyProfile& h);

// The rate tuple the structured scheme operates at; its sum equals the joint
// entropy, which is what makes the gap certificates applicable.
RateTuple tilde_tuple(const SourceSpec& spec);

// Budget ranges of the gap certificate, in order of M.
enum class GapRegime { kLow, kMid, kOptimal };

struct GapCertificate {
  Bits M = 0;
  double achievable = 0;
  double lower = 0;
  double gap = 0;
  double bound = 0;  // certified ceiling on the gap in this range
  GapRegime regime = GapRegime::kLow;
  bool applicable = true;  // sum rate equals the joint entropy

  const char* label() const;
};

// Evaluates achievable rate, converse, and the certified gap ceiling at M.
GapCertificate gap_certificate(Bits M, const RateTuple& t,
                               const EntropyProfile& h);

// Where the converse's binding constraint changes hands; candidate grid
// anchors for sources given by an explicit distribution. Clamped to
// [0, h_triple], sorted, deduplicated.
std::vector<double> lower_bound_breakpoints(const EntropyProfile& h);

// The budget where the gap peaks: (h_triple + 3 h_single) / 4.
double max_gap_location(const EntropyProfile& h);

}  // namespace gwcacm
