#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gwcacm/bits.hpp"
#include "gwcacm/gray_wyner.hpp"
#include "gwcacm/subset.hpp"

namespace gwcacm {

// A contiguous part of one description, split into equal packets by the
// corner scheme operating on it. Pure corner schemes use the whole
// description; memory sharing runs one corner on a prefix segment and the
// adjacent corner on the suffix.
struct Segment {
  Bits offset = 0;
  Bits length = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

// Packet `index` (1-based) of `seg` within W_s under an equal split into
// `denom` packets. denom must divide seg.length.
struct PacketRef {
  Subset s = Subset::all();
  int index = 1;
  int denom = 1;
  Segment seg;

  Bits packet_size() const { return seg.length / denom; }
  Bits abs_offset() const { return seg.offset + (index - 1) * packet_size(); }
  std::string label(Bits full_size) const;
  friend bool operator==(const PacketRef&, const PacketRef&) = default;
};

// One stored or transmitted unit: the XOR of the referenced packets, which
// all have the same length.
struct CacheUnit {
  BitString payload;
  std::vector<PacketRef> composition;
  std::string label;
};

struct CacheContents {
  std::array<std::vector<CacheUnit>, 2> receiver;
  Bits used_bits(int r) const;
};

struct MulticastCodeword {
  std::vector<CacheUnit> units;
  Bits total_bits() const;
};

// Human-readable decode log, one line per recovery step.
struct DecodeSteps {
  std::vector<std::string> lines;
};

// One corner of a sublibrary's rate-memory tradeoff: per-receiver cache
// budget at full description size, and the equal-split denominator the
// corner's placement and delivery use.
struct CornerScheme {
  Bits budget = 0;
  int split = 1;
};

// Memory sharing between two adjacent corners: every description is cut into
// a prefix run under corner a and a suffix run under corner b, with
// lambda = (b.budget - m) / (b.budget - a.budget) the prefix fraction.
struct SharePlan {
  int corner_a = 0;
  int corner_b = 0;
  Bits seg_a = 0;  // per-description prefix length
  Bits seg_b = 0;
};

// Computes the split realizing per-receiver budget m, a.budget <= m <=
// b.budget. Throws std::invalid_argument when the induced segments are not
// integral or not divisible by the corners' packet denominators.
SharePlan memory_share(const CornerScheme& a, const CornerScheme& b, Bits m,
                       Bits size);

// Corner tables. Pair sublibrary: budgets {0, s/2, 3s/2, 2s, 3s}; the s/2
// corner is the coded placement. Private sublibrary: budgets {0, 3s/2, 3s}.
std::array<CornerScheme, 5> l2_corners(Bits rho_pair);
std::array<CornerScheme, 3> l1_corners(Bits rho_priv);

SharePlan l2_share_plan(Bits m2, Bits rho_pair);
SharePlan l1_share_plan(Bits m1, Bits rho_priv);
bool l2_on_grid(Bits m2, Bits rho_pair);
bool l1_on_grid(Bits m1, Bits rho_priv);
std::pair<Bits, Bits> l2_nearest_on_grid(Bits m2, Bits rho_pair);
std::pair<Bits, Bits> l1_nearest_on_grid(Bits m1, Bits rho_priv);

// Common-description sublibrary {W_123}: both receivers cache the identical
// prefix, delivery multicasts the uncoded suffix, demand-independent.
CacheContents l3_place(Bits m3, const BitString& w123);
MulticastCodeword l3_deliver(const CacheContents& caches, const BitString& w123);
BitString l3_decode(int receiver, const CacheContents& caches,
                    const MulticastCodeword& cw, DecodeSteps* steps = nullptr);

// Pair sublibrary {W_12, W_13, W_23}: the two-request scheme with coded
// placement at the s/2 corner.
CacheContents l2_place(Bits m2, const DescriptionSet& descs);
MulticastCodeword l2_deliver(const L2Demand& pattern, const CacheContents& caches,
                             const DescriptionSet& descs);
std::map<Subset, BitString> l2_decode(int receiver, const CacheContents& caches,
                                      const MulticastCodeword& cw,
                                      const L2Demand& pattern, Bits rho_pair,
                                      DecodeSteps* steps = nullptr);

// Private sublibrary {W_1, W_2, W_3}: the two-user single-request scheme.
CacheContents l1_place(Bits m1, const DescriptionSet& descs);
MulticastCodeword l1_deliver(const Demand& demand, const CacheContents& caches,
                             const DescriptionSet& descs);
BitString l1_decode(int receiver, const CacheContents& caches,
                    const MulticastCodeword& cw, const Demand& demand,
                    Bits rho_priv, DecodeSteps* steps = nullptr);

}  // namespace gwcacm
