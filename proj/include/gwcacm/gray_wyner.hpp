#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "gwcacm/bits.hpp"
#include "gwcacm/source_model.hpp"
#include "gwcacm/subset.hpp"

namespace gwcacm {

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Description rates (rho0, rho', rho) in bits: |W_123| = rho0, |W_ij| = rho'
// for each pair, |W_i| = rho for each single.
struct RateTuple {
  Bits rho0 = 0;
  Bits rho_pair = 0;
  Bits rho_priv = 0;

  Bits sum_rate() const { return rho0 + 3 * (rho_pair + rho_priv); }
  Bits size_of(Subset s) const;

  friend bool operator==(const RateTuple&, const RateTuple&) = default;
};

// The seven descriptions W_s of a Gray-Wyner encoding.
struct DescriptionSet {
  std::map<Subset, BitString> w;
  RateTuple tuple;
};

// For structured sources the components already are the descriptions, with
// tuple (c0, cp, cv).
DescriptionSet gw_encode(const Library& lib);
RateTuple generating_tuple(const SourceSpec& spec);

// S_d: the four descriptions that reconstruct file d, canonical order.
std::array<Subset, 4> request_set(int file_index);

// Concatenates the four descriptions of S_{file_index} back into the file.
// Throws DecodeError naming the subset on a missing or size-mismatched
// description.
BitString gw_decode(int file_index, const std::map<Subset, BitString>& descs,
                    const RateTuple& expected);

enum class L2Kind { kDistinct, kEqual };

// What the demand induces on the pair sublibrary: receiver k wants the two
// pair descriptions containing d_k. DISTINCT demands share exactly one of
// them; EQUAL demands share both.
struct L2Demand {
  std::array<Subset, 2> wants_r1 = {Subset::pair(1, 2), Subset::pair(1, 3)};
  std::array<Subset, 2> wants_r2 = {Subset::pair(1, 2), Subset::pair(1, 3)};

  L2Kind kind() const;
  const std::array<Subset, 2>& wants(int receiver) const {
    return receiver == 0 ? wants_r1 : wants_r2;
  }
  Subset common() const;   // DISTINCT: the description wanted by both
  Subset only_r1() const;  // DISTINCT: wanted by receiver 1 alone
  Subset only_r2() const;
};

struct RequestSets {
  std::array<std::array<Subset, 4>, 2> per_receiver;
  L2Demand l2;
};

RequestSets request_sets(const Demand& d);

// The three sublibraries the caching scheme treats independently.
struct Sublibraries {
  Subset l3 = Subset::all();
  std::array<Subset, 3> l2 = {Subset::pair(1, 2), Subset::pair(1, 3),
                              Subset::pair(2, 3)};
  std::array<Subset, 3> l1 = {Subset::single(1), Subset::single(2),
                              Subset::single(3)};
};

Sublibraries sublibraries();

}  // namespace gwcacm
