#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gwcacm/bits.hpp"
#include "gwcacm/subset.hpp"

namespace gwcacm {

// PRNG identifier recorded in tool output so runs are reproducible.
inline constexpr char kGeneratorId[] = "mt19937_64";

// Structured three-file source. Each file is assembled from independent
// uniform components: one common to all three files (c0 bits), one shared by
// each pair of files (cp bits each) and one private to each file (cv bits
// each). File i is the concatenation, in canonical subset order, of the
// components whose subset contains i, so |Xi| = c0 + 2*cp + cv.
struct SourceSpec {
  Bits c0 = 0;
  Bits cp = 0;
  Bits cv = 0;
  int granularity_q = 4;

  // Throws std::invalid_argument naming the offending field. Divisibility:
  // c0 by q, cp and cv by 6q (halves and thirds of descriptions plus 1/q
  // memory-sharing fractions must stay integral), and not all zero.
  void validate() const;

  Bits file_size() const { return c0 + 2 * cp + cv; }
  Bits component_size(Subset s) const;
};

struct Library {
  SourceSpec spec;
  std::uint64_t seed = 0;
  std::map<Subset, BitString> components;
  std::array<BitString, 3> files;  // X1, X2, X3

  const BitString& file(int index) const;  // 1-based
};

Library make_structured_library(const SourceSpec& spec, std::uint64_t seed);

// The component order making up file i: {1,2,3}, {i,j}, {i,k}, {i} with the
// pair subsets in canonical order.
std::array<Subset, 4> file_component_order(int file_index);

// The four entropy quantities the rate bounds consume.
struct EntropyProfile {
  double h_single = 0;          // max_i H(Xi)
  double h_pair = 0;            // max_{i<j} H(Xi,Xj)
  double h_triple = 0;          // H(X1,X2,X3)
  double h_pair_given_one = 0;  // h_triple - h_single (symmetric sources)
};

EntropyProfile entropy_profile_structured(const SourceSpec& spec);

// Generic finite-alphabet joint pmf, for entropy and bound evaluation only.
// p is row-major over (x1, x2, x3).
struct PmfSource {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
  std::vector<double> p;

  void validate() const;  // sizes positive, entries >= 0, sums to 1 (1e-12)
  double at(int x1, int x2, int x3) const;
};

EntropyProfile entropy_profile_pmf(const PmfSource& src);

// JSON loading; field names match the struct members exactly.
SourceSpec parse_source_spec(const std::string& json_text);
SourceSpec load_source_spec(const std::string& path);
PmfSource parse_pmf_source(const std::string& json_text);
PmfSource load_pmf_source(const std::string& path);

}  // namespace gwcacm
