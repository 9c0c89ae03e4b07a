#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gwcacm/bits.hpp"
#include "gwcacm/source_model.hpp"
#include "gwcacm/subset.hpp"

namespace gwcacm {

// Fully resolved invocation: config file values overlaid by command-line
// flags, with exactly one source of randomness-free truth for each knob.
struct RunConfig {
  std::optional<SourceSpec> spec;     // structured source
  std::optional<std::string> pmf_path;
  std::uint64_t seed = 1;
  std::string grid = "auto";
  std::optional<Bits> M;
  std::optional<Demand> demand;
  std::optional<std::string> out_path;
};

// Runs the command line: curve | simulate | trace. Returns the process exit
// code: 0 success, 1 invariant violation or decode failure, 2 invalid input.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

// Formats one number for CSV output: integers print without a decimal point,
// everything else with ten significant digits.
std::string csv_num(double v);

}  // namespace gwcacm
