#include "gwcacm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwcacm/bounds.hpp"
#include "gwcacm/harness.hpp"

namespace gwcacm {
namespace {

using nlohmann::json;

// Option values as they appear on one subcommand, before merging with the
// config file. presence is tracked so flags override config only when given.
struct RawOptions {
  Bits c0 = 0, cp = 0, cv = 0;
  int q = 4;
  std::string pmf;
  std::uint64_t seed = 1;
  std::string grid;
  Bits M = 0;
  std::string demand;
  std::string out;
  std::string config;
};

void add_common_options(CLI::App* cmd, RawOptions* raw) {
  cmd->add_option("--c0", raw->c0, "shared-component bits per file");
  cmd->add_option("--cp", raw->cp, "per-pair component bits per file");
  cmd->add_option("--cv", raw->cv, "private component bits per file");
  cmd->add_option("--q", raw->q, "quantization granularity");
  cmd->add_option("--pmf", raw->pmf, "JSON file with an explicit joint pmf");
  cmd->add_option("--seed", raw->seed, "library RNG seed");
  cmd->add_option("--grid", raw->grid, "budget grid: auto or comma-separated bits");
  cmd->add_option("--M", raw->M, "per-receiver cache budget in bits");
  cmd->add_option("--demand", raw->demand, "demand pair d1,d2");
  cmd->add_option("--out", raw->out, "write the report here instead of stdout");
  cmd->add_option("--config", raw->config, "JSON config; flags override it");
}

Demand parse_demand(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("demand must look like d1,d2");
  int d1 = 0, d2 = 0;
  try {
    std::size_t used = 0;
    d1 = std::stoi(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("");
    const std::string rest = text.substr(comma + 1);
    d2 = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("demand must look like d1,d2");
  }
  Demand d{d1, d2};
  d.validate();
  return d;
}

std::vector<Bits> parse_grid_list(const std::string& text) {
  std::vector<Bits> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad grid entry: " + item);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

// Builds the final configuration: config-file values first, then every flag
// the user actually passed on top.
RunConfig resolve(const CLI::App* cmd, const RawOptions& raw) {
  RunConfig cfg;
  Bits c0 = 0, cp = 0, cv = 0;
  int q = 4;
  bool structured = false;

  if (cmd->count("--config")) {
    std::ifstream in(raw.config);
    if (!in) throw std::invalid_argument("cannot open config: " + raw.config);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw std::invalid_argument("bad config: " + std::string(e.what()));
    }
    if (!j.is_object()) throw std::invalid_argument("config must be an object");
    for (const auto& [key, value] : j.items()) {
      try {
        if (key == "c0") {
          c0 = value.get<Bits>();
          structured = true;
        } else if (key == "cp") {
          cp = value.get<Bits>();
          structured = true;
        } else if (key == "cv") {
          cv = value.get<Bits>();
          structured = true;
        } else if (key == "q") {
          q = value.get<int>();
        } else if (key == "pmf") {
          cfg.pmf_path = value.get<std::string>();
        } else if (key == "seed") {
          cfg.seed = value.get<std::uint64_t>();
        } else if (key == "grid") {
          cfg.grid = value.get<std::string>();
        } else if (key == "M") {
          cfg.M = value.get<Bits>();
        } else if (key == "demand") {
          cfg.demand = parse_demand(value.get<std::string>());
        } else if (key == "out") {
          cfg.out_path = value.get<std::string>();
        } else {
          throw std::invalid_argument("unknown config key: " + key);
        }
      } catch (const json::exception& e) {
        throw std::invalid_argument("bad config value for " + key + ": " +
                                    std::string(e.what()));
      }
    }
  }

  if (cmd->count("--c0")) {
    c0 = raw.c0;
    structured = true;
  }
  if (cmd->count("--cp")) {
    cp = raw.cp;
    structured = true;
  }
  if (cmd->count("--cv")) {
    cv = raw.cv;
    structured = true;
  }
  if (cmd->count("--q")) q = raw.q;
  if (cmd->count("--pmf")) cfg.pmf_path = raw.pmf;
  if (cmd->count("--seed")) cfg.seed = raw.seed;
  if (cmd->count("--grid")) cfg.grid = raw.grid;
  if (cmd->count("--M")) cfg.M = raw.M;
  if (cmd->count("--demand")) cfg.demand = parse_demand(raw.demand);
  if (cmd->count("--out")) cfg.out_path = raw.out;

  if (structured) {
    SourceSpec spec;
    spec.c0 = c0;
    spec.cp = cp;
    spec.cv = cv;
    spec.granularity_q = q;
    cfg.spec = spec;
  }
  if (cfg.spec && cfg.pmf_path)
    throw std::invalid_argument(
        "give either a structured source (--c0/--cp/--cv) or --pmf, not both");
  if (!cfg.spec && !cfg.pmf_path)
    throw std::invalid_argument(
        "no source given; pass --c0/--cp/--cv or --pmf");
  return cfg;
}

// ---------------------------------------------------------------------------
// Output plumbing.

class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback)
      : fallback_(fallback) {
    if (path) {
      file_.open(*path, std::ios::binary);
      if (!file_) throw std::invalid_argument("cannot open output: " + *path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

constexpr char kCsvHeader[] = "M,R_ach,R_lb,gap,gap_bound,regime";

void write_point_row(std::ostream& os, const RateCurvePoint& p, bool measured) {
  os << p.M << ',' << csv_num(p.achievable) << ',' << csv_num(p.lower) << ','
     << csv_num(p.gap) << ',' << csv_num(p.gap_bound) << ',' << p.regime_id;
  if (measured) os << ',' << p.measured;
  os << '\n';
}

// ---------------------------------------------------------------------------
// Grids.

std::vector<Bits> structured_grid(const RunConfig& cfg, const RateTuple& t,
                                  int q, bool must_be_on_grid) {
  std::vector<Bits> grid;
  if (cfg.grid == "auto") {
    grid = default_grid(t, q);
  } else {
    grid = parse_grid_list(cfg.grid);
    const Bits sum = t.sum_rate();
    for (Bits M : grid) {
      if (M < 0 || M > sum) {
        std::ostringstream os;
        os << "grid point M=" << M << " outside [0, " << sum << "]";
        throw std::invalid_argument(os.str());
      }
      if (must_be_on_grid && !on_grid(M, t)) {
        const auto [lo, hi] = nearest_on_grid(M, t);
        std::ostringstream os;
        os << "grid point M=" << M
           << " is not realizable bit-exactly; nearest on-grid budgets: " << lo
           << " and " << hi;
        throw std::invalid_argument(os.str());
      }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }
  return grid;
}

std::vector<Bits> pmf_grid(const RunConfig& cfg, const EntropyProfile& h,
                           int q) {
  const Bits top = static_cast<Bits>(std::llround(std::floor(h.h_triple)));
  std::vector<Bits> grid;
  if (cfg.grid == "auto") {
    std::vector<Bits> anchors = {0, top};
    for (double b : lower_bound_breakpoints(h))
      anchors.push_back(static_cast<Bits>(std::llround(b)));
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      grid.push_back(anchors[i]);
      if (i + 1 < anchors.size())
        for (int k = 1; k <= q; ++k)
          grid.push_back(anchors[i] + (anchors[i + 1] - anchors[i]) * k / (q + 1));
    }
  } else {
    grid = parse_grid_list(cfg.grid);
    for (Bits M : grid)
      if (M < 0 || M > top) {
        std::ostringstream os;
        os << "grid point M=" << M << " outside [0, " << top << "]";
        throw std::invalid_argument(os.str());
      }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// ---------------------------------------------------------------------------
// Commands.

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.stream();
  if (cfg.spec) {
    cfg.spec->validate();
    const RateTuple t = generating_tuple(*cfg.spec);
    const EntropyProfile h = entropy_profile_structured(*cfg.spec);
    const std::vector<Bits> grid =
        structured_grid(cfg, t, cfg.spec->granularity_q, false);
    os << kCsvHeader << '\n';
    for (Bits M : grid) write_point_row(os, analytic_point(M, t, h), false);
  } else {
    const PmfSource pmf = load_pmf_source(*cfg.pmf_path);
    const EntropyProfile h = entropy_profile_pmf(pmf);
    const std::vector<Bits> grid = pmf_grid(cfg, h, 4);
    os << kCsvHeader << '\n';
    for (Bits M : grid)
      os << M << ",," << csv_num(lower_bound(M, h)) << ",,,\n";
  }
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.spec)
    throw std::invalid_argument(
        "simulate requires a structured source; curve handles pmf sources");
  cfg.spec->validate();
  const RateTuple t = generating_tuple(*cfg.spec);
  const std::vector<Bits> grid =
      structured_grid(cfg, t, cfg.spec->granularity_q, true);

  const SweepResult res = sweep(*cfg.spec, cfg.seed, grid);

  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.stream();
  os << kCsvHeader << ",R_measured" << '\n';
  for (const RateCurvePoint& p : res.points) write_point_row(os, p, true);

  std::ostream& verdict = sink.to_file() ? out : err;
  if (res.pass()) {
    verdict << "PASS 9 demands x " << res.points.size()
            << " grid points (seed=" << cfg.seed << ", generator=" << kGeneratorId
            << "); max gap " << csv_num(res.max_gap) << " bits at M="
            << res.max_gap_M << '\n';
    return 0;
  }
  verdict << "FAIL (" << res.violations.size() << " violation"
          << (res.violations.size() == 1 ? "" : "s") << "):" << '\n';
  for (const std::string& v : res.violations) verdict << "  - " << v << '\n';
  return 1;
}

std::string cache_line(const std::vector<CacheUnit>& units) {
  if (units.empty()) return "(empty)";
  std::string out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (i) out += ", ";
    out += units[i].label;
  }
  return out;
}

std::string codeword_line(const MulticastCodeword& cw) {
  if (cw.units.empty()) return "(empty)";
  std::string out = "{";
  for (std::size_t i = 0; i < cw.units.size(); ++i) {
    if (i) out += ", ";
    out += cw.units[i].label;
  }
  out += "}";
  return out;
}

int cmd_trace(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.spec)
    throw std::invalid_argument("trace requires a structured source");
  if (!cfg.M) throw std::invalid_argument("trace requires --M");
  if (!cfg.demand) throw std::invalid_argument("trace requires --demand d1,d2");
  cfg.spec->validate();
  const SourceSpec& spec = *cfg.spec;
  const RateTuple t = generating_tuple(spec);
  const Bits M = *cfg.M;
  if (M < 0 || M > t.sum_rate()) {
    std::ostringstream os;
    os << "M=" << M << " outside [0, " << t.sum_rate() << "]";
    throw std::invalid_argument(os.str());
  }
  if (!on_grid(M, t)) {
    const auto [lo, hi] = nearest_on_grid(M, t);
    std::ostringstream os;
    os << "M=" << M
       << " is not realizable bit-exactly; nearest on-grid budgets: " << lo
       << " and " << hi;
    throw std::invalid_argument(os.str());
  }
  const Demand d = *cfg.demand;
  const Library lib = make_structured_library(spec, cfg.seed);
  const DemandTrace tr = run_demand_traced(M, lib, d);

  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.stream();
  os << "trace: seed=" << cfg.seed << " generator=" << kGeneratorId << '\n';
  os << "source: c0=" << spec.c0 << " cp=" << spec.cp << " cv=" << spec.cv
     << " q=" << spec.granularity_q << '\n';
  os << "tuple: rho0=" << t.rho0 << " rho'=" << t.rho_pair
     << " rho=" << t.rho_priv << ", sum rate " << t.sum_rate() << '\n';
  os << "M=" << M << " -> regime " << tr.alloc.regime_id
     << " allocation: m3=" << tr.alloc.m3 << " m2=" << tr.alloc.m2
     << " m1=" << tr.alloc.m1 << '\n';
  os << "demand: (" << d.d1 << "," << d.d2 << ") pattern="
     << (tr.rs.l2.kind() == L2Kind::kDistinct ? "DISTINCT" : "EQUAL");
  if (tr.rs.l2.kind() == L2Kind::kDistinct)
    os << " common=" << tr.rs.l2.common().wname();
  os << '\n';

  os << "placement:" << '\n';
  const struct {
    const char* name;
    const char* budget;
    Bits m;
    const CacheContents* cc;
  } sections[3] = {{"L3", "m3", tr.alloc.m3, &tr.l3c},
                   {"L2", "m2", tr.alloc.m2, &tr.l2c},
                   {"L1", "m1", tr.alloc.m1, &tr.l1c}};
  for (const auto& sec : sections) {
    os << "  " << sec.name << " (" << sec.budget << "=" << sec.m << "):" << '\n';
    for (int r = 0; r < 2; ++r)
      os << "    Z_r" << r + 1 << " = "
         << cache_line(sec.cc->receiver[static_cast<std::size_t>(r)]) << '\n';
  }

  os << "delivery:" << '\n';
  os << "  L3: Y = " << codeword_line(tr.y3) << '\n';
  os << "  L2: Y = " << codeword_line(tr.y2) << '\n';
  os << "  L1: Y = " << codeword_line(tr.y1) << '\n';
  os << "  total transmitted: " << tr.total_bits << " bits"
     << (tr.total_bits == 0 ? " (empty codeword)" : "") << '\n';

  bool all_ok = true;
  for (int r = 0; r < 2; ++r) {
    const int file = d.at(r);
    os << "decode r" << r + 1 << ":" << '\n';
    for (const std::string& line : tr.steps[static_cast<std::size_t>(r)].lines)
      os << "  " << line << '\n';
    if (tr.ok[static_cast<std::size_t>(r)]) {
      std::string parts;
      for (Subset s : request_set(file)) {
        if (!parts.empty()) parts += " | ";
        parts += s.wname();
      }
      os << "  X" << file << " = " << parts << '\n';
      os << "decode r" << r + 1 << ": OK (X" << file
         << " recovered bit-exactly)" << '\n';
    } else {
      all_ok = false;
      os << "decode r" << r + 1 << ": FAIL ("
         << tr.decode_error[static_cast<std::size_t>(r)] << ")" << '\n';
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

std::string csv_num(double v) {
  const long long r = std::llround(v);
  if (std::fabs(v - static_cast<double>(r)) < 1e-9) return std::to_string(r);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Cache-aided broadcast of three correlated files to two receivers"};
  app.require_subcommand(1);
  RawOptions raw_curve, raw_sim, raw_trace;
  CLI::App* curve = app.add_subcommand(
      "curve", "achievable rate and converse over a budget grid");
  add_common_options(curve, &raw_curve);
  CLI::App* simulate = app.add_subcommand(
      "simulate", "bit-level simulation of every demand over a budget grid");
  add_common_options(simulate, &raw_sim);
  CLI::App* trace = app.add_subcommand(
      "trace", "step-by-step placement, delivery, and decode at one budget");
  add_common_options(trace, &raw_trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (curve->parsed()) return cmd_curve(resolve(curve, raw_curve), out);
    if (simulate->parsed())
      return cmd_simulate(resolve(simulate, raw_sim), out, err);
    return cmd_trace(resolve(trace, raw_trace), out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gwcacm
