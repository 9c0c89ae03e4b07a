#include "gwcacm/source_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gwcacm {

void SourceSpec::validate() const {
  if (granularity_q < 1)
    throw std::invalid_argument("granularity_q must be a positive integer");
  if (c0 < 0) throw std::invalid_argument("c0 must be nonnegative");
  if (cp < 0) throw std::invalid_argument("cp must be nonnegative");
  if (cv < 0) throw std::invalid_argument("cv must be nonnegative");
  const Bits q = granularity_q;
  auto fail = [](const std::string& field, Bits value, Bits div) {
    std::ostringstream os;
    os << field << "=" << value << " is not divisible by " << div;
    throw std::invalid_argument(os.str());
  };
  if (c0 % q != 0) fail("c0", c0, q);
  if (cp % (6 * q) != 0) fail("cp", cp, 6 * q);
  if (cv % (6 * q) != 0) fail("cv", cv, 6 * q);
  if (c0 == 0 && cp == 0 && cv == 0)
    throw std::invalid_argument("at least one of c0, cp, cv must be positive");
}

Bits SourceSpec::component_size(Subset s) const {
  switch (s.size()) {
    case 3:
      return c0;
    case 2:
      return cp;
    default:
      return cv;
  }
}

const BitString& Library::file(int index) const {
  if (index < 1 || index > 3)
    throw std::invalid_argument("file index must be 1..3");
  return files[index - 1];
}

std::array<Subset, 4> file_component_order(int file_index) {
  if (file_index < 1 || file_index > 3)
    throw std::invalid_argument("file index must be 1..3");
  std::array<Subset, 4> out = {Subset::all(), Subset::all(), Subset::all(),
                               Subset::all()};
  int i = 0;
  for (Subset s : canonical_subsets())
    if (s.contains(file_index)) out[i++] = s;
  return out;
}

Library make_structured_library(const SourceSpec& spec, std::uint64_t seed) {
  spec.validate();
  Library lib;
  lib.spec = spec;
  lib.seed = seed;
  // Components are drawn in canonical subset order from a single stream, so
  // (spec, seed) pins every bit of the library.
  std::mt19937_64 gen(seed);
  for (Subset s : canonical_subsets())
    lib.components[s] = random_bits(gen, spec.component_size(s));
  for (int f = 1; f <= 3; ++f) {
    BitString& x = lib.files[f - 1];
    for (Subset s : file_component_order(f)) append(x, lib.components.at(s));
  }
  return lib;
}

EntropyProfile entropy_profile_structured(const SourceSpec& spec) {
  spec.validate();
  EntropyProfile h;
  h.h_single = static_cast<double>(spec.c0 + 2 * spec.cp + spec.cv);
  h.h_pair = static_cast<double>(spec.c0 + 3 * spec.cp + 2 * spec.cv);
  h.h_triple = static_cast<double>(spec.c0 + 3 * spec.cp + 3 * spec.cv);
  h.h_pair_given_one = static_cast<double>(spec.cp + 2 * spec.cv);
  return h;
}

void PmfSource::validate() const {
  if (n1 < 1 || n2 < 1 || n3 < 1)
    throw std::invalid_argument("alphabet sizes n1, n2, n3 must be positive");
  const size_t want = static_cast<size_t>(n1) * n2 * n3;
  if (p.size() != want) {
    std::ostringstream os;
    os << "pmf has " << p.size() << " entries, expected n1*n2*n3 = " << want;
    throw std::invalid_argument(os.str());
  }
  double sum = 0;
  for (double v : p) {
    if (v < 0) throw std::invalid_argument("pmf entries must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "pmf does not sum to 1 (sum = " << sum << ")";
    throw std::invalid_argument(os.str());
  }
}

double PmfSource::at(int x1, int x2, int x3) const {
  return p[(static_cast<size_t>(x1) * n2 + x2) * n3 + x3];
}

namespace {

double entropy(const std::vector<double>& dist) {
  double h = 0;
  for (double v : dist)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

}  // namespace

EntropyProfile entropy_profile_pmf(const PmfSource& src) {
  src.validate();
  std::vector<double> p1(src.n1, 0.0), p2(src.n2, 0.0), p3(src.n3, 0.0);
  std::vector<double> p12(static_cast<size_t>(src.n1) * src.n2, 0.0);
  std::vector<double> p13(static_cast<size_t>(src.n1) * src.n3, 0.0);
  std::vector<double> p23(static_cast<size_t>(src.n2) * src.n3, 0.0);
  for (int a = 0; a < src.n1; ++a)
    for (int b = 0; b < src.n2; ++b)
      for (int c = 0; c < src.n3; ++c) {
        const double v = src.at(a, b, c);
        p1[a] += v;
        p2[b] += v;
        p3[c] += v;
        p12[static_cast<size_t>(a) * src.n2 + b] += v;
        p13[static_cast<size_t>(a) * src.n3 + c] += v;
        p23[static_cast<size_t>(b) * src.n3 + c] += v;
      }
  EntropyProfile h;
  h.h_single = std::max({entropy(p1), entropy(p2), entropy(p3)});
  h.h_pair = std::max({entropy(p12), entropy(p13), entropy(p23)});
  h.h_triple = entropy(src.p);
  h.h_pair_given_one = h.h_triple - h.h_single;
  return h;
}

namespace {

nlohmann::json parse_json(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

SourceSpec parse_source_spec(const std::string& json_text) {
  const auto j = parse_json(json_text, "source spec");
  SourceSpec spec;
  try {
    if (j.contains("c0")) spec.c0 = j.at("c0").get<Bits>();
    if (j.contains("cp")) spec.cp = j.at("cp").get<Bits>();
    if (j.contains("cv")) spec.cv = j.at("cv").get<Bits>();
    if (j.contains("granularity_q"))
      spec.granularity_q = j.at("granularity_q").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("source spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

SourceSpec load_source_spec(const std::string& path) {
  return parse_source_spec(read_file(path));
}

PmfSource parse_pmf_source(const std::string& json_text) {
  const auto j = parse_json(json_text, "pmf source");
  PmfSource src;
  try {
    src.n1 = j.at("n1").get<int>();
    src.n2 = j.at("n2").get<int>();
    src.n3 = j.at("n3").get<int>();
    src.p = j.at("p").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("pmf source: ") + e.what());
  }
  src.validate();
  return src;
}

PmfSource load_pmf_source(const std::string& path) {
  return parse_pmf_source(read_file(path));
}

}  // namespace gwcacm
