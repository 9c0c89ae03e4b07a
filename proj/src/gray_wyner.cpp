#include "gwcacm/gray_wyner.hpp"

#include <sstream>

namespace gwcacm {

Bits RateTuple::size_of(Subset s) const {
  switch (s.size()) {
    case 3:
      return rho0;
    case 2:
      return rho_pair;
    default:
      return rho_priv;
  }
}

DescriptionSet gw_encode(const Library& lib) {
  DescriptionSet out;
  out.w = lib.components;
  out.tuple = generating_tuple(lib.spec);
  return out;
}

RateTuple generating_tuple(const SourceSpec& spec) {
  return RateTuple{spec.c0, spec.cp, spec.cv};
}

std::array<Subset, 4> request_set(int file_index) {
  return file_component_order(file_index);
}

BitString gw_decode(int file_index, const std::map<Subset, BitString>& descs,
                    const RateTuple& expected) {
  if (file_index < 1 || file_index > 3)
    throw std::invalid_argument("file index must be 1..3");
  BitString out;
  for (Subset s : request_set(file_index)) {
    auto it = descs.find(s);
    if (it == descs.end())
      throw DecodeError("missing description " + s.wname());
    const Bits want = expected.size_of(s);
    if (static_cast<Bits>(it->second.size()) != want) {
      std::ostringstream os;
      os << "description " << s.wname() << " has " << it->second.size()
         << " bits, expected " << want;
      throw DecodeError(os.str());
    }
    append(out, it->second);
  }
  return out;
}

L2Kind L2Demand::kind() const {
  return wants_r1 == wants_r2 ? L2Kind::kEqual : L2Kind::kDistinct;
}

Subset L2Demand::common() const {
  if (kind() != L2Kind::kDistinct)
    throw std::logic_error("common() is only defined for DISTINCT demands");
  for (Subset a : wants_r1)
    for (Subset b : wants_r2)
      if (a == b) return a;
  throw std::logic_error("distinct demand without a common description");
}

Subset L2Demand::only_r1() const {
  const Subset c = common();
  return wants_r1[0] == c ? wants_r1[1] : wants_r1[0];
}

Subset L2Demand::only_r2() const {
  const Subset c = common();
  return wants_r2[0] == c ? wants_r2[1] : wants_r2[0];
}

RequestSets request_sets(const Demand& d) {
  d.validate();
  RequestSets out;
  for (int r = 0; r < 2; ++r) out.per_receiver[r] = request_set(d.at(r));
  auto wants = [](int file) {
    std::array<Subset, 2> w = {Subset::pair(1, 2), Subset::pair(1, 3)};
    int i = 0;
    for (Subset s : pair_subsets())
      if (s.contains(file)) w[i++] = s;
    return w;
  };
  out.l2.wants_r1 = wants(d.d1);
  out.l2.wants_r2 = wants(d.d2);
  return out;
}

Sublibraries sublibraries() { return Sublibraries{}; }

}  // namespace gwcacm
