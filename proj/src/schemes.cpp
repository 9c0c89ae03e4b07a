#include "gwcacm/schemes.hpp"

#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace gwcacm {
namespace {

constexpr char kXor[] = "⊕";

std::string join_labels(const std::vector<PacketRef>& refs, Bits full_size) {
  std::string out;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i) out += kXor;
    out += refs[i].label(full_size);
  }
  return out;
}

using UnitPlan = std::vector<std::vector<PacketRef>>;

CacheUnit materialize(const std::vector<PacketRef>& refs,
                      const std::map<Subset, BitString>& w, Bits full_size) {
  CacheUnit u;
  u.composition = refs;
  u.label = join_labels(refs, full_size);
  const Bits n = refs.front().packet_size();
  u.payload.assign(static_cast<std::size_t>(n), 0);
  for (const PacketRef& r : refs) {
    if (r.packet_size() != n)
      throw std::logic_error("packet size mismatch inside one unit");
    xor_in_place(u.payload, slice(w.at(r.s), r.abs_offset(), r.packet_size()));
  }
  return u;
}

// Finds the corner bracket containing m and the segment split realizing it.
// Returns false when m is not representable on the bit grid.
template <std::size_t N>
bool compute_share_plan(const std::array<CornerScheme, N>& corners, Bits m,
                        Bits size, SharePlan* out) {
  if (size == 0) {
    if (m != 0) return false;
    *out = SharePlan{};
    return true;
  }
  if (m < 0 || m > corners.back().budget) return false;
  std::size_t i = 0;
  while (i + 2 < N && m > corners[i + 1].budget) ++i;
  const CornerScheme& a = corners[i];
  const CornerScheme& b = corners[i + 1];
  const Bits gap = b.budget - a.budget;
  const Bits num = size * (b.budget - m);
  if (num % gap != 0) return false;
  const Bits seg_a = num / gap;
  const Bits seg_b = size - seg_a;
  if (seg_a % a.split != 0 || seg_b % b.split != 0) return false;
  *out = SharePlan{static_cast<int>(i), static_cast<int>(i) + 1, seg_a, seg_b};
  return true;
}

void check_rho(Bits rho, const char* what) {
  if (rho < 0) throw std::invalid_argument(std::string(what) + " must be nonnegative");
  if (rho % 2 != 0)
    throw std::invalid_argument(std::string(what) +
                                " must be even for bit-exact corner budgets");
}

}  // namespace

std::string PacketRef::label(Bits full_size) const {
  std::ostringstream os;
  os << s.wname();
  if (seg.offset == 0 && seg.length == full_size) {
    if (denom > 1) os << "(" << index << ")";
  } else {
    os << "[" << abs_offset() << ":" << abs_offset() + packet_size() << "]";
  }
  return os.str();
}

Bits CacheContents::used_bits(int r) const {
  Bits total = 0;
  for (const CacheUnit& u : receiver.at(static_cast<std::size_t>(r)))
    total += static_cast<Bits>(u.payload.size());
  return total;
}

Bits MulticastCodeword::total_bits() const {
  Bits total = 0;
  for (const CacheUnit& u : units) total += static_cast<Bits>(u.payload.size());
  return total;
}

SharePlan memory_share(const CornerScheme& a, const CornerScheme& b, Bits m,
                       Bits size) {
  if (m < a.budget || m > b.budget)
    throw std::invalid_argument("target budget outside the corner bracket");
  const std::array<CornerScheme, 2> corners = {a, b};
  SharePlan plan;
  if (!compute_share_plan(corners, m, size, &plan))
    throw std::invalid_argument(
        "budget not representable between the two corner schemes");
  return plan;
}

std::array<CornerScheme, 5> l2_corners(Bits rho_pair) {
  return {CornerScheme{0, 1}, CornerScheme{rho_pair / 2, 2},
          CornerScheme{3 * rho_pair / 2, 2}, CornerScheme{2 * rho_pair, 3},
          CornerScheme{3 * rho_pair, 1}};
}

std::array<CornerScheme, 3> l1_corners(Bits rho_priv) {
  return {CornerScheme{0, 1}, CornerScheme{3 * rho_priv / 2, 2},
          CornerScheme{3 * rho_priv, 1}};
}

bool l2_on_grid(Bits m2, Bits rho_pair) {
  SharePlan plan;
  return compute_share_plan(l2_corners(rho_pair), m2, rho_pair, &plan);
}

bool l1_on_grid(Bits m1, Bits rho_priv) {
  SharePlan plan;
  return compute_share_plan(l1_corners(rho_priv), m1, rho_priv, &plan);
}

std::pair<Bits, Bits> l2_nearest_on_grid(Bits m2, Bits rho_pair) {
  Bits lo = std::min(std::max<Bits>(m2, 0), 3 * rho_pair);
  Bits hi = lo;
  while (lo > 0 && !l2_on_grid(lo, rho_pair)) --lo;
  while (hi < 3 * rho_pair && !l2_on_grid(hi, rho_pair)) ++hi;
  return {lo, hi};
}

std::pair<Bits, Bits> l1_nearest_on_grid(Bits m1, Bits rho_priv) {
  Bits lo = std::min(std::max<Bits>(m1, 0), 3 * rho_priv);
  Bits hi = lo;
  while (lo > 0 && !l1_on_grid(lo, rho_priv)) --lo;
  while (hi < 3 * rho_priv && !l1_on_grid(hi, rho_priv)) ++hi;
  return {lo, hi};
}

SharePlan l2_share_plan(Bits m2, Bits rho_pair) {
  if (rho_pair == 0) {
    if (m2 != 0)
      throw std::invalid_argument("m2 must be 0 when the pair rate is 0");
    return SharePlan{};
  }
  check_rho(rho_pair, "pair description size");
  if (m2 < 0 || m2 > 3 * rho_pair) {
    std::ostringstream os;
    os << "m2=" << m2 << " outside [0, " << 3 * rho_pair << "]";
    throw std::invalid_argument(os.str());
  }
  SharePlan plan;
  if (!compute_share_plan(l2_corners(rho_pair), m2, rho_pair, &plan)) {
    const auto [lo, hi] = l2_nearest_on_grid(m2, rho_pair);
    std::ostringstream os;
    os << "m2=" << m2
       << " is not on the quantization grid; nearest representable budgets: "
       << lo << " and " << hi;
    throw std::invalid_argument(os.str());
  }
  return plan;
}

SharePlan l1_share_plan(Bits m1, Bits rho_priv) {
  if (rho_priv == 0) {
    if (m1 != 0)
      throw std::invalid_argument("m1 must be 0 when the private rate is 0");
    return SharePlan{};
  }
  check_rho(rho_priv, "private description size");
  if (m1 < 0 || m1 > 3 * rho_priv) {
    std::ostringstream os;
    os << "m1=" << m1 << " outside [0, " << 3 * rho_priv << "]";
    throw std::invalid_argument(os.str());
  }
  SharePlan plan;
  if (!compute_share_plan(l1_corners(rho_priv), m1, rho_priv, &plan)) {
    const auto [lo, hi] = l1_nearest_on_grid(m1, rho_priv);
    std::ostringstream os;
    os << "m1=" << m1
       << " is not on the quantization grid; nearest representable budgets: "
       << lo << " and " << hi;
    throw std::invalid_argument(os.str());
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Common-description sublibrary.

namespace {

// Prefix length cached per receiver; packets sized gcd(prefix, total) so both
// the cached prefix and the transmitted suffix are whole numbers of packets.
struct L3Layout {
  Bits len = 0;
  Bits prefix = 0;
  Bits packet = 0;
  int denom = 1;
};

L3Layout l3_layout(Bits prefix, Bits len) {
  L3Layout l;
  l.len = len;
  l.prefix = prefix;
  if (len == 0) return l;
  l.packet = std::gcd(prefix, len);
  l.denom = static_cast<int>(len / l.packet);
  return l;
}

}  // namespace

CacheContents l3_place(Bits m3, const BitString& w123) {
  if (m3 < 0) throw std::invalid_argument("m3 must be nonnegative");
  const Bits len = static_cast<Bits>(w123.size());
  const L3Layout l = l3_layout(std::min(m3, len), len);
  CacheContents cc;
  if (l.len == 0 || l.prefix == 0) return cc;
  const Segment whole{0, l.len};
  for (Bits k = 1; k <= l.prefix / l.packet; ++k) {
    CacheUnit u;
    u.composition = {PacketRef{Subset::all(), static_cast<int>(k), l.denom, whole}};
    u.payload = slice(w123, (k - 1) * l.packet, l.packet);
    u.label = u.composition.front().label(l.len);
    cc.receiver[0].push_back(u);
    cc.receiver[1].push_back(u);
  }
  return cc;
}

MulticastCodeword l3_deliver(const CacheContents& caches, const BitString& w123) {
  const Bits len = static_cast<Bits>(w123.size());
  const L3Layout l = l3_layout(caches.used_bits(0), len);
  MulticastCodeword cw;
  if (l.len == 0) return cw;
  const Segment whole{0, l.len};
  for (Bits k = l.prefix / l.packet + 1; k <= l.denom; ++k) {
    CacheUnit u;
    u.composition = {PacketRef{Subset::all(), static_cast<int>(k), l.denom, whole}};
    u.payload = slice(w123, (k - 1) * l.packet, l.packet);
    u.label = u.composition.front().label(l.len);
    cw.units.push_back(u);
  }
  return cw;
}

BitString l3_decode(int receiver, const CacheContents& caches,
                    const MulticastCodeword& cw, DecodeSteps* steps) {
  BitString out;
  for (const CacheUnit& u : caches.receiver.at(static_cast<std::size_t>(receiver)))
    append(out, u.payload);
  const Bits cached = static_cast<Bits>(out.size());
  for (const CacheUnit& u : cw.units) append(out, u.payload);
  if (steps && !out.empty()) {
    std::ostringstream os;
    os << "W123 = cached prefix (" << cached << " bits) + received suffix ("
       << static_cast<Bits>(out.size()) - cached << " bits)";
    steps->lines.push_back(os.str());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pair sublibrary.

namespace {

// Placement layout for one corner on one segment. Unit order is part of the
// scheme: decode consumes cache units positionally.
UnitPlan l2_cache_plan(int corner, Segment seg, int r) {
  UnitPlan units;
  if (seg.length == 0) return units;
  switch (corner) {
    case 0:
      break;
    case 1: {
      std::vector<PacketRef> refs;
      for (Subset s : pair_subsets()) refs.push_back(PacketRef{s, r + 1, 2, seg});
      units.push_back(refs);
      break;
    }
    case 2:
      for (Subset s : pair_subsets())
        units.push_back({PacketRef{s, r + 1, 2, seg}});
      break;
    case 3:
      for (Subset s : pair_subsets())
        for (int k = 1; k <= 2; ++k)
          units.push_back({PacketRef{s, r + k, 3, seg}});
      break;
    case 4:
      for (Subset s : pair_subsets()) units.push_back({PacketRef{s, 1, 1, seg}});
      break;
    default:
      throw std::logic_error("bad pair-sublibrary corner");
  }
  return units;
}

UnitPlan l2_deliver_plan(int corner, Segment seg, const L2Demand& pattern) {
  UnitPlan units;
  if (seg.length == 0) return units;
  if (pattern.kind() == L2Kind::kDistinct) {
    const Subset c = pattern.common();
    const Subset a = pattern.only_r1();
    const Subset b = pattern.only_r2();
    switch (corner) {
      case 0:
        units = {{PacketRef{c, 1, 1, seg}},
                 {PacketRef{a, 1, 1, seg}},
                 {PacketRef{b, 1, 1, seg}}};
        break;
      case 1:
        units = {{PacketRef{c, 1, 2, seg}},
                 {PacketRef{c, 2, 2, seg}},
                 {PacketRef{a, 2, 2, seg}},
                 {PacketRef{b, 1, 2, seg}}};
        break;
      case 2:
        units = {{PacketRef{c, 2, 2, seg}, PacketRef{c, 1, 2, seg}},
                 {PacketRef{a, 2, 2, seg}, PacketRef{b, 1, 2, seg}}};
        break;
      case 3:
        units = {{PacketRef{c, 3, 3, seg}, PacketRef{c, 1, 3, seg}},
                 {PacketRef{a, 3, 3, seg}, PacketRef{b, 1, 3, seg}}};
        break;
      case 4:
        break;
      default:
        throw std::logic_error("bad pair-sublibrary corner");
    }
  } else {
    const Subset x = pattern.wants_r1[0];
    const Subset y = pattern.wants_r1[1];
    switch (corner) {
      case 0:
      case 1:
        units = {{PacketRef{x, 1, 1, seg}}, {PacketRef{y, 1, 1, seg}}};
        break;
      case 2:
        units = {{PacketRef{x, 2, 2, seg}, PacketRef{x, 1, 2, seg}},
                 {PacketRef{y, 2, 2, seg}, PacketRef{y, 1, 2, seg}}};
        break;
      case 3:
        units = {{PacketRef{x, 3, 3, seg}, PacketRef{x, 1, 3, seg}},
                 {PacketRef{y, 3, 3, seg}, PacketRef{y, 1, 3, seg}}};
        break;
      case 4:
        break;
      default:
        throw std::logic_error("bad pair-sublibrary corner");
    }
  }
  return units;
}

void verify_units(const std::vector<CacheUnit>& units, const UnitPlan& plan,
                  const char* what) {
  if (units.size() != plan.size()) {
    std::ostringstream os;
    os << what << " has " << units.size() << " units, expected " << plan.size();
    throw DecodeError(os.str());
  }
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (units[i].composition != plan[i]) {
      std::ostringstream os;
      os << what << " unit " << i << " does not match the scheme layout";
      throw DecodeError(os.str());
    }
  }
}

std::vector<CacheUnit> segment_units(const std::vector<CacheUnit>& all,
                                     std::size_t from, std::size_t count) {
  return std::vector<CacheUnit>(all.begin() + static_cast<std::ptrdiff_t>(from),
                                all.begin() +
                                    static_cast<std::ptrdiff_t>(from + count));
}

void note(DecodeSteps* steps, const std::string& line) {
  if (steps) steps->lines.push_back(line);
}

// Decodes one corner on one segment for one receiver. `cache` and `cw` hold
// exactly this segment's units, already verified against the layout.
std::map<Subset, BitString> l2_decode_segment(int corner, Segment seg, int r,
                                              const L2Demand& pattern,
                                              const std::vector<CacheUnit>& cache,
                                              const std::vector<CacheUnit>& cw,
                                              Bits full_size,
                                              DecodeSteps* steps) {
  std::map<Subset, BitString> got;
  const std::array<Subset, 2> wants = pattern.wants(r);
  if (seg.length == 0) {
    for (Subset s : wants) got[s];
    return got;
  }

  auto cached = [&](Subset s, int k) -> const BitString& {
    for (const CacheUnit& u : cache) {
      if (u.composition.size() == 1 && u.composition[0].s == s &&
          u.composition[0].index == k)
        return u.payload;
    }
    throw DecodeError("cache is missing packet " + s.wname() + " #" +
                      std::to_string(k));
  };
  auto lbl = [&](Subset s, int k, int denom) {
    return PacketRef{s, k, denom, seg}.label(full_size);
  };
  auto zname = [&] { return "Z_r" + std::to_string(r + 1); };

  const bool distinct = pattern.kind() == L2Kind::kDistinct;
  if (distinct) {
    const Subset c = pattern.common();
    const Subset a = pattern.only_r1();
    const Subset b = pattern.only_r2();
    const Subset own = (r == 0) ? a : b;  // the side description only r wants
    const Subset other = (r == 0) ? b : a;
    switch (corner) {
      case 0: {
        got[c] = cw[0].payload;
        got[own] = cw[r == 0 ? 1 : 2].payload;
        note(steps, c.wname() + " received");
        note(steps, own.wname() + " received");
        break;
      }
      case 1: {
        got[c] = cw[0].payload;
        append(got[c], cw[1].payload);
        note(steps, c.wname() + " = " + lbl(c, 1, 2) + " | " + lbl(c, 2, 2) +
                        " received");
        if (r == 0) {
          // a(1) = Z xor c(1) xor b(1); a(2) received.
          BitString a1 = xor_bits(cache[0].payload, cw[0].payload);
          xor_in_place(a1, cw[3].payload);
          note(steps, lbl(a, 1, 2) + " = " + zname() + " " + kXor + " " +
                          lbl(c, 1, 2) + " " + kXor + " " + lbl(b, 1, 2));
          note(steps, lbl(a, 2, 2) + " received");
          got[a] = a1;
          append(got[a], cw[2].payload);
        } else {
          // b(2) = Z xor c(2) xor a(2); b(1) received.
          BitString b2 = xor_bits(cache[0].payload, cw[1].payload);
          xor_in_place(b2, cw[2].payload);
          note(steps, lbl(b, 2, 2) + " = " + zname() + " " + kXor + " " +
                          lbl(c, 2, 2) + " " + kXor + " " + lbl(a, 2, 2));
          note(steps, lbl(b, 1, 2) + " received");
          got[b] = cw[3].payload;
          append(got[b], b2);
        }
        break;
      }
      case 2: {
        // r0 cached first halves, r1 second halves.
        const int have = r + 1;          // cached packet index
        const int need = (r == 0) ? 2 : 1;  // recovered from the codeword
        BitString c_need = xor_bits(cw[0].payload, cached(c, have));
        note(steps, lbl(c, need, 2) + " = Y[0] " + kXor + " cached " +
                        lbl(c, have, 2));
        BitString own_need = xor_bits(cw[1].payload, cached(other, have));
        note(steps, lbl(own, need, 2) + " = Y[1] " + kXor + " cached " +
                        lbl(other, have, 2));
        auto assemble = [&](Subset s, BitString recovered) {
          BitString w;
          for (int k = 1; k <= 2; ++k) {
            if (k == need)
              append(w, recovered);
            else
              append(w, cached(s, k));
          }
          got[s] = std::move(w);
        };
        assemble(c, std::move(c_need));
        assemble(own, std::move(own_need));
        break;
      }
      case 3: {
        // r0 cached thirds {1,2}, r1 thirds {2,3}.
        const int have = (r == 0) ? 1 : 3;  // the third XORed into the codeword
        const int need = (r == 0) ? 3 : 1;
        BitString c_need = xor_bits(cw[0].payload, cached(c, have));
        note(steps, lbl(c, need, 3) + " = Y[0] " + kXor + " cached " +
                        lbl(c, have, 3));
        BitString own_need = xor_bits(cw[1].payload, cached(other, have));
        note(steps, lbl(own, need, 3) + " = Y[1] " + kXor + " cached " +
                        lbl(other, have, 3));
        auto assemble = [&](Subset s, BitString recovered) {
          BitString w;
          for (int k = 1; k <= 3; ++k) {
            if (k == need)
              append(w, recovered);
            else
              append(w, cached(s, k));
          }
          got[s] = std::move(w);
        };
        assemble(c, std::move(c_need));
        assemble(own, std::move(own_need));
        break;
      }
      case 4: {
        got[c] = cached(c, 1);
        got[own] = cached(own, 1);
        note(steps, c.wname() + " from cache");
        note(steps, own.wname() + " from cache");
        break;
      }
      default:
        throw std::logic_error("bad pair-sublibrary corner");
    }
  } else {
    const Subset x = wants[0];
    const Subset y = wants[1];
    switch (corner) {
      case 0:
      case 1: {
        got[x] = cw[0].payload;
        got[y] = cw[1].payload;
        note(steps, x.wname() + " received");
        note(steps, y.wname() + " received");
        break;
      }
      case 2:
      case 3: {
        const int denom = (corner == 2) ? 2 : 3;
        const int have = (r == 0) ? 1 : denom;
        const int need = (r == 0) ? denom : 1;
        auto recover = [&](Subset s, std::size_t unit) {
          BitString part = xor_bits(cw[unit].payload, cached(s, have));
          note(steps, lbl(s, need, denom) + " = Y[" + std::to_string(unit) +
                          "] " + kXor + " cached " + lbl(s, have, denom));
          BitString w;
          for (int k = 1; k <= denom; ++k) {
            if (k == need)
              append(w, part);
            else
              append(w, cached(s, k));
          }
          got[s] = std::move(w);
        };
        recover(x, 0);
        recover(y, 1);
        break;
      }
      case 4: {
        got[x] = cached(x, 1);
        got[y] = cached(y, 1);
        note(steps, x.wname() + " from cache");
        note(steps, y.wname() + " from cache");
        break;
      }
      default:
        throw std::logic_error("bad pair-sublibrary corner");
    }
  }
  return got;
}

}  // namespace

CacheContents l2_place(Bits m2, const DescriptionSet& descs) {
  const Bits rho = descs.tuple.rho_pair;
  const SharePlan plan = l2_share_plan(m2, rho);
  const Segment seg_a{0, plan.seg_a};
  const Segment seg_b{plan.seg_a, plan.seg_b};
  CacheContents cc;
  for (int r = 0; r < 2; ++r) {
    for (const auto& refs : l2_cache_plan(plan.corner_a, seg_a, r))
      cc.receiver[static_cast<std::size_t>(r)].push_back(
          materialize(refs, descs.w, rho));
    for (const auto& refs : l2_cache_plan(plan.corner_b, seg_b, r))
      cc.receiver[static_cast<std::size_t>(r)].push_back(
          materialize(refs, descs.w, rho));
  }
  return cc;
}

MulticastCodeword l2_deliver(const L2Demand& pattern, const CacheContents& caches,
                             const DescriptionSet& descs) {
  const Bits rho = descs.tuple.rho_pair;
  const SharePlan plan = l2_share_plan(caches.used_bits(0), rho);
  const Segment seg_a{0, plan.seg_a};
  const Segment seg_b{plan.seg_a, plan.seg_b};
  MulticastCodeword cw;
  for (const auto& refs : l2_deliver_plan(plan.corner_a, seg_a, pattern))
    cw.units.push_back(materialize(refs, descs.w, rho));
  for (const auto& refs : l2_deliver_plan(plan.corner_b, seg_b, pattern))
    cw.units.push_back(materialize(refs, descs.w, rho));
  return cw;
}

std::map<Subset, BitString> l2_decode(int receiver, const CacheContents& caches,
                                      const MulticastCodeword& cw,
                                      const L2Demand& pattern, Bits rho_pair,
                                      DecodeSteps* steps) {
  const SharePlan plan = l2_share_plan(caches.used_bits(receiver), rho_pair);
  const Segment seg_a{0, plan.seg_a};
  const Segment seg_b{plan.seg_a, plan.seg_b};

  const UnitPlan cache_a = l2_cache_plan(plan.corner_a, seg_a, receiver);
  const UnitPlan cache_b = l2_cache_plan(plan.corner_b, seg_b, receiver);
  const auto& mine = caches.receiver.at(static_cast<std::size_t>(receiver));
  if (mine.size() != cache_a.size() + cache_b.size())
    throw DecodeError("cache does not match the placement layout");
  const std::vector<CacheUnit> ca = segment_units(mine, 0, cache_a.size());
  const std::vector<CacheUnit> cb =
      segment_units(mine, cache_a.size(), cache_b.size());
  verify_units(ca, cache_a, "cache");
  verify_units(cb, cache_b, "cache");

  const UnitPlan del_a = l2_deliver_plan(plan.corner_a, seg_a, pattern);
  const UnitPlan del_b = l2_deliver_plan(plan.corner_b, seg_b, pattern);
  if (cw.units.size() != del_a.size() + del_b.size()) {
    std::ostringstream os;
    os << "codeword has " << cw.units.size() << " units, expected "
       << del_a.size() + del_b.size();
    throw DecodeError(os.str());
  }
  const std::vector<CacheUnit> ya = segment_units(cw.units, 0, del_a.size());
  const std::vector<CacheUnit> yb =
      segment_units(cw.units, del_a.size(), del_b.size());
  verify_units(ya, del_a, "codeword");
  verify_units(yb, del_b, "codeword");

  auto part_a = l2_decode_segment(plan.corner_a, seg_a, receiver, pattern, ca,
                                  ya, rho_pair, steps);
  auto part_b = l2_decode_segment(plan.corner_b, seg_b, receiver, pattern, cb,
                                  yb, rho_pair, steps);
  std::map<Subset, BitString> out;
  for (Subset s : pattern.wants(receiver)) {
    BitString w = part_a.at(s);
    append(w, part_b.at(s));
    if (static_cast<Bits>(w.size()) != rho_pair)
      throw DecodeError("recovered " + s.wname() + " has the wrong length");
    out[s] = std::move(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Private sublibrary.

namespace {

UnitPlan l1_cache_plan(int corner, Segment seg, int r) {
  UnitPlan units;
  if (seg.length == 0) return units;
  switch (corner) {
    case 0:
      break;
    case 1:
      for (Subset s : single_subsets())
        units.push_back({PacketRef{s, r + 1, 2, seg}});
      break;
    case 2:
      for (Subset s : single_subsets())
        units.push_back({PacketRef{s, 1, 1, seg}});
      break;
    default:
      throw std::logic_error("bad private-sublibrary corner");
  }
  return units;
}

UnitPlan l1_deliver_plan(int corner, Segment seg, const Demand& d) {
  UnitPlan units;
  if (seg.length == 0) return units;
  const Subset s1 = Subset::single(d.d1);
  const Subset s2 = Subset::single(d.d2);
  switch (corner) {
    case 0:
      units.push_back({PacketRef{s1, 1, 1, seg}});
      if (!d.equal()) units.push_back({PacketRef{s2, 1, 1, seg}});
      break;
    case 1:
      units.push_back({PacketRef{s1, 2, 2, seg}, PacketRef{s2, 1, 2, seg}});
      break;
    case 2:
      break;
    default:
      throw std::logic_error("bad private-sublibrary corner");
  }
  return units;
}

BitString l1_decode_segment(int corner, Segment seg, int r, const Demand& d,
                            const std::vector<CacheUnit>& cache,
                            const std::vector<CacheUnit>& cw, Bits full_size,
                            DecodeSteps* steps) {
  if (seg.length == 0) return {};
  const Subset want = Subset::single(d.at(r));
  const Subset other = Subset::single(d.at(1 - r));
  auto cached = [&](Subset s, int k) -> const BitString& {
    for (const CacheUnit& u : cache) {
      if (u.composition.size() == 1 && u.composition[0].s == s &&
          u.composition[0].index == k)
        return u.payload;
    }
    throw DecodeError("cache is missing packet " + s.wname() + " #" +
                      std::to_string(k));
  };
  auto lbl = [&](Subset s, int k, int denom) {
    return PacketRef{s, k, denom, seg}.label(full_size);
  };
  switch (corner) {
    case 0: {
      const std::size_t unit = (r == 0 || d.equal()) ? 0 : 1;
      note(steps, want.wname() + " received");
      return cw.at(unit).payload;
    }
    case 1: {
      // The single coded unit is W_{d1}(2) xor W_{d2}(1).
      BitString w;
      if (r == 0) {
        BitString p2 = xor_bits(cw[0].payload, cached(other, 1));
        note(steps, lbl(want, 2, 2) + " = Y[0] " + kXor + " cached " +
                        lbl(other, 1, 2));
        w = cached(want, 1);
        append(w, p2);
      } else {
        BitString p1 = xor_bits(cw[0].payload, cached(other, 2));
        note(steps, lbl(want, 1, 2) + " = Y[0] " + kXor + " cached " +
                        lbl(other, 2, 2));
        w = p1;
        append(w, cached(want, 2));
      }
      return w;
    }
    case 2: {
      note(steps, want.wname() + " from cache");
      return cached(want, 1);
    }
    default:
      throw std::logic_error("bad private-sublibrary corner");
  }
}

}  // namespace

CacheContents l1_place(Bits m1, const DescriptionSet& descs) {
  const Bits rho = descs.tuple.rho_priv;
  const SharePlan plan = l1_share_plan(m1, rho);
  const Segment seg_a{0, plan.seg_a};
  const Segment seg_b{plan.seg_a, plan.seg_b};
  CacheContents cc;
  for (int r = 0; r < 2; ++r) {
    for (const auto& refs : l1_cache_plan(plan.corner_a, seg_a, r))
      cc.receiver[static_cast<std::size_t>(r)].push_back(
          materialize(refs, descs.w, rho));
    for (const auto& refs : l1_cache_plan(plan.corner_b, seg_b, r))
      cc.receiver[static_cast<std::size_t>(r)].push_back(
          materialize(refs, descs.w, rho));
  }
  return cc;
}

MulticastCodeword l1_deliver(const Demand& demand, const CacheContents& caches,
                             const DescriptionSet& descs) {
  demand.validate();
  const Bits rho = descs.tuple.rho_priv;
  const SharePlan plan = l1_share_plan(caches.used_bits(0), rho);
  const Segment seg_a{0, plan.seg_a};
  const Segment seg_b{plan.seg_a, plan.seg_b};
  MulticastCodeword cw;
  for (const auto& refs : l1_deliver_plan(plan.corner_a, seg_a, demand))
    cw.units.push_back(materialize(refs, descs.w, rho));
  for (const auto& refs : l1_deliver_plan(plan.corner_b, seg_b, demand))
    cw.units.push_back(materialize(refs, descs.w, rho));
  return cw;
}

BitString l1_decode(int receiver, const CacheContents& caches,
                    const MulticastCodeword& cw, const Demand& demand,
                    Bits rho_priv, DecodeSteps* steps) {
  demand.validate();
  const SharePlan plan = l1_share_plan(caches.used_bits(receiver), rho_priv);
  const Segment seg_a{0, plan.seg_a};
  const Segment seg_b{plan.seg_a, plan.seg_b};

  const UnitPlan cache_a = l1_cache_plan(plan.corner_a, seg_a, receiver);
  const UnitPlan cache_b = l1_cache_plan(plan.corner_b, seg_b, receiver);
  const auto& mine = caches.receiver.at(static_cast<std::size_t>(receiver));
  if (mine.size() != cache_a.size() + cache_b.size())
    throw DecodeError("cache does not match the placement layout");
  const std::vector<CacheUnit> ca = segment_units(mine, 0, cache_a.size());
  const std::vector<CacheUnit> cb =
      segment_units(mine, cache_a.size(), cache_b.size());
  verify_units(ca, cache_a, "cache");
  verify_units(cb, cache_b, "cache");

  const UnitPlan del_a = l1_deliver_plan(plan.corner_a, seg_a, demand);
  const UnitPlan del_b = l1_deliver_plan(plan.corner_b, seg_b, demand);
  if (cw.units.size() != del_a.size() + del_b.size()) {
    std::ostringstream os;
    os << "codeword has " << cw.units.size() << " units, expected "
       << del_a.size() + del_b.size();
    throw DecodeError(os.str());
  }
  const std::vector<CacheUnit> ya = segment_units(cw.units, 0, del_a.size());
  const std::vector<CacheUnit> yb =
      segment_units(cw.units, del_a.size(), del_b.size());
  verify_units(ya, del_a, "codeword");
  verify_units(yb, del_b, "codeword");

  BitString out = l1_decode_segment(plan.corner_a, seg_a, receiver, demand, ca,
                                    ya, rho_priv, steps);
  append(out, l1_decode_segment(plan.corner_b, seg_b, receiver, demand, cb, yb,
                                rho_priv, steps));
  if (static_cast<Bits>(out.size()) != rho_priv)
    throw DecodeError("recovered private description has the wrong length");
  return out;
}

}  // namespace gwcacm
