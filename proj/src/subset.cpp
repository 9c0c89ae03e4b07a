#include "gwcacm/subset.hpp"

#include <bit>
#include <stdexcept>

namespace gwcacm {

Subset Subset::from_mask(unsigned mask) {
  if (mask == 0 || mask > 7)
    throw std::invalid_argument("subset mask must be in [1,7]");
  return Subset(mask);
}

Subset Subset::of(std::initializer_list<int> files) {
  unsigned mask = 0;
  for (int f : files) {
    if (f < 1 || f > 3) throw std::invalid_argument("file index must be 1..3");
    mask |= 1u << (f - 1);
  }
  return from_mask(mask);
}

Subset Subset::pair(int i, int j) {
  if (i == j) throw std::invalid_argument("pair subset needs two distinct files");
  return of({i, j});
}

Subset Subset::single(int i) { return of({i}); }

int Subset::size() const { return std::popcount(static_cast<unsigned>(mask_)); }

int Subset::rank() const {
  // 123, 12, 13, 23, 1, 2, 3
  static constexpr int kRank[8] = {-1, 4, 5, 1, 6, 2, 3, 0};
  return kRank[mask_];
}

std::vector<int> Subset::members() const {
  std::vector<int> out;
  for (int f = 1; f <= 3; ++f)
    if (contains(f)) out.push_back(f);
  return out;
}

std::string Subset::label() const {
  std::string out;
  for (int f : members()) out.push_back(static_cast<char>('0' + f));
  return out;
}

const std::array<Subset, 7>& canonical_subsets() {
  static const std::array<Subset, 7> k = {
      Subset::all(),      Subset::pair(1, 2), Subset::pair(1, 3),
      Subset::pair(2, 3), Subset::single(1),  Subset::single(2),
      Subset::single(3)};
  return k;
}

const std::array<Subset, 3>& pair_subsets() {
  static const std::array<Subset, 3> k = {Subset::pair(1, 2), Subset::pair(1, 3),
                                          Subset::pair(2, 3)};
  return k;
}

const std::array<Subset, 3>& single_subsets() {
  static const std::array<Subset, 3> k = {Subset::single(1), Subset::single(2),
                                          Subset::single(3)};
  return k;
}

void Demand::validate() const {
  if (d1 < 1 || d1 > 3 || d2 < 1 || d2 > 3)
    throw std::invalid_argument("demand indices must be in 1..3");
}

std::array<Demand, 9> all_demands() {
  std::array<Demand, 9> out{};
  int i = 0;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) out[i++] = Demand{a, b};
  return out;
}

}  // namespace gwcacm
