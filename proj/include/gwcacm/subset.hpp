#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gwcacm {

// Nonempty subset of the file indices {1,2,3}, identifying one description
// W_s. Serialization always follows the canonical order
//   123, 12, 13, 23, 1, 2, 3
// and operator< sorts by that rank so ordered containers iterate canonically.
class Subset {
 public:
  Subset() : mask_(7) {}  // defaults to the full set
  static Subset from_mask(unsigned mask);
  static Subset of(std::initializer_list<int> files);
  static Subset all() { return Subset(7); }
  static Subset pair(int i, int j);
  static Subset single(int i);

  bool contains(int file) const { return (mask_ >> (file - 1)) & 1u; }
  int size() const;
  unsigned mask() const { return mask_; }
  int rank() const;  // canonical position, 0..6
  std::vector<int> members() const;

  std::string label() const;  // "123", "12", "1", ...
  std::string wname() const { return "W" + label(); }

  friend bool operator==(Subset a, Subset b) { return a.mask_ == b.mask_; }
  friend bool operator!=(Subset a, Subset b) { return a.mask_ != b.mask_; }
  friend bool operator<(Subset a, Subset b) { return a.rank() < b.rank(); }

 private:
  explicit Subset(unsigned mask) : mask_(static_cast<std::uint8_t>(mask)) {}
  std::uint8_t mask_;
};

const std::array<Subset, 7>& canonical_subsets();
const std::array<Subset, 3>& pair_subsets();    // 12, 13, 23
const std::array<Subset, 3>& single_subsets();  // 1, 2, 3

// Receiver demand: receiver k requests file d_k.
struct Demand {
  int d1 = 1;
  int d2 = 1;
  void validate() const;
  int at(int receiver) const { return receiver == 0 ? d1 : d2; }
  bool equal() const { return d1 == d2; }
};

// All nine demand vectors, (1,1), (1,2), ..., (3,3).
std::array<Demand, 9> all_demands();

}  // namespace gwcacm
