#include "gwcacm/bits.hpp"

#include <stdexcept>

namespace gwcacm {

BitString random_bits(std::mt19937_64& gen, Bits n) {
  if (n < 0) throw std::invalid_argument("bit count must be nonnegative");
  BitString out;
  out.reserve(static_cast<size_t>(n));
  std::uint64_t word = 0;
  int left = 0;
  for (Bits i = 0; i < n; ++i) {
    if (left == 0) {
      word = gen();
      left = 64;
    }
    out.push_back(static_cast<std::uint8_t>(word & 1u));
    word >>= 1;
    --left;
  }
  return out;
}

BitString xor_bits(const BitString& a, const BitString& b) {
  if (a.size() != b.size())
    throw std::runtime_error("xor of bit strings with different lengths");
  BitString out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

void xor_in_place(BitString& acc, const BitString& other) {
  if (acc.size() != other.size())
    throw std::runtime_error("xor of bit strings with different lengths");
  for (size_t i = 0; i < acc.size(); ++i) acc[i] ^= other[i];
}

BitString slice(const BitString& s, Bits offset, Bits length) {
  if (offset < 0 || length < 0 ||
      static_cast<size_t>(offset + length) > s.size())
    throw std::out_of_range("bit slice out of range");
  return BitString(s.begin() + offset, s.begin() + offset + length);
}

void append(BitString& dst, const BitString& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

std::string to_01(const BitString& s) {
  std::string out;
  out.reserve(s.size());
  for (auto b : s) out.push_back(b ? '1' : '0');
  return out;
}

}  // namespace gwcacm
