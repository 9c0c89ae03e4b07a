#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gwcacm {

// All sizes, budgets and rates are plain bit counts (file size F = 1 bit).
using Bits = std::int64_t;

// One element per bit, values 0/1. Sizes here are a few thousand bits, so the
// unpacked representation is simplest and makes slicing at arbitrary offsets
// trivial.
using BitString = std::vector<std::uint8_t>;

BitString random_bits(std::mt19937_64& gen, Bits n);

BitString xor_bits(const BitString& a, const BitString& b);
void xor_in_place(BitString& acc, const BitString& other);

BitString slice(const BitString& s, Bits offset, Bits length);
void append(BitString& dst, const BitString& src);

std::string to_01(const BitString& s);

}  // namespace gwcacm
