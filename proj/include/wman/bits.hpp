#pragma once

#include <cstdint>
#include <vector>

namespace wman {

// MSB-first packing shared by the whole chain.
inline std::vector<std::uint8_t> bytes_to_bits(const std::vector<std::uint8_t>& bytes) {
  std::vector<std::uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back(static_cast<std::uint8_t>((b >> i) & 1u));
  }
  return bits;
}

inline std::vector<std::uint8_t> bits_to_bytes(const std::vector<std::uint8_t>& bits) {
  std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bytes.size() * 8; ++i) {
    bytes[i / 8] = static_cast<std::uint8_t>((bytes[i / 8] << 1) | (bits[i] & 1u));
  }
  return bytes;
}

}  // namespace wman
