#include "wman/scrambler.hpp"

#include <stdexcept>

namespace wman {

Scrambler::Scrambler(std::uint16_t seed) { reset(seed); }

void Scrambler::reset(std::uint16_t seed) {
  seed &= 0x7FFF;
  if (seed == 0) throw std::invalid_argument("scrambler seed must be non-zero");
  reg_ = seed;
}

std::uint8_t Scrambler::next_bit() {
  const std::uint8_t out = static_cast<std::uint8_t>(((reg_ >> 13) ^ (reg_ >> 14)) & 1u);
  reg_ = static_cast<std::uint16_t>(((reg_ << 1) & 0x7FFF) | out);
  return out;
}

std::uint8_t Scrambler::next_byte() {
  std::uint8_t b = 0;
  for (int i = 0; i < 8; ++i) b = static_cast<std::uint8_t>((b << 1) | next_bit());
  return b;
}

std::vector<std::uint8_t> scramble(const std::vector<std::uint8_t>& bits, std::uint16_t seed) {
  Scrambler s(seed);
  std::vector<std::uint8_t> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = static_cast<std::uint8_t>((bits[i] ^ s.next_bit()) & 1u);
  return out;
}

std::vector<std::uint8_t> descramble(const std::vector<std::uint8_t>& bits, std::uint16_t seed) {
  return scramble(bits, seed);
}

std::vector<std::uint8_t> scramble_bytes(const std::vector<std::uint8_t>& bytes, std::uint16_t seed) {
  Scrambler s(seed);
  std::vector<std::uint8_t> out(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) out[i] = static_cast<std::uint8_t>(bytes[i] ^ s.next_byte());
  return out;
}

}  // namespace wman
