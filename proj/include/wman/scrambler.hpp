#pragma once

#include <cstdint>
#include <vector>

namespace wman {

// 15-stage maximal-length LFSR with feedback 1 + x^14 + x^15. Stage k of the
// register lives at bit k-1; each step emits stage14 XOR stage15 and feeds the
// same bit back into stage 1.
class Scrambler {
 public:
  static constexpr std::uint16_t kDefaultSeed = 0x7FFF;

  explicit Scrambler(std::uint16_t seed = kDefaultSeed);
  void reset(std::uint16_t seed);

  std::uint8_t next_bit();
  std::uint8_t next_byte();  // eight successive bits, MSB first

  std::uint16_t state() const { return reg_; }

 private:
  std::uint16_t reg_ = kDefaultSeed;
};

// XOR the input bit stream with the PRBS. Self-inverse for a fixed seed.
std::vector<std::uint8_t> scramble(const std::vector<std::uint8_t>& bits,
                                   std::uint16_t seed = Scrambler::kDefaultSeed);
std::vector<std::uint8_t> descramble(const std::vector<std::uint8_t>& bits,
                                     std::uint16_t seed = Scrambler::kDefaultSeed);

// Byte-oriented variant; each byte is whitened MSB first.
std::vector<std::uint8_t> scramble_bytes(const std::vector<std::uint8_t>& bytes,
                                         std::uint16_t seed = Scrambler::kDefaultSeed);

}  // namespace wman
