#include "wman/scrambler.hpp"

#include "wman/bits.hpp"

#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

using namespace wman;

namespace {

// Straight transliteration of the shift-register diagram, kept deliberately
// different in style from the production code: stages[0] is stage 1.
struct ReferenceLfsr {
  int stages[15];
  ReferenceLfsr() {
    for (int& s : stages) s = 1;
  }
  int step() {
    const int out = stages[13] ^ stages[14];
    for (int i = 14; i > 0; --i) stages[i] = stages[i - 1];
    stages[0] = out;
    return out;
  }
};

}  // namespace

TEST_CASE("whitening sequence head bytes") {
  Scrambler s;
  CHECK(s.next_byte() == 0x00);
  CHECK(s.next_byte() == 0x02);
  CHECK(s.next_byte() == 0x00);
  CHECK(s.next_byte() == 0x0C);
}

TEST_CASE("matches an independent register transliteration") {
  Scrambler s;
  ReferenceLfsr ref;
  for (int i = 0; i < 512; ++i) {
    CAPTURE(i);
    REQUIRE(static_cast<int>(s.next_bit()) == ref.step());
  }
}

TEST_CASE("maximal period") {
  Scrambler s;
  int period = 0;
  do {
    s.next_bit();
    ++period;
  } while (s.state() != Scrambler::kDefaultSeed && period <= 40000);
  CHECK(period == 32767);
}

TEST_CASE("scrambling is an involution and length preserving") {
  std::mt19937_64 rng(99);
  std::vector<std::uint8_t> bits(1000);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
  const auto once = scramble(bits);
  CHECK(once.size() == bits.size());
  CHECK(once != bits);
  CHECK(descramble(once) == bits);
}

TEST_CASE("byte interface equals MSB-first bit interface") {
  std::mt19937_64 rng(7);
  std::vector<std::uint8_t> bytes(64);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(rng() & 0xFF);
  const auto via_bytes = scramble_bytes(bytes);
  const auto via_bits = bits_to_bytes(scramble(bytes_to_bits(bytes)));
  CHECK(via_bytes == via_bits);
}

TEST_CASE("all-zero seed is rejected") {
  Scrambler s;
  CHECK_THROWS(s.reset(0));
  CHECK_THROWS(Scrambler{0});
}
