#include "wman/conv.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

using namespace wman;

namespace {

// Independent bit-by-bit encoder: shift register of the last six inputs,
// generator taps written out longhand.
CcOutput reference_encode(const std::vector<std::uint8_t>& bits) {
  int m1 = 0, m2 = 0, m3 = 0, m4 = 0, m5 = 0, m6 = 0;
  CcOutput out;
  for (std::uint8_t u : bits) {
    const int x = u ^ m1 ^ m2 ^ m3 ^ m6;  // 171 octal: 1 111 001
    const int y = u ^ m2 ^ m3 ^ m5 ^ m6;  // 133 octal: 1 011 011
    out.x.push_back(static_cast<std::uint8_t>(x));
    out.y.push_back(static_cast<std::uint8_t>(y));
    m6 = m5;
    m5 = m4;
    m4 = m3;
    m3 = m2;
    m2 = m1;
    m1 = u;
  }
  return out;
}

std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
  return bits;
}

int punctured_min_weight(const PunctureRate& pr) {
  int best = 1 << 30;
  // All nonzero 12-bit messages, leading zeros included: they shift the
  // message against the puncturing phase, which changes the coded weight.
  for (unsigned m = 1; m < 4096; ++m) {
    // 30 steps = 12 info bits plus flush zeros, a multiple of every pattern period
    std::vector<std::uint8_t> msg(30, 0);
    for (int i = 0; i < 12; ++i) msg[static_cast<std::size_t>(i)] = (m >> (11 - i)) & 1u;
    const CcOutput cc = cc_encode(msg);
    int w = 0;
    for (std::uint8_t b : puncture(cc.x, cc.y, pr)) w += b;
    best = std::min(best, w);
  }
  return best;
}

}  // namespace

TEST_CASE("impulse responses of both generators") {
  const CcOutput cc = cc_encode({1, 0, 0, 0, 0, 0, 0});
  CHECK(cc.x == std::vector<std::uint8_t>{1, 1, 1, 1, 0, 0, 1});
  CHECK(cc.y == std::vector<std::uint8_t>{1, 0, 1, 1, 0, 1, 1});
}

TEST_CASE("encoder matches a longhand register model") {
  const auto bits = random_bits(500, 21);
  const CcOutput a = cc_encode(bits);
  const CcOutput b = reference_encode(bits);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
}

TEST_CASE("puncture patterns and ordering") {
  SUBCASE("rate 2/3 keeps x0 y0 y1") {
    const PunctureRate& pr = puncture_rate({2, 3});
    CHECK(puncture({1, 0}, {0, 1}, pr) == std::vector<std::uint8_t>{1, 0, 1});
  }
  SUBCASE("rate 3/4 keeps x0 y0 y1 x2") {
    const PunctureRate& pr = puncture_rate({3, 4});
    const auto out = puncture({1, 0, 1}, {1, 1, 0}, pr);
    CHECK(out == std::vector<std::uint8_t>{1, 1, 1, 1});
  }
  SUBCASE("rate 5/6 keeps x0 y0 y1 x2 y3 x4") {
    const PunctureRate& pr = puncture_rate({5, 6});
    const auto out = puncture({1, 0, 0, 0, 1}, {0, 1, 0, 1, 0}, pr);
    CHECK(out == std::vector<std::uint8_t>{1, 0, 1, 0, 1, 1});
  }
  SUBCASE("rate 1/2 interleaves all") {
    const PunctureRate& pr = puncture_rate({1, 2});
    CHECK(puncture({1, 0}, {0, 1}, pr) == std::vector<std::uint8_t>{1, 0, 0, 1});
  }
  CHECK_THROWS(puncture_rate({7, 8}));
}

TEST_CASE("depuncture restores kept slots and zeroes dropped ones") {
  const PunctureRate& pr = puncture_rate({3, 4});
  std::vector<std::uint8_t> x = {1, 0, 1, 1, 0, 0}, y = {0, 0, 1, 1, 1, 0};
  const auto hard = puncture(x, y, pr);
  std::vector<double> soft(hard.size());
  for (std::size_t i = 0; i < hard.size(); ++i) soft[i] = hard[i] ? 1.0 : -1.0;
  const auto full = depuncture(soft, pr);
  REQUIRE(full.size() == 12);  // interleaved x,y over 6 steps
  int kept = 0;
  for (std::size_t step = 0; step < 6; ++step) {
    const double sx = full[2 * step];
    const double sy = full[2 * step + 1];
    if (pr.x_mask[step % pr.x_mask.size()]) {
      ++kept;
      CHECK(sx == (x[step] ? 1.0 : -1.0));
    } else {
      CHECK(sx == 0.0);
    }
    if (pr.y_mask[step % pr.y_mask.size()]) {
      ++kept;
      CHECK(sy == (y[step] ? 1.0 : -1.0));
    } else {
      CHECK(sy == 0.0);
    }
  }
  CHECK(kept == static_cast<int>(hard.size()));
}

TEST_CASE("free distances of the punctured codes") {
  CHECK(punctured_min_weight(puncture_rate({1, 2})) == 10);
  CHECK(punctured_min_weight(puncture_rate({2, 3})) == 6);
  CHECK(punctured_min_weight(puncture_rate({3, 4})) == 5);
  CHECK(punctured_min_weight(puncture_rate({5, 6})) == 4);
}

TEST_CASE("decoder inverts the encoder on clean soft values") {
  for (const Rational rate : {Rational{1, 2}, Rational{2, 3}, Rational{3, 4}, Rational{5, 6}}) {
    CAPTURE(rate.numerator());
    const PunctureRate& pr = puncture_rate(rate);
    auto msg = random_bits(200, 1000 + static_cast<std::uint64_t>(rate.denominator()));
    msg.resize(210, 0);  // flush to the zero state; multiple of every pattern period
    const CcOutput cc = cc_encode(msg);
    const auto hard = puncture(cc.x, cc.y, pr);
    std::vector<double> soft(hard.size());
    for (std::size_t i = 0; i < hard.size(); ++i) soft[i] = hard[i] ? 1.0 : -1.0;
    const auto decoded = viterbi_decode(depuncture(soft, pr));
    REQUIRE(decoded == msg);
  }
}

TEST_CASE("decoder rides through sparse corruption at rate 1/2") {
  auto msg = random_bits(120, 5);
  msg.resize(126, 0);
  const CcOutput cc = cc_encode(msg);
  const PunctureRate& pr = puncture_rate({1, 2});
  auto hard = puncture(cc.x, cc.y, pr);
  hard[10] ^= 1;
  hard[57] ^= 1;
  hard[150] ^= 1;  // three flips spaced beyond the decision depth
  std::vector<double> soft(hard.size());
  for (std::size_t i = 0; i < hard.size(); ++i) soft[i] = hard[i] ? 1.0 : -1.0;
  CHECK(viterbi_decode(depuncture(soft, pr)) == msg);
}

TEST_CASE("huge confidence values do not overflow the path metrics") {
  auto msg = random_bits(64, 9);
  msg.resize(70, 0);
  const CcOutput cc = cc_encode(msg);
  const PunctureRate& pr = puncture_rate({1, 2});
  const auto hard = puncture(cc.x, cc.y, pr);
  std::vector<double> soft(hard.size());
  for (std::size_t i = 0; i < hard.size(); ++i) soft[i] = hard[i] ? 1e30 : -1e30;
  CHECK(viterbi_decode(depuncture(soft, pr)) == msg);
}
