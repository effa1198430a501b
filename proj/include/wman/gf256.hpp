#pragma once

#include <array>
#include <cstdint>

namespace wman {

// GF(2^8) arithmetic with field polynomial x^8 + x^4 + x^3 + x^2 + 1 and
// primitive element 0x02. Tables are built once and shared.
class GF256 {
 public:
  static const GF256& instance();

  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
    if (a == 0 || b == 0) return 0;
    return alog_[static_cast<std::size_t>(log_[a] + log_[b])];
  }
  std::uint8_t inv(std::uint8_t a) const;         // throws on zero
  std::uint8_t div(std::uint8_t a, std::uint8_t b) const;
  std::uint8_t pow_alpha(int e) const;            // 0x02 raised to any integer power
  int log_alpha(std::uint8_t a) const;            // throws on zero

 private:
  GF256();
  std::array<int, 256> log_{};
  std::array<std::uint8_t, 510> alog_{};
};

}  // namespace wman
