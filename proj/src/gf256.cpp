#include "wman/gf256.hpp"

#include <stdexcept>

namespace wman {

namespace {
constexpr unsigned kFieldPoly = 0x11D;  // x^8 + x^4 + x^3 + x^2 + 1
}

GF256::GF256() {
  unsigned v = 1;
  for (int e = 0; e < 255; ++e) {
    alog_[static_cast<std::size_t>(e)] = static_cast<std::uint8_t>(v);
    log_[v] = e;
    v <<= 1;
    if (v & 0x100u) v ^= kFieldPoly;
  }
  for (int e = 255; e < 510; ++e) alog_[static_cast<std::size_t>(e)] = alog_[static_cast<std::size_t>(e - 255)];
  log_[0] = -1;
}

const GF256& GF256::instance() {
  static const GF256 gf;
  return gf;
}

std::uint8_t GF256::inv(std::uint8_t a) const {
  if (a == 0) throw std::domain_error("GF256: inverse of zero");
  return alog_[static_cast<std::size_t>(255 - log_[a])];
}

std::uint8_t GF256::div(std::uint8_t a, std::uint8_t b) const {
  if (b == 0) throw std::domain_error("GF256: division by zero");
  if (a == 0) return 0;
  return alog_[static_cast<std::size_t>(log_[a] + 255 - log_[b])];
}

std::uint8_t GF256::pow_alpha(int e) const {
  int r = e % 255;
  if (r < 0) r += 255;
  return alog_[static_cast<std::size_t>(r)];
}

int GF256::log_alpha(std::uint8_t a) const {
  if (a == 0) throw std::domain_error("GF256: log of zero");
  return log_[a];
}

}  // namespace wman
