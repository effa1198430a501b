#include "wman/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wman {

namespace {

ConstellationMap make_map(Modulation m) {
  ConstellationMap map;
  map.modulation = m;
  switch (m) {
    case Modulation::bpsk:
      map.bits_per_symbol = 1;
      map.scale = 1.0;
      map.i_levels = {-1.0, 1.0};
      map.i_patterns = {0u, 1u};
      map.i_bits = 1;
      map.q_bits = 0;
      break;
    case Modulation::qpsk:
      map.bits_per_symbol = 2;
      map.scale = 1.0 / std::sqrt(2.0);
      map.i_levels = {-1.0, 1.0};
      map.i_patterns = {0u, 1u};
      map.q_levels = map.i_levels;
      map.q_patterns = map.i_patterns;
      map.i_bits = map.q_bits = 1;
      break;
    case Modulation::qam16:
      map.bits_per_symbol = 4;
      map.scale = 1.0 / std::sqrt(10.0);
      map.i_levels = {-3.0, -1.0, 1.0, 3.0};
      map.i_patterns = {0b00u, 0b01u, 0b11u, 0b10u};
      map.q_levels = map.i_levels;
      map.q_patterns = map.i_patterns;
      map.i_bits = map.q_bits = 2;
      break;
    case Modulation::qam64:
      map.bits_per_symbol = 6;
      map.scale = 1.0 / std::sqrt(42.0);
      map.i_levels = {-7.0, -5.0, -3.0, -1.0, 1.0, 3.0, 5.0, 7.0};
      map.i_patterns = {0b000u, 0b001u, 0b011u, 0b010u, 0b110u, 0b111u, 0b101u, 0b100u};
      map.q_levels = map.i_levels;
      map.q_patterns = map.i_patterns;
      map.i_bits = map.q_bits = 3;
      break;
  }
  for (double& v : map.i_levels) v *= map.scale;
  for (double& v : map.q_levels) v *= map.scale;

  map.points.assign(1u << map.bits_per_symbol, cplx{});
  for (std::size_t a = 0; a < map.i_levels.size(); ++a) {
    if (map.q_bits == 0) {
      map.points[map.i_patterns[a]] = cplx(map.i_levels[a], 0.0);
      continue;
    }
    for (std::size_t b = 0; b < map.q_levels.size(); ++b) {
      const unsigned idx = (map.i_patterns[a] << map.q_bits) | map.q_patterns[b];
      map.points[idx] = cplx(map.i_levels[a], map.q_levels[b]);
    }
  }
  return map;
}

}  // namespace

const ConstellationMap& constellation(Modulation m) {
  static const ConstellationMap maps[4] = {
      make_map(Modulation::bpsk),
      make_map(Modulation::qpsk),
      make_map(Modulation::qam16),
      make_map(Modulation::qam64),
  };
  return maps[static_cast<int>(m)];
}

std::vector<cplx> map_bits(const std::vector<std::uint8_t>& bits, const ConstellationMap& map) {
  if (bits.size() % static_cast<std::size_t>(map.bits_per_symbol) != 0) {
    throw std::invalid_argument("map_bits: bit count not a multiple of bits per symbol");
  }
  std::vector<cplx> out(bits.size() / static_cast<std::size_t>(map.bits_per_symbol));
  std::size_t p = 0;
  for (auto& sym : out) {
    unsigned idx = 0;
    for (int i = 0; i < map.bits_per_symbol; ++i) idx = (idx << 1) | (bits[p++] & 1u);
    sym = map.points[idx];
  }
  return out;
}

namespace {

void axis_llrs(double v, const std::vector<double>& levels, const std::vector<unsigned>& patterns,
               int nbits, double inv_noise_var, double* out) {
  for (int bit = 0; bit < nbits; ++bit) {
    const unsigned msk = 1u << (nbits - 1 - bit);
    double d0 = std::numeric_limits<double>::infinity();
    double d1 = d0;
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const double d = (v - levels[l]) * (v - levels[l]);
      if (patterns[l] & msk) {
        d1 = std::min(d1, d);
      } else {
        d0 = std::min(d0, d);
      }
    }
    out[bit] = (d0 - d1) * inv_noise_var;
  }
}

}  // namespace

void demap_symbol_soft(cplx symbol, const ConstellationMap& map, double noise_var, double* out) {
  // The bit subsets are axis-aligned, so the nearest-point search separates:
  // the perpendicular axis contributes the same minimum to both subsets and
  // cancels in the difference.
  const double inv = 1.0 / std::max(noise_var, 1e-300);
  axis_llrs(symbol.real(), map.i_levels, map.i_patterns, map.i_bits, inv, out);
  if (map.q_bits > 0) {
    axis_llrs(symbol.imag(), map.q_levels, map.q_patterns, map.q_bits, inv, out + map.i_bits);
  }
}

std::vector<double> demap_soft(const std::vector<cplx>& symbols, const ConstellationMap& map,
                               double noise_var) {
  if (!(noise_var > 0)) throw std::invalid_argument("demap_soft: noise variance must be positive");
  std::vector<double> out(symbols.size() * static_cast<std::size_t>(map.bits_per_symbol));
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    demap_symbol_soft(symbols[i], map, noise_var, &out[i * static_cast<std::size_t>(map.bits_per_symbol)]);
  }
  return out;
}

}  // namespace wman
