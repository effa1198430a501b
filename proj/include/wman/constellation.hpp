#pragma once

#include "wman/complex.hpp"
#include "wman/params.hpp"

#include <cstdint>
#include <vector>

namespace wman {

// Gray-labelled constellation. Points are indexed by the bit pattern, MSB
// first, with the I-axis bits ahead of the Q-axis bits; all four maps are
// scaled to unit average symbol energy.
struct ConstellationMap {
  Modulation modulation = Modulation::bpsk;
  int bits_per_symbol = 0;
  double scale = 1.0;
  std::vector<cplx> points;

  // Per-axis view used by the soft demapper: amplitude levels (already
  // scaled) and the bit pattern each level carries.
  std::vector<double> i_levels, q_levels;
  std::vector<unsigned> i_patterns, q_patterns;
  int i_bits = 0, q_bits = 0;
};

const ConstellationMap& constellation(Modulation m);

std::vector<cplx> map_bits(const std::vector<std::uint8_t>& bits, const ConstellationMap& map);

// Max-log LLRs, positive toward bit 1, scaled by 1/noise_var. The per-symbol
// form writes bits_per_symbol values to out.
std::vector<double> demap_soft(const std::vector<cplx>& symbols, const ConstellationMap& map,
                               double noise_var);
void demap_symbol_soft(cplx symbol, const ConstellationMap& map, double noise_var, double* out);

}  // namespace wman
