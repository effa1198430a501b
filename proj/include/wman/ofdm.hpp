#pragma once

#include "wman/complex.hpp"

#include <vector>

namespace wman {

inline constexpr int kNfft = 256;
inline constexpr int kDataCarriers = 192;
inline constexpr int kPilotCarriers = 8;

// Signed subcarrier offsets. Data carriers fill -100..+100 except DC and the
// pilots at +/-13, +/-38, +/-63, +/-88; everything else is a null guard.
const std::vector<int>& pilot_bins();
const std::vector<int>& data_bins();

struct FrequencyFrame {
  std::vector<cplx> bins;  // bins[(b + kNfft) % kNfft] holds signed offset b
  FrequencyFrame() : bins(kNfft) {}
};

struct TimeSymbol {
  std::vector<cplx> samples;  // cp_len prefix samples followed by the body
  int cp_len = 0;
};

FrequencyFrame assemble_frame(const std::vector<cplx>& data_symbols,
                              const std::vector<cplx>& pilot_values);
std::vector<cplx> extract_data(const FrequencyFrame& frame);

// Unitary inverse transform plus cyclic prefix, and its exact inverse.
TimeSymbol ofdm_modulate(const FrequencyFrame& frame, int cp_len);
FrequencyFrame ofdm_demodulate(const TimeSymbol& symbol);

}  // namespace wman
