#include "wman/ofdm.hpp"

#include "wman/fft.hpp"

#include <algorithm>
#include <stdexcept>

namespace wman {

namespace {

std::vector<int> make_pilot_bins() { return {-88, -63, -38, -13, 13, 38, 63, 88}; }

std::vector<int> make_data_bins() {
  const auto pilots = make_pilot_bins();
  std::vector<int> bins;
  bins.reserve(kDataCarriers);
  for (int b = -100; b <= 100; ++b) {
    if (b == 0) continue;
    if (std::find(pilots.begin(), pilots.end(), b) != pilots.end()) continue;
    bins.push_back(b);
  }
  return bins;
}

inline std::size_t bin_index(int b) { return static_cast<std::size_t>((b + kNfft) % kNfft); }

}  // namespace

const std::vector<int>& pilot_bins() {
  static const std::vector<int> v = make_pilot_bins();
  return v;
}

const std::vector<int>& data_bins() {
  static const std::vector<int> v = make_data_bins();
  return v;
}

FrequencyFrame assemble_frame(const std::vector<cplx>& data_symbols,
                              const std::vector<cplx>& pilot_values) {
  if (data_symbols.size() != static_cast<std::size_t>(kDataCarriers)) {
    throw std::invalid_argument("assemble_frame: need exactly 192 data symbols");
  }
  if (pilot_values.size() != static_cast<std::size_t>(kPilotCarriers)) {
    throw std::invalid_argument("assemble_frame: need exactly 8 pilot values");
  }
  FrequencyFrame f;
  const auto& db = data_bins();
  for (std::size_t i = 0; i < db.size(); ++i) f.bins[bin_index(db[i])] = data_symbols[i];
  const auto& pb = pilot_bins();
  for (std::size_t i = 0; i < pb.size(); ++i) f.bins[bin_index(pb[i])] = pilot_values[i];
  return f;
}

std::vector<cplx> extract_data(const FrequencyFrame& frame) {
  std::vector<cplx> out(static_cast<std::size_t>(kDataCarriers));
  const auto& db = data_bins();
  for (std::size_t i = 0; i < db.size(); ++i) out[i] = frame.bins[bin_index(db[i])];
  return out;
}

TimeSymbol ofdm_modulate(const FrequencyFrame& frame, int cp_len) {
  if (frame.bins.size() != static_cast<std::size_t>(kNfft)) {
    throw std::invalid_argument("ofdm_modulate: frame must have 256 bins");
  }
  if (cp_len < 0 || cp_len >= kNfft) {
    throw std::invalid_argument("ofdm_modulate: cyclic prefix must be shorter than the body");
  }
  std::vector<cplx> body = frame.bins;
  fft_unitary(body, true);
  TimeSymbol sym;
  sym.cp_len = cp_len;
  sym.samples.resize(static_cast<std::size_t>(cp_len) + kNfft);
  std::copy(body.end() - cp_len, body.end(), sym.samples.begin());
  std::copy(body.begin(), body.end(), sym.samples.begin() + cp_len);
  return sym;
}

FrequencyFrame ofdm_demodulate(const TimeSymbol& symbol) {
  if (symbol.samples.size() != static_cast<std::size_t>(symbol.cp_len) + kNfft) {
    throw std::invalid_argument("ofdm_demodulate: sample count does not match the cp length");
  }
  FrequencyFrame f;
  f.bins.assign(symbol.samples.begin() + symbol.cp_len, symbol.samples.end());
  fft_unitary(f.bins, false);
  return f;
}

}  // namespace wman
