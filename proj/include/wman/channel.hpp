#pragma once

#include "wman/complex.hpp"
#include "wman/ofdm.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wman {

struct SuiTapSpec {
  double delay_s = 0;
  double power = 1.0;  // linear total tap power
  double k_factor = 0;
  double doppler_hz = 0;
};

struct SuiChannelSpec {
  std::string name;
  char terrain = '?';
  std::vector<SuiTapSpec> taps;
};

void validate_channel_spec(const SuiChannelSpec& spec);  // throws on violations

// Split total tap power into the fixed-path part and the scattered variance;
// the two always sum back to p exactly.
std::pair<double, double> ricean_split(double p, double k);  // (mean_power, scatter_var)

// Normalized Doppler spectrum 1 - 1.72 f0^2 + 0.785 f0^4, zero outside
// |f0| <= 1, where f0 = f / f_m.
double doppler_psd(double f0);

// Zero-phase FIR whose magnitude approximates sqrt of the Doppler spectrum at
// sample rate 2 f_m; coefficient power is normalized to 1 so shaping keeps
// the input power.
std::vector<double> shaping_filter(int num_taps, double f_m);

struct TapProcess {
  std::vector<cplx> coefficients;  // complex gains at sample rate 2 f_m
  double sample_rate_hz = 0;
  SuiTapSpec spec;
};

// Filtered-noise synthesis of one fading tap: white complex Gaussian samples
// are spectrally shaped by overlap-add, scaled to the scattered variance, and
// the fixed component (phase 0) is added on top.
TapProcess generate_tap(const SuiTapSpec& spec, int num_coeffs, std::uint64_t seed,
                        int filter_taps = 257);

// Block-fading bridge: one complex gain per OFDM symbol, linearly
// interpolated between the 2 f_m grid points.
std::vector<cplx> interpolate_to_symbols(const TapProcess& tap, double symbol_time_s,
                                         int n_symbols);

struct FadedSignal {
  std::vector<cplx> samples;
  bool delay_exceeds_cp = false;
};

// Per-symbol time-invariant FIR: every tap delays the transmit stream by a
// whole number of samples and weights it with that symbol's gain.
FadedSignal apply_channel(const std::vector<cplx>& tx,
                          const std::vector<std::vector<cplx>>& tap_gains,
                          const std::vector<int>& tap_delays_samples, int samples_per_symbol,
                          int cp_len);

// Complex AWGN with total variance signal_power_ref / 10^(snr_db/10), split
// evenly between the components.
std::vector<cplx> add_awgn(const std::vector<cplx>& samples, double snr_db,
                           double signal_power_ref, std::uint64_t seed);

// Frequency response of the tapped delay line for one symbol's gains,
// evaluated on all n_fft bins.
std::vector<cplx> channel_freq_response(const std::vector<cplx>& tap_gains,
                                        const std::vector<int>& tap_delays_samples, int n_fft);

struct EqualizedFrame {
  FrequencyFrame frame;
  int zeroed_bins = 0;  // bins with |H| below threshold, forced to zero
};

// Zero-forcing with the true channel response.
EqualizedFrame ideal_equalize(const FrequencyFrame& in, const std::vector<cplx>& h);

}  // namespace wman
