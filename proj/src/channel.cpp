#include "wman/channel.hpp"

#include "wman/fft.hpp"
#include "wman/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

namespace wman {

void validate_channel_spec(const SuiChannelSpec& spec) {
  if (spec.taps.empty()) {
    throw std::invalid_argument("channel '" + spec.name + "' has no taps");
  }
  if (spec.terrain != 'A' && spec.terrain != 'B' && spec.terrain != 'C') {
    throw std::invalid_argument("channel '" + spec.name + "' has unknown terrain type");
  }
  if (spec.taps.front().delay_s != 0.0) {
    throw std::invalid_argument("channel '" + spec.name + "' must start at delay 0");
  }
  for (std::size_t i = 0; i < spec.taps.size(); ++i) {
    const SuiTapSpec& t = spec.taps[i];
    if (i > 0 && t.delay_s <= spec.taps[i - 1].delay_s) {
      throw std::invalid_argument("channel '" + spec.name + "' delays must strictly increase");
    }
    if (t.power <= 0.0) {
      throw std::invalid_argument("channel '" + spec.name + "' tap powers must be positive");
    }
    if (t.k_factor < 0.0) {
      throw std::invalid_argument("channel '" + spec.name + "' K factors must be >= 0");
    }
    if (t.doppler_hz <= 0.0) {
      throw std::invalid_argument("channel '" + spec.name + "' Doppler must be positive");
    }
  }
}

std::pair<double, double> ricean_split(double p, double k) {
  if (p < 0.0 || k < 0.0) {
    throw std::invalid_argument("ricean_split needs p >= 0 and k >= 0");
  }
  // The second subtraction recovers whichever part is smaller exactly
  // (Sterbenz), so mean + scatter == p without rounding residue.
  const double mean = p - p / (k + 1.0);
  const double scatter = p - mean;
  return {mean, scatter};
}

double doppler_psd(double f0) {
  const double a = std::abs(f0);
  if (a > 1.0) return 0.0;
  const double f2 = f0 * f0;
  return 1.0 - 1.72 * f2 + 0.785 * f2 * f2;
}

std::vector<double> shaping_filter(int num_taps, double f_m) {
  if (num_taps < 3 || num_taps % 2 == 0) {
    throw std::invalid_argument("shaping_filter needs an odd tap count >= 3");
  }
  if (f_m <= 0.0) {
    throw std::invalid_argument("shaping_filter needs f_m > 0");
  }
  // Frequency sampling on a grid much denser than the filter length: take
  // sqrt of the target spectrum, inverse transform, keep the centered window.
  int grid = 1;
  while (grid < 16 * num_taps) grid *= 2;

  // Sample rate is 2 f_m, so grid frequency k maps to f0 = f / f_m = 2 k / grid
  // (aliased to the negative side above grid/2); every grid point lands inside
  // the support |f0| <= 1.
  std::vector<cplx> impulse(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) {
    const int ks = (k <= grid / 2) ? k : k - grid;
    const double f0 = 2.0 * ks / grid;
    impulse[static_cast<std::size_t>(k)] = std::sqrt(doppler_psd(f0));
  }
  fft_unitary(impulse, true);

  // The inverse transform of a real even spectrum is real and even around 0;
  // rotate so the peak sits mid-window.
  std::vector<double> h(static_cast<std::size_t>(num_taps));
  const int half = num_taps / 2;
  for (int i = 0; i < num_taps; ++i) {
    const int src = ((i - half) % grid + grid) % grid;
    h[static_cast<std::size_t>(i)] = impulse[static_cast<std::size_t>(src)].real();
  }
  double power = 0.0;
  for (double v : h) power += v * v;
  const double scale = 1.0 / std::sqrt(power);
  for (double& v : h) v *= scale;
  return h;
}

namespace {

// Linear convolution of x with real taps h. Short inputs (a handful of
// fading coefficients per batch) go through the direct form; long ones
// through FFT overlap-add.
std::vector<cplx> overlap_add(const std::vector<cplx>& x, const std::vector<double>& h) {
  const std::size_t nh = h.size();
  const std::size_t nx = x.size();
  if (nx * nh <= (1u << 16)) {
    std::vector<cplx> out(nx + nh - 1, cplx(0, 0));
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < nh; ++j) out[i + j] += x[i] * h[j];
    }
    return out;
  }
  std::size_t nfft = 1;
  while (nfft < 4096 || nfft < 2 * nh) nfft *= 2;
  const std::size_t block = nfft - nh + 1;

  std::vector<cplx> hf(nfft, cplx(0, 0));
  std::copy(h.begin(), h.end(), hf.begin());
  fft_unitary(hf, false);

  // Unitary transforms leave a 1/sqrt(nfft) shortfall on the convolution
  // theorem; restore it here.
  const double fix = std::sqrt(static_cast<double>(nfft));
  std::vector<cplx> out(nx + nh - 1, cplx(0, 0));
  std::vector<cplx> buf(nfft);
  for (std::size_t start = 0; start < nx; start += block) {
    const std::size_t len = std::min(block, nx - start);
    std::fill(buf.begin(), buf.end(), cplx(0, 0));
    std::copy(x.begin() + static_cast<std::ptrdiff_t>(start),
              x.begin() + static_cast<std::ptrdiff_t>(start + len), buf.begin());
    fft_unitary(buf, false);
    for (std::size_t i = 0; i < nfft; ++i) buf[i] *= hf[i];
    fft_unitary(buf, true);
    const std::size_t keep = std::min(nfft, out.size() - start);
    for (std::size_t i = 0; i < keep; ++i) out[start + i] += buf[i] * fix;
  }
  return out;
}

// The filter depends only on (tap count, Doppler); batches re-request the
// same handful of combinations millions of times.
const std::vector<double>& shaping_filter_cached(int num_taps, double f_m) {
  static std::map<std::pair<int, double>, std::vector<double>> cache;
  static std::mutex mutex;
  const std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.try_emplace({num_taps, f_m});
  if (inserted) it->second = shaping_filter(num_taps, f_m);
  return it->second;
}

}  // namespace

TapProcess generate_tap(const SuiTapSpec& spec, int num_coeffs, std::uint64_t seed,
                        int filter_taps) {
  if (num_coeffs <= 0) {
    throw std::invalid_argument("generate_tap needs num_coeffs > 0");
  }
  const auto [mean_power, scatter_var] = ricean_split(spec.power, spec.k_factor);
  const std::vector<double>& h = shaping_filter_cached(filter_taps, spec.doppler_hz);

  // Extra head samples so every kept output sees the full filter span; the
  // transient would otherwise bias the leading coefficients low.
  const std::size_t nwhite = static_cast<std::size_t>(num_coeffs) + h.size() - 1;
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::vector<cplx> white(nwhite);
  for (cplx& w : white) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    w = cplx(re, im);
  }
  std::vector<cplx> shaped = overlap_add(white, h);

  TapProcess tap;
  tap.spec = spec;
  tap.sample_rate_hz = 2.0 * spec.doppler_hz;
  tap.coefficients.resize(static_cast<std::size_t>(num_coeffs));
  const double amp = std::sqrt(scatter_var);
  const double fixed = std::sqrt(mean_power);
  const std::size_t valid0 = h.size() - 1;
  for (int i = 0; i < num_coeffs; ++i) {
    tap.coefficients[static_cast<std::size_t>(i)] =
        amp * shaped[valid0 + static_cast<std::size_t>(i)] + fixed;
  }
  return tap;
}

std::vector<cplx> interpolate_to_symbols(const TapProcess& tap, double symbol_time_s,
                                         int n_symbols) {
  if (symbol_time_s <= 0.0 || n_symbols <= 0) {
    throw std::invalid_argument("interpolate_to_symbols needs positive time and count");
  }
  const double step = symbol_time_s * tap.sample_rate_hz;  // grid points per symbol
  std::vector<cplx> out(static_cast<std::size_t>(n_symbols));
  for (int s = 0; s < n_symbols; ++s) {
    const double pos = s * step;
    const auto i0 = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i0);
    if (i0 + 1 >= tap.coefficients.size()) {
      throw std::out_of_range("tap process too short for requested symbol span");
    }
    out[static_cast<std::size_t>(s)] =
        (1.0 - frac) * tap.coefficients[i0] + frac * tap.coefficients[i0 + 1];
  }
  return out;
}

FadedSignal apply_channel(const std::vector<cplx>& tx,
                          const std::vector<std::vector<cplx>>& tap_gains,
                          const std::vector<int>& tap_delays_samples, int samples_per_symbol,
                          int cp_len) {
  if (tap_gains.size() != tap_delays_samples.size()) {
    throw std::invalid_argument("apply_channel: gain rows and delay list disagree");
  }
  if (samples_per_symbol <= 0 || tx.size() % static_cast<std::size_t>(samples_per_symbol) != 0) {
    throw std::invalid_argument("apply_channel: tx length not a whole number of symbols");
  }
  const std::size_t n_symbols = tx.size() / static_cast<std::size_t>(samples_per_symbol);
  FadedSignal out;
  out.samples.assign(tx.size(), cplx(0, 0));
  for (std::size_t t = 0; t < tap_gains.size(); ++t) {
    if (tap_gains[t].size() != n_symbols) {
      throw std::invalid_argument("apply_channel: gain row length must equal symbol count");
    }
    const int d = tap_delays_samples[t];
    if (d < 0) throw std::invalid_argument("apply_channel: negative tap delay");
    if (d > cp_len) out.delay_exceeds_cp = true;
    for (std::size_t s = 0; s < n_symbols; ++s) {
      const cplx g = tap_gains[t][s];
      const std::size_t base = s * static_cast<std::size_t>(samples_per_symbol);
      const std::size_t lo = base + static_cast<std::size_t>(d);
      const std::size_t hi = base + static_cast<std::size_t>(samples_per_symbol);
      for (std::size_t i = lo; i < hi; ++i) {
        out.samples[i] += g * tx[i - static_cast<std::size_t>(d)];
      }
    }
  }
  return out;
}

std::vector<cplx> add_awgn(const std::vector<cplx>& samples, double snr_db,
                           double signal_power_ref, std::uint64_t seed) {
  if (signal_power_ref < 0.0) {
    throw std::invalid_argument("add_awgn: negative reference power");
  }
  const double n0 = signal_power_ref / std::pow(10.0, snr_db / 10.0);
  const double sigma = std::sqrt(n0 / 2.0);
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    out[i] = samples[i] + sigma * cplx(re, im);
  }
  return out;
}

std::vector<cplx> channel_freq_response(const std::vector<cplx>& tap_gains,
                                        const std::vector<int>& tap_delays_samples, int n_fft) {
  if (tap_gains.size() != tap_delays_samples.size()) {
    throw std::invalid_argument("channel_freq_response: gains and delays disagree");
  }
  std::vector<cplx> h(static_cast<std::size_t>(n_fft));
  for (int k = 0; k < n_fft; ++k) {
    cplx acc(0, 0);
    for (std::size_t t = 0; t < tap_gains.size(); ++t) {
      const double phase =
          -2.0 * std::numbers::pi * k * tap_delays_samples[t] / static_cast<double>(n_fft);
      acc += tap_gains[t] * std::polar(1.0, phase);
    }
    h[static_cast<std::size_t>(k)] = acc;
  }
  return h;
}

EqualizedFrame ideal_equalize(const FrequencyFrame& in, const std::vector<cplx>& h) {
  if (h.size() != in.bins.size()) {
    throw std::invalid_argument("ideal_equalize: response length must match frame");
  }
  constexpr double kMinMag = 1e-12;
  EqualizedFrame out;
  out.frame.bins.resize(in.bins.size());
  for (std::size_t i = 0; i < in.bins.size(); ++i) {
    if (std::abs(h[i]) < kMinMag) {
      out.frame.bins[i] = cplx(0, 0);
      ++out.zeroed_bins;
    } else {
      out.frame.bins[i] = in.bins[i] / h[i];
    }
  }
  return out;
}

}  // namespace wman
