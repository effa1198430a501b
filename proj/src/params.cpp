#include "wman/params.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace wman {

bool valid_guard_ratio(const Rational& g) {
  return g == Rational(1, 4) || g == Rational(1, 8) || g == Rational(1, 16) ||
         g == Rational(1, 32);
}

DerivedParams derive_params(const PrimitiveParams& p) {
  if (!(p.bandwidth_hz > 0)) throw std::invalid_argument("derive_params: bandwidth must be positive");
  if (p.n_used <= 0) throw std::invalid_argument("derive_params: n_used must be positive");
  if (p.sampling_factor <= Rational(0)) throw std::invalid_argument("derive_params: sampling factor must be positive");
  if (!valid_guard_ratio(p.guard_ratio)) throw std::invalid_argument("derive_params: guard ratio must be 1/4, 1/8, 1/16 or 1/32");

  DerivedParams d;
  d.n_fft = static_cast<int>(std::bit_ceil(static_cast<unsigned>(p.n_used) + 1u));

  // F_s = floor(n * BW / 8000) * 8000. The tiny relative nudge keeps an
  // exactly-integer quotient from landing just below the boundary.
  const long double q = static_cast<long double>(p.bandwidth_hz) *
                        static_cast<long double>(p.sampling_factor.numerator()) /
                        (8000.0L * static_cast<long double>(p.sampling_factor.denominator()));
  d.sampling_freq_hz = std::floor(static_cast<double>(q * (1.0L + 1e-12L))) * 8000.0;

  d.subcarrier_spacing_hz = d.sampling_freq_hz / d.n_fft;
  d.useful_symbol_time_s = 1.0 / d.subcarrier_spacing_hz;
  d.cp_time_s = d.useful_symbol_time_s * static_cast<double>(p.guard_ratio.numerator()) /
                static_cast<double>(p.guard_ratio.denominator());
  d.symbol_time_s = d.useful_symbol_time_s + d.cp_time_s;
  d.sample_time_s = d.useful_symbol_time_s / d.n_fft;
  return d;
}

int cp_samples(const Rational& guard_ratio, int n_fft) {
  if (!valid_guard_ratio(guard_ratio)) throw std::invalid_argument("cp_samples: guard ratio must be 1/4, 1/8, 1/16 or 1/32");
  const std::int64_t num = guard_ratio.numerator() * n_fft;
  if (num % guard_ratio.denominator() != 0) throw std::invalid_argument("cp_samples: guard ratio does not divide the FFT size");
  return static_cast<int>(num / guard_ratio.denominator());
}

namespace {

std::vector<CodingProfile> make_profiles() {
  auto mk = [](const char* name, Modulation m, Rational overall, int rs_n, int rs_k,
               int rs_t, Rational cc, int ncpc) {
    CodingProfile p;
    p.name = name;
    p.modulation = m;
    p.overall_rate = overall;
    p.rs_n = rs_n;
    p.rs_k = rs_k;
    p.rs_t = rs_t;
    p.cc_rate = cc;
    p.bits_per_subcarrier = ncpc;
    p.n_cbps = 192 * ncpc;
    return p;
  };
  return {
      mk("bpsk-1/2", Modulation::bpsk, {1, 2}, 12, 12, 0, {1, 2}, 1),
      mk("qpsk-1/2", Modulation::qpsk, {1, 2}, 32, 24, 4, {2, 3}, 2),
      mk("qpsk-3/4", Modulation::qpsk, {3, 4}, 40, 36, 2, {5, 6}, 2),
      mk("16qam-1/2", Modulation::qam16, {1, 2}, 64, 48, 8, {2, 3}, 4),
      mk("16qam-3/4", Modulation::qam16, {3, 4}, 80, 72, 4, {5, 6}, 4),
      mk("64qam-2/3", Modulation::qam64, {2, 3}, 108, 96, 6, {3, 4}, 6),
      mk("64qam-3/4", Modulation::qam64, {3, 4}, 120, 108, 6, {5, 6}, 6),
  };
}

}  // namespace

const std::vector<CodingProfile>& profile_table() {
  static const std::vector<CodingProfile> table = make_profiles();
  return table;
}

const CodingProfile& profile_by_name(const std::string& name) {
  for (const auto& p : profile_table()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown profile: " + name);
}

}  // namespace wman
