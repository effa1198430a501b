#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace wman {

using Rational = boost::rational<std::int64_t>;

enum class Modulation { bpsk, qpsk, qam16, qam64 };

// Nominal symbol parameters everything else is derived from.
struct PrimitiveParams {
  double bandwidth_hz = 1.75e6;
  int n_used = 200;  // data plus pilot subcarriers
  Rational sampling_factor{8, 7};
  Rational guard_ratio{1, 4};  // one of 1/4, 1/8, 1/16, 1/32
};

struct DerivedParams {
  int n_fft = 0;
  double sampling_freq_hz = 0;
  double subcarrier_spacing_hz = 0;
  double useful_symbol_time_s = 0;
  double cp_time_s = 0;
  double symbol_time_s = 0;
  double sample_time_s = 0;
};

// One modulation and code-rate combination of the mandatory rate set.
struct CodingProfile {
  std::string name;
  Modulation modulation = Modulation::bpsk;
  Rational overall_rate{1, 2};
  int rs_n = 0;
  int rs_k = 0;
  int rs_t = 0;
  Rational cc_rate{1, 2};
  int bits_per_subcarrier = 0;
  int n_cbps = 0;  // coded bits per OFDM symbol

  // The last uncoded byte of every block is the 0x00 flush byte that returns
  // the inner encoder to the zero state, so it carries no user data.
  int payload_bytes() const { return rs_k - 1; }
  int payload_bits() const { return (rs_k - 1) * 8; }
};

bool valid_guard_ratio(const Rational& g);

DerivedParams derive_params(const PrimitiveParams& p);

// Cyclic prefix length in samples; throws if the ratio does not divide n_fft.
int cp_samples(const Rational& guard_ratio, int n_fft);

// The seven mandatory profiles, weakest modulation first.
const std::vector<CodingProfile>& profile_table();
const CodingProfile& profile_by_name(const std::string& name);

}  // namespace wman
