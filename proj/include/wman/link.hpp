#pragma once

#include "wman/constellation.hpp"
#include "wman/conv.hpp"
#include "wman/interleaver.hpp"
#include "wman/ofdm.hpp"
#include "wman/params.hpp"
#include "wman/rs.hpp"

#include <cstdint>
#include <vector>

namespace wman {

// One OFDM symbol's worth of the transmit and receive chain for a coding
// profile: randomization, outer block code, inner convolutional code with
// puncturing, interleaving, mapping, and the transforms. The outer parity is
// fed to the inner encoder ahead of the data so the appended 0x00 byte is the
// last one through, returning the encoder to the zero state.
class LinkChain {
 public:
  LinkChain(const CodingProfile& profile, int cp_len);

  const CodingProfile& profile() const { return profile_; }
  int cp_len() const { return cp_len_; }
  int samples_per_symbol() const { return kNfft + cp_len_; }

  // payload_bytes() randomized bytes in, one time-domain symbol out.
  TimeSymbol encode_symbol(const std::vector<std::uint8_t>& payload) const;

  struct DecodeResult {
    std::vector<std::uint8_t> payload;
    int rs_corrections = 0;
    bool rs_failure = false;
  };

  // Equalized frequency frame plus the post-equalizer noise variance of each
  // data carrier, in the same ascending-bin order the mapper used.
  DecodeResult decode_symbol(const FrequencyFrame& frame,
                             const std::vector<double>& noise_vars) const;

 private:
  CodingProfile profile_;
  int cp_len_;
  RsCode rs_;
  InterleaverSpec interleaver_;
  const PunctureRate* puncture_;
  const ConstellationMap* map_;
};

// Calibration mode: raw bits straight onto BPSK data carriers, recovered by
// hard decision. Shares the frame layout and transforms with the coded chain.
class UncodedBpskChain {
 public:
  explicit UncodedBpskChain(int cp_len);

  int cp_len() const { return cp_len_; }
  int samples_per_symbol() const { return kNfft + cp_len_; }
  int bits_per_symbol() const { return kDataCarriers; }

  TimeSymbol encode_symbol(const std::vector<std::uint8_t>& bits) const;
  std::vector<std::uint8_t> decode_symbol(const FrequencyFrame& frame) const;

 private:
  int cp_len_;
  const ConstellationMap* map_;
};

}  // namespace wman
