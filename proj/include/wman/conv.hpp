#pragma once

#include "wman/params.hpp"

#include <cstdint>
#include <vector>

namespace wman {

// Rate-1/2 convolutional encoder, constraint length 7, generators 0o171 (X)
// and 0o133 (Y), with the puncturing patterns that raise it to 2/3, 3/4, 5/6.

struct CcOutput {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> y;
};

// Encoder starts in the zero state; callers flush with trailing zero bits
// when they need a terminated block.
CcOutput cc_encode(const std::vector<std::uint8_t>& bits);

struct PunctureRate {
  Rational rate{1, 2};
  std::vector<std::uint8_t> x_mask;
  std::vector<std::uint8_t> y_mask;
  int d_free = 0;
};

const PunctureRate& puncture_rate(const Rational& rate);  // throws on unsupported rates

// Serialize the two streams keeping only mask-1 slots, X before Y at the same
// index.
std::vector<std::uint8_t> puncture(const std::vector<std::uint8_t>& x,
                                   const std::vector<std::uint8_t>& y,
                                   const PunctureRate& pr);

// Inverse of puncture on soft values: dropped slots come back as
// zero-confidence entries. Output is X,Y-interleaved, ready for the decoder.
std::vector<double> depuncture(const std::vector<double>& soft, const PunctureRate& pr);

// Soft-decision Viterbi over the 64-state trellis; positive values argue for
// bit 1. The encoded block is assumed flushed back to the zero state.
std::vector<std::uint8_t> viterbi_decode(const std::vector<double>& soft_xy);

}  // namespace wman
