#pragma once

#include <cstdint>
#include <vector>

namespace wman {

// Systematic Reed-Solomon code over GF(256). The generator polynomial has
// roots alpha^0 .. alpha^(2t-1), so every profile carries exactly the parity
// it can use; decoding is plain errors-only Berlekamp-Massey.
struct RsCode {
  int n = 0;
  int k = 0;
  int t = 0;
  std::vector<std::uint8_t> generator;  // ascending powers, generator[2t] == 1
};

RsCode make_rs_code(int n, int k);

// data (k bytes) in, data followed by 2t parity bytes out. A code with t == 0
// passes the data through untouched.
std::vector<std::uint8_t> rs_encode(const std::vector<std::uint8_t>& data, const RsCode& code);

struct RsDecodeResult {
  std::vector<std::uint8_t> data;
  int corrections = 0;
  bool failure = false;  // uncorrectable; data passed through unmodified
};

RsDecodeResult rs_decode(const std::vector<std::uint8_t>& codeword, const RsCode& code);

}  // namespace wman
