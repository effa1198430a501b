#include "wman/link.hpp"

#include "wman/bits.hpp"
#include "wman/scrambler.hpp"

#include <stdexcept>

namespace wman {

namespace {

std::vector<cplx> all_ones_pilots() { return std::vector<cplx>(kPilotCarriers, cplx(1, 0)); }

}  // namespace

LinkChain::LinkChain(const CodingProfile& profile, int cp_len)
    : profile_(profile),
      cp_len_(cp_len),
      rs_(make_rs_code(profile.rs_n, profile.rs_k)),
      interleaver_(build_spec(profile.n_cbps, profile.bits_per_subcarrier)),
      puncture_(&puncture_rate(profile.cc_rate)),
      map_(&constellation(profile.modulation)) {
  if (cp_len < 0 || cp_len >= kNfft) {
    throw std::invalid_argument("LinkChain: cyclic prefix out of range");
  }
}

TimeSymbol LinkChain::encode_symbol(const std::vector<std::uint8_t>& payload) const {
  if (static_cast<int>(payload.size()) != profile_.payload_bytes()) {
    throw std::invalid_argument("encode_symbol: payload must be " +
                                std::to_string(profile_.payload_bytes()) + " bytes");
  }
  std::vector<std::uint8_t> block = scramble_bytes(payload);
  block.push_back(0x00);  // inner-code flush byte, never scrambled

  const std::vector<std::uint8_t> codeword = rs_encode(block, rs_);

  // Parity first, data last: keeps the flush byte at the tail of the inner
  // encoder's input.
  std::vector<std::uint8_t> reordered;
  reordered.reserve(codeword.size());
  reordered.insert(reordered.end(), codeword.begin() + rs_.k, codeword.end());
  reordered.insert(reordered.end(), codeword.begin(), codeword.begin() + rs_.k);

  const CcOutput cc = cc_encode(bytes_to_bits(reordered));
  std::vector<std::uint8_t> coded = puncture(cc.x, cc.y, *puncture_);
  if (static_cast<int>(coded.size()) != profile_.n_cbps) {
    throw std::logic_error("encode_symbol: coded block length mismatch");
  }
  coded = interleave(coded, interleaver_);

  const FrequencyFrame frame = assemble_frame(map_bits(coded, *map_), all_ones_pilots());
  return ofdm_modulate(frame, cp_len_);
}

LinkChain::DecodeResult LinkChain::decode_symbol(const FrequencyFrame& frame,
                                                 const std::vector<double>& noise_vars) const {
  if (static_cast<int>(noise_vars.size()) != kDataCarriers) {
    throw std::invalid_argument("decode_symbol: need one noise variance per data carrier");
  }
  const std::vector<cplx> symbols = extract_data(frame);
  std::vector<double> llrs(static_cast<std::size_t>(profile_.n_cbps));
  const int bps = map_->bits_per_symbol;
  for (int i = 0; i < kDataCarriers; ++i) {
    demap_symbol_soft(symbols[static_cast<std::size_t>(i)], *map_,
                      noise_vars[static_cast<std::size_t>(i)],
                      llrs.data() + static_cast<std::ptrdiff_t>(i) * bps);
  }

  const std::vector<double> deinterleaved = deinterleave(llrs, interleaver_);
  const std::vector<double> soft_xy = depuncture(deinterleaved, *puncture_);
  const std::vector<std::uint8_t> bits = viterbi_decode(soft_xy);
  const std::vector<std::uint8_t> reordered = bits_to_bytes(bits);

  // Undo the parity-first ordering.
  const int parity = rs_.n - rs_.k;
  std::vector<std::uint8_t> codeword;
  codeword.reserve(reordered.size());
  codeword.insert(codeword.end(), reordered.begin() + parity, reordered.end());
  codeword.insert(codeword.end(), reordered.begin(), reordered.begin() + parity);

  RsDecodeResult rs = rs_decode(codeword, rs_);

  DecodeResult out;
  out.rs_corrections = rs.corrections;
  out.rs_failure = rs.failure;
  rs.data.pop_back();  // flush byte
  out.payload = scramble_bytes(rs.data);
  return out;
}

UncodedBpskChain::UncodedBpskChain(int cp_len)
    : cp_len_(cp_len), map_(&constellation(Modulation::bpsk)) {
  if (cp_len < 0 || cp_len >= kNfft) {
    throw std::invalid_argument("UncodedBpskChain: cyclic prefix out of range");
  }
}

TimeSymbol UncodedBpskChain::encode_symbol(const std::vector<std::uint8_t>& bits) const {
  if (static_cast<int>(bits.size()) != kDataCarriers) {
    throw std::invalid_argument("encode_symbol: need one bit per data carrier");
  }
  const FrequencyFrame frame = assemble_frame(map_bits(bits, *map_), all_ones_pilots());
  return ofdm_modulate(frame, cp_len_);
}

std::vector<std::uint8_t> UncodedBpskChain::decode_symbol(const FrequencyFrame& frame) const {
  const std::vector<cplx> symbols = extract_data(frame);
  std::vector<std::uint8_t> bits(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    bits[i] = symbols[i].real() > 0.0 ? 1 : 0;
  }
  return bits;
}

}  // namespace wman
