#pragma once

#include <stdexcept>
#include <vector>

namespace wman {

// Two-step block interleaver. The first permutation spreads adjacent coded
// bits across subcarriers with stride n_cbps/12; the second rotates bit
// positions inside each constellation word so neighbours alternate between
// more and less protected bit slots.
struct InterleaverSpec {
  int n_cbps = 0;
  int s = 0;                 // ceil(bits_per_subcarrier / 2)
  std::vector<int> tx_perm;  // out[tx_perm[k]] = in[k]
  std::vector<int> rx_perm;  // out[rx_perm[j]] = in[j]; exact inverse of tx_perm
};

// Throws if the permutations fail the construction self-check.
InterleaverSpec build_spec(int n_cbps, int n_cpc);

template <class T>
std::vector<T> interleave(const std::vector<T>& in, const InterleaverSpec& spec) {
  if (static_cast<int>(in.size()) != spec.n_cbps) throw std::invalid_argument("interleave: block length mismatch");
  std::vector<T> out(in.size());
  for (std::size_t k = 0; k < in.size(); ++k) out[static_cast<std::size_t>(spec.tx_perm[k])] = in[k];
  return out;
}

template <class T>
std::vector<T> deinterleave(const std::vector<T>& in, const InterleaverSpec& spec) {
  if (static_cast<int>(in.size()) != spec.n_cbps) throw std::invalid_argument("deinterleave: block length mismatch");
  std::vector<T> out(in.size());
  for (std::size_t j = 0; j < in.size(); ++j) out[static_cast<std::size_t>(spec.rx_perm[j])] = in[j];
  return out;
}

}  // namespace wman
