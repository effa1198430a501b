#include "wman/interleaver.hpp"

namespace wman {

InterleaverSpec build_spec(int n_cbps, int n_cpc) {
  if (n_cpc != 1 && n_cpc != 2 && n_cpc != 4 && n_cpc != 6) {
    throw std::invalid_argument("build_spec: bits per subcarrier must be 1, 2, 4 or 6");
  }
  if (n_cbps != 192 * n_cpc) {
    throw std::invalid_argument("build_spec: block size must be 192 * bits per subcarrier");
  }
  InterleaverSpec spec;
  spec.n_cbps = n_cbps;
  spec.s = (n_cpc + 1) / 2;
  const int n = n_cbps;
  const int s = spec.s;
  spec.tx_perm.resize(static_cast<std::size_t>(n));
  spec.rx_perm.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int f = (n / 12) * (k % 12) + k / 12;
    spec.tx_perm[static_cast<std::size_t>(k)] = s * (f / s) + (f + n - (12 * f) / n) % s;
  }
  for (int j = 0; j < n; ++j) {
    const int f = s * (j / s) + (j + (12 * j) / n) % s;
    spec.rx_perm[static_cast<std::size_t>(j)] = 12 * f - (n - 1) * ((12 * f) / n);
  }

  // Construction self-check: the write table must be a bijection and the read
  // table its exact inverse.
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) {
    const int v = spec.tx_perm[static_cast<std::size_t>(k)];
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]++) {
      throw std::logic_error("build_spec: transmit permutation is not a bijection");
    }
  }
  for (int k = 0; k < n; ++k) {
    if (spec.rx_perm[static_cast<std::size_t>(spec.tx_perm[static_cast<std::size_t>(k)])] != k) {
      throw std::logic_error("build_spec: receive permutation does not invert the transmit side");
    }
  }
  return spec;
}

}  // namespace wman
