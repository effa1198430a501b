#include "wman/interleaver.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

using namespace wman;

namespace {

const std::vector<std::pair<int, int>>& block_shapes() {
  static const std::vector<std::pair<int, int>> shapes = {
      {192, 1}, {384, 2}, {768, 4}, {1152, 6}};  // (n_cbps, bits per subcarrier)
  return shapes;
}

}  // namespace

TEST_CASE("permutations are bijections and inverses of each other") {
  for (const auto& [n, ncpc] : block_shapes()) {
    CAPTURE(n);
    const InterleaverSpec spec = build_spec(n, ncpc);
    CHECK(spec.n_cbps == n);
    CHECK(spec.s == (ncpc + 1) / 2);

    auto sorted = spec.tx_perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i) REQUIRE(sorted[static_cast<std::size_t>(i)] == i);
    for (int k = 0; k < n; ++k) {
      REQUIRE(spec.rx_perm[static_cast<std::size_t>(spec.tx_perm[static_cast<std::size_t>(k)])] == k);
    }
  }
}

TEST_CASE("identity on every basis vector") {
  for (const auto& [n, ncpc] : block_shapes()) {
    CAPTURE(n);
    const InterleaverSpec spec = build_spec(n, ncpc);
    for (int i = 0; i < n; ++i) {
      std::vector<std::uint8_t> e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i)] = 1;
      REQUIRE(deinterleave(interleave(e, spec), spec) == e);
    }
  }
}

TEST_CASE("single-bit-per-carrier blocks reduce to a 12-column transpose") {
  const InterleaverSpec spec = build_spec(192, 1);
  for (int k = 0; k < 192; ++k) {
    const int expected = (192 / 12) * (k % 12) + k / 12;
    REQUIRE(spec.tx_perm[static_cast<std::size_t>(k)] == expected);
  }
}

TEST_CASE("first permutation stride for two-bit carriers") {
  // k = 1 lands 384/12 = 32 positions in, and the second step leaves even
  // positions alone for s = 1.
  const InterleaverSpec spec = build_spec(384, 2);
  CHECK(spec.tx_perm[1] == 32);
}

TEST_CASE("adjacent coded bits land on well-separated subcarriers") {
  for (const auto& [n, ncpc] : block_shapes()) {
    CAPTURE(n);
    const InterleaverSpec spec = build_spec(n, ncpc);
    int min_gap = n;
    for (int k = 0; k + 1 < n; ++k) {
      const int c0 = spec.tx_perm[static_cast<std::size_t>(k)] / ncpc;
      const int c1 = spec.tx_perm[static_cast<std::size_t>(k + 1)] / ncpc;
      min_gap = std::min(min_gap, std::abs(c0 - c1));
    }
    CHECK(min_gap >= n / 12 / ncpc);
  }
}

TEST_CASE("soft values travel the same permutation as bits") {
  const InterleaverSpec spec = build_spec(768, 4);
  std::mt19937_64 rng(3);
  std::vector<double> v(768);
  for (auto& x : v) x = static_cast<double>(rng() % 1000) / 250.0 - 2.0;
  CHECK(deinterleave(interleave(v, spec), spec) == v);
}

TEST_CASE("length mismatches are rejected") {
  const InterleaverSpec spec = build_spec(192, 1);
  CHECK_THROWS(interleave(std::vector<std::uint8_t>(191), spec));
  CHECK_THROWS(deinterleave(std::vector<double>(193), spec));
  CHECK_THROWS(build_spec(190, 1));  // not divisible by 12
}
