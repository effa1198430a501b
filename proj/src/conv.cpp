#include "wman/conv.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace wman {

namespace {

constexpr unsigned kGenX = 0x79;  // 0o171
constexpr unsigned kGenY = 0x5B;  // 0o133
constexpr int kStates = 64;

inline std::uint8_t parity7(unsigned v) {
  return static_cast<std::uint8_t>(std::popcount(v & 0x7Fu) & 1u);
}

struct Branch {
  double sx = 0, sy = 0;  // encoder output bits mapped to -1/+1
  int ps = 0;             // predecessor state
};

// branches[ns][p]: the two trellis edges entering next-state ns. The newest
// input bit sits at bit 5 of the state, so ns fixes the input (ns >> 5) and
// the predecessor supplies the rest of the window.
const std::array<std::array<Branch, 2>, kStates>& branch_table() {
  static const auto table = [] {
    std::array<std::array<Branch, 2>, kStates> b{};
    for (int ns = 0; ns < kStates; ++ns) {
      const unsigned u = static_cast<unsigned>(ns) >> 5;
      for (int p = 0; p < 2; ++p) {
        const int ps = ((ns & 31) << 1) | p;
        const unsigned w = (u << 6) | static_cast<unsigned>(ps);
        b[static_cast<std::size_t>(ns)][static_cast<std::size_t>(p)] = {
            parity7(w & kGenX) ? 1.0 : -1.0, parity7(w & kGenY) ? 1.0 : -1.0, ps};
      }
    }
    return b;
  }();
  return table;
}

}  // namespace

CcOutput cc_encode(const std::vector<std::uint8_t>& bits) {
  CcOutput out;
  out.x.reserve(bits.size());
  out.y.reserve(bits.size());
  unsigned state = 0;
  for (std::uint8_t u : bits) {
    const unsigned w = ((u & 1u) << 6) | state;
    out.x.push_back(parity7(w & kGenX));
    out.y.push_back(parity7(w & kGenY));
    state = w >> 1;
  }
  return out;
}

const PunctureRate& puncture_rate(const Rational& rate) {
  static const std::array<PunctureRate, 4> table{{
      {{1, 2}, {1}, {1}, 10},
      {{2, 3}, {1, 0}, {1, 1}, 6},
      {{3, 4}, {1, 0, 1}, {1, 1, 0}, 5},
      {{5, 6}, {1, 0, 1, 0, 1}, {1, 1, 0, 1, 0}, 4},
  }};
  for (const auto& pr : table) {
    if (pr.rate == rate) return pr;
  }
  throw std::invalid_argument("unsupported puncture rate");
}

std::vector<std::uint8_t> puncture(const std::vector<std::uint8_t>& x,
                                   const std::vector<std::uint8_t>& y,
                                   const PunctureRate& pr) {
  if (x.size() != y.size()) throw std::invalid_argument("puncture: stream length mismatch");
  const std::size_t period = pr.x_mask.size();
  if (x.size() % period != 0) throw std::invalid_argument("puncture: length not a multiple of the pattern period");
  std::vector<std::uint8_t> out;
  out.reserve(x.size() * 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t ph = i % period;
    if (pr.x_mask[ph]) out.push_back(x[i]);
    if (pr.y_mask[ph]) out.push_back(y[i]);
  }
  return out;
}

std::vector<double> depuncture(const std::vector<double>& soft, const PunctureRate& pr) {
  const std::size_t period = pr.x_mask.size();
  std::size_t kept = 0;
  for (std::size_t i = 0; i < period; ++i) kept += static_cast<std::size_t>(pr.x_mask[i]) + static_cast<std::size_t>(pr.y_mask[i]);
  if (soft.size() % kept != 0) throw std::invalid_argument("depuncture: length inconsistent with the pattern");
  const std::size_t periods = soft.size() / kept;
  std::vector<double> out(2 * periods * period, 0.0);
  std::size_t s = 0;
  for (std::size_t i = 0; i < periods * period; ++i) {
    const std::size_t ph = i % period;
    if (pr.x_mask[ph]) out[2 * i] = soft[s++];
    if (pr.y_mask[ph]) out[2 * i + 1] = soft[s++];
  }
  return out;
}

std::vector<std::uint8_t> viterbi_decode(const std::vector<double>& soft_xy) {
  if (soft_xy.size() % 2 != 0) throw std::invalid_argument("viterbi_decode: odd metric count");
  const std::size_t steps = soft_xy.size() / 2;
  if (steps == 0) return {};
  const auto& branches = branch_table();

  // Scale the block so the largest magnitude is 1. Path ordering is
  // unaffected and the metrics stay bounded no matter how confident the
  // demapper was.
  double peak = 0;
  for (double v : soft_xy) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0 ? 1.0 / peak : 0.0;

  constexpr double kUnreached = -1e15;
  std::vector<double> metric(kStates, kUnreached), next(kStates);
  metric[0] = 0.0;
  std::vector<std::uint8_t> decisions(steps * kStates);
  for (std::size_t i = 0; i < steps; ++i) {
    const double lx = soft_xy[2 * i] * scale;
    const double ly = soft_xy[2 * i + 1] * scale;
    std::uint8_t* dec = &decisions[i * kStates];
    for (int ns = 0; ns < kStates; ++ns) {
      const Branch& b0 = branches[static_cast<std::size_t>(ns)][0];
      const Branch& b1 = branches[static_cast<std::size_t>(ns)][1];
      const double m0 = metric[static_cast<std::size_t>(b0.ps)] + b0.sx * lx + b0.sy * ly;
      const double m1 = metric[static_cast<std::size_t>(b1.ps)] + b1.sx * lx + b1.sy * ly;
      const bool take1 = m1 > m0;
      next[static_cast<std::size_t>(ns)] = take1 ? m1 : m0;
      dec[ns] = take1;
    }
    metric.swap(next);
  }

  // Traceback from the flushed (zero) state.
  std::vector<std::uint8_t> bits(steps);
  int s = 0;
  for (std::size_t i = steps; i-- > 0;) {
    bits[i] = static_cast<std::uint8_t>(s >> 5);
    s = branches[static_cast<std::size_t>(s)][decisions[i * kStates + static_cast<std::size_t>(s)]].ps;
  }
  return bits;
}

}  // namespace wman
