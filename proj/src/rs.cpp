#include "wman/rs.hpp"

#include "wman/gf256.hpp"

#include <stdexcept>

namespace wman {

RsCode make_rs_code(int n, int k) {
  if (!(0 < k && k <= n && n <= 255)) throw std::invalid_argument("make_rs_code: need 0 < k <= n <= 255");
  if ((n - k) % 2 != 0) throw std::invalid_argument("make_rs_code: parity count must be even");
  const auto& gf = GF256::instance();
  RsCode code;
  code.n = n;
  code.k = k;
  code.t = (n - k) / 2;
  code.generator.assign(1, 1);
  for (int i = 0; i < 2 * code.t; ++i) {
    // multiply the generator by (x + alpha^i)
    std::vector<std::uint8_t> next(code.generator.size() + 1, 0);
    const std::uint8_t root = gf.pow_alpha(i);
    for (std::size_t j = 0; j < code.generator.size(); ++j) {
      next[j + 1] ^= code.generator[j];
      next[j] ^= gf.mul(code.generator[j], root);
    }
    code.generator = std::move(next);
  }
  return code;
}

std::vector<std::uint8_t> rs_encode(const std::vector<std::uint8_t>& data, const RsCode& code) {
  if (static_cast<int>(data.size()) != code.k) throw std::invalid_argument("rs_encode: data length mismatch");
  if (code.t == 0) return data;
  const auto& gf = GF256::instance();
  const int m = 2 * code.t;
  // Long division of data * x^m by the generator; rem[0] tracks the
  // coefficient of x^(m-1).
  std::vector<std::uint8_t> rem(static_cast<std::size_t>(m), 0);
  for (std::uint8_t d : data) {
    const std::uint8_t fb = static_cast<std::uint8_t>(d ^ rem[0]);
    for (int j = 0; j < m - 1; ++j) {
      rem[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(
          rem[static_cast<std::size_t>(j + 1)] ^ gf.mul(fb, code.generator[static_cast<std::size_t>(m - 1 - j)]));
    }
    rem[static_cast<std::size_t>(m - 1)] = gf.mul(fb, code.generator[0]);
  }
  std::vector<std::uint8_t> out = data;
  out.insert(out.end(), rem.begin(), rem.end());
  return out;
}

namespace {

// Evaluate a polynomial with ascending coefficients at x.
std::uint8_t poly_eval(const std::vector<std::uint8_t>& poly, std::uint8_t x, const GF256& gf) {
  std::uint8_t acc = 0;
  for (std::size_t j = poly.size(); j-- > 0;) acc = static_cast<std::uint8_t>(gf.mul(acc, x) ^ poly[j]);
  return acc;
}

}  // namespace

RsDecodeResult rs_decode(const std::vector<std::uint8_t>& codeword, const RsCode& code) {
  if (static_cast<int>(codeword.size()) != code.n) throw std::invalid_argument("rs_decode: codeword length mismatch");
  RsDecodeResult res;
  res.data.assign(codeword.begin(), codeword.begin() + code.k);
  if (code.t == 0) return res;

  const auto& gf = GF256::instance();
  const int n = code.n;
  const int m = 2 * code.t;

  // Syndromes S_i = C(alpha^i), where codeword[j] is the coefficient of
  // x^(n-1-j).
  std::vector<std::uint8_t> synd(static_cast<std::size_t>(m), 0);
  bool clean = true;
  for (int i = 0; i < m; ++i) {
    const std::uint8_t x = gf.pow_alpha(i);
    std::uint8_t s = 0;
    for (int j = 0; j < n; ++j) s = static_cast<std::uint8_t>(gf.mul(s, x) ^ codeword[static_cast<std::size_t>(j)]);
    synd[static_cast<std::size_t>(i)] = s;
    clean = clean && s == 0;
  }
  if (clean) return res;

  // Berlekamp-Massey for the error locator.
  std::vector<std::uint8_t> lambda{1};
  std::vector<std::uint8_t> prev{1};
  std::uint8_t prev_disc = 1;
  int L = 0;
  int shift = 1;
  for (int i = 0; i < m; ++i) {
    std::uint8_t delta = synd[static_cast<std::size_t>(i)];
    for (int j = 1; j <= L && j < static_cast<int>(lambda.size()); ++j) {
      delta ^= gf.mul(lambda[static_cast<std::size_t>(j)], synd[static_cast<std::size_t>(i - j)]);
    }
    if (delta == 0) {
      ++shift;
      continue;
    }
    const std::uint8_t coef = gf.div(delta, prev_disc);
    const std::vector<std::uint8_t> saved = lambda;
    if (lambda.size() < prev.size() + static_cast<std::size_t>(shift)) lambda.resize(prev.size() + static_cast<std::size_t>(shift), 0);
    for (std::size_t j = 0; j < prev.size(); ++j) lambda[j + static_cast<std::size_t>(shift)] ^= gf.mul(coef, prev[j]);
    if (2 * L <= i) {
      prev = saved;
      prev_disc = delta;
      L = i + 1 - L;
      shift = 1;
    } else {
      ++shift;
    }
  }

  auto fail = [&res]() {
    res.failure = true;
    res.corrections = 0;
    return res;
  };
  if (L > code.t) return fail();

  // Chien search over the n transmitted positions; codeword[j] sits at
  // locator alpha^(n-1-j).
  std::vector<int> error_pos;
  for (int j = 0; j < n; ++j) {
    const std::uint8_t x = gf.pow_alpha(-(n - 1 - j));
    if (poly_eval(lambda, x, gf) == 0) error_pos.push_back(j);
  }
  if (static_cast<int>(error_pos.size()) != L) return fail();

  // Forney error values from omega(x) = S(x) * lambda(x) mod x^m.
  std::vector<std::uint8_t> omega(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    std::uint8_t acc = 0;
    for (int j = 0; j <= i && j < static_cast<int>(lambda.size()); ++j) {
      acc ^= gf.mul(lambda[static_cast<std::size_t>(j)], synd[static_cast<std::size_t>(i - j)]);
    }
    omega[static_cast<std::size_t>(i)] = acc;
  }
  std::vector<std::uint8_t> lambda_deriv;
  for (std::size_t j = 1; j < lambda.size(); j += 2) {
    lambda_deriv.resize(j, 0);
    lambda_deriv[j - 1] = lambda[j];
  }

  std::vector<std::uint8_t> fixed = codeword;
  for (int j : error_pos) {
    const std::uint8_t xl = gf.pow_alpha(n - 1 - j);     // locator
    const std::uint8_t xli = gf.inv(xl);
    const std::uint8_t num = poly_eval(omega, xli, gf);
    const std::uint8_t den = poly_eval(lambda_deriv, xli, gf);
    if (den == 0) return fail();
    fixed[static_cast<std::size_t>(j)] ^= gf.mul(xl, gf.div(num, den));
  }

  // Re-check the syndromes of the patched word; a residue means the locator
  // was consistent but the correction was not.
  for (int i = 0; i < m; ++i) {
    const std::uint8_t x = gf.pow_alpha(i);
    std::uint8_t s = 0;
    for (int j = 0; j < n; ++j) s = static_cast<std::uint8_t>(gf.mul(s, x) ^ fixed[static_cast<std::size_t>(j)]);
    if (s != 0) return fail();
  }

  res.data.assign(fixed.begin(), fixed.begin() + code.k);
  res.corrections = L;
  return res;
}

}  // namespace wman
