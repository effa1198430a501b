#include "wman/channel.hpp"

#include "wman/channel_config.hpp"
#include "wman/ofdm.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

using namespace wman;

namespace {

SuiTapSpec tap(double delay_us, double power_db, double k, double doppler) {
  SuiTapSpec t;
  t.delay_s = delay_us * 1e-6;
  t.power = std::pow(10.0, power_db / 10.0);
  t.k_factor = k;
  t.doppler_hz = doppler;
  return t;
}

}  // namespace

TEST_CASE("channel spec validation") {
  CHECK_NOTHROW(validate_channel_spec(builtin_channel_table().at("sui-1")));

  SuiChannelSpec bad;
  bad.name = "x";
  bad.terrain = 'B';
  bad.taps = {tap(0, 0, 1, 0.4), tap(0.4, -5, 0, 0.3)};
  CHECK_NOTHROW(validate_channel_spec(bad));

  SUBCASE("first delay must be zero") {
    bad.taps[0].delay_s = 1e-7;
    CHECK_THROWS(validate_channel_spec(bad));
  }
  SUBCASE("delays strictly increase") {
    bad.taps[1].delay_s = 0;
    CHECK_THROWS(validate_channel_spec(bad));
  }
  SUBCASE("k factors non-negative") {
    bad.taps[1].k_factor = -0.1;
    CHECK_THROWS(validate_channel_spec(bad));
  }
  SUBCASE("doppler positive") {
    bad.taps[0].doppler_hz = 0;
    CHECK_THROWS(validate_channel_spec(bad));
  }
  SUBCASE("terrain letter") {
    bad.terrain = 'D';
    CHECK_THROWS(validate_channel_spec(bad));
  }
}

TEST_CASE("ricean power split") {
  SUBCASE("worked example") {
    const auto [mean, scatter] = ricean_split(0.7, 4.0);
    CHECK(scatter == doctest::Approx(0.14).epsilon(1e-15));
    CHECK(mean == doctest::Approx(0.56).epsilon(1e-15));
  }
  SUBCASE("k of zero is all scatter") {
    const auto [mean, scatter] = ricean_split(1.0, 0.0);
    CHECK(mean == 0.0);
    CHECK(scatter == 1.0);
  }
  SUBCASE("closure is exact for random inputs") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> pd(1e-6, 10.0), kd(0.0, 50.0);
    for (int i = 0; i < 100000; ++i) {
      const double p = pd(rng), k = kd(rng);
      const auto [mean, scatter] = ricean_split(p, k);
      REQUIRE(mean + scatter == p);
      REQUIRE(mean >= 0.0);
      REQUIRE(scatter >= 0.0);
    }
  }
  CHECK_THROWS(ricean_split(-1.0, 0.0));
  CHECK_THROWS(ricean_split(1.0, -0.5));
}

TEST_CASE("doppler spectrum shape") {
  CHECK(doppler_psd(0.0) == 1.0);
  CHECK(doppler_psd(1.0) == doctest::Approx(0.065).epsilon(1e-12));
  CHECK(doppler_psd(-1.0) == doctest::Approx(0.065).epsilon(1e-12));
  CHECK(doppler_psd(0.5) == doctest::Approx(1.0 - 1.72 * 0.25 + 0.785 * 0.0625).epsilon(1e-12));
  CHECK(doppler_psd(1.0001) == 0.0);
  CHECK(doppler_psd(-3.0) == 0.0);
}

TEST_CASE("shaping filter") {
  const auto h = shaping_filter(257, 0.4);
  REQUIRE(h.size() == 257);

  SUBCASE("unit power") {
    double p = 0;
    for (double v : h) p += v * v;
    CHECK(p == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("zero phase symmetry") {
    for (std::size_t i = 0; i < h.size(); ++i) {
      REQUIRE(std::abs(h[i] - h[h.size() - 1 - i]) < 1e-12);
    }
  }
  SUBCASE("band edge attenuation follows the square-root spectrum") {
    // |H(0)| / |H(f_m)| should be close to 1/sqrt(S(1)) = 3.9223.
    auto mag_at = [&](double f0) {
      cplx acc(0, 0);
      for (std::size_t n = 0; n < h.size(); ++n) {
        acc += h[n] * std::polar(1.0, -std::numbers::pi * f0 * static_cast<double>(n));
      }
      return std::abs(acc);
    };
    const double ratio = mag_at(0.0) / mag_at(1.0);
    CHECK(ratio == doctest::Approx(1.0 / std::sqrt(0.065)).epsilon(0.02));
  }
  CHECK_THROWS(shaping_filter(256, 0.4));
  CHECK_THROWS(shaping_filter(1, 0.4));
  CHECK_THROWS(shaping_filter(257, 0.0));
}

TEST_CASE("generated taps are deterministic and power-accurate") {
  const SuiTapSpec spec = tap(0, 0, 0, 0.4);

  SUBCASE("same seed same coefficients") {
    const TapProcess a = generate_tap(spec, 4096, 77);
    const TapProcess b = generate_tap(spec, 4096, 77);
    REQUIRE(a.coefficients == b.coefficients);
    const TapProcess c = generate_tap(spec, 4096, 78);
    REQUIRE(a.coefficients != c.coefficients);
    CHECK(a.sample_rate_hz == doctest::Approx(0.8));
  }

  SUBCASE("rayleigh tap power and magnitude moment") {
    const TapProcess t = generate_tap(spec, 100000, 5);
    double p = 0, m = 0;
    for (const cplx& g : t.coefficients) {
      p += std::norm(g);
      m += std::abs(g);
    }
    p /= static_cast<double>(t.coefficients.size());
    m /= static_cast<double>(t.coefficients.size());
    CHECK(p == doctest::Approx(1.0).epsilon(0.03));
    // Rayleigh magnitudes: E|g|^2 / (E|g|)^2 = 4 / pi.
    CHECK(m * m / p == doctest::Approx(std::numbers::pi / 4.0).epsilon(0.03));
  }

  SUBCASE("ricean tap keeps its fixed component") {
    const SuiTapSpec los = tap(0, 0, 4.0, 0.4);
    const TapProcess t = generate_tap(los, 60000, 9);
    cplx mean(0, 0);
    double p = 0;
    for (const cplx& g : t.coefficients) {
      mean += g;
      p += std::norm(g);
    }
    mean /= static_cast<double>(t.coefficients.size());
    p /= static_cast<double>(t.coefficients.size());
    CHECK(mean.real() == doctest::Approx(std::sqrt(0.8)).epsilon(0.03));
    CHECK(std::abs(mean.imag()) < 0.02);
    CHECK(p == doctest::Approx(1.0).epsilon(0.03));
  }
}

TEST_CASE("interpolation to symbol instants") {
  TapProcess t;
  t.sample_rate_hz = 0.8;
  t.coefficients = {cplx(0, 0), cplx(1, 1), cplx(2, 0)};

  SUBCASE("grid points are exact") {
    const auto g = interpolate_to_symbols(t, 1.25, 2);  // symbol time equals grid spacing
    CHECK(g[0] == cplx(0, 0));
    CHECK(g[1] == cplx(1, 1));
  }
  SUBCASE("midpoints are linear") {
    const auto g = interpolate_to_symbols(t, 0.625, 3);
    CHECK(g[1] == cplx(0.5, 0.5));
    CHECK(g[2] == cplx(1, 1));
  }
  SUBCASE("running off the end throws") {
    CHECK_THROWS(interpolate_to_symbols(t, 1.25, 5));
  }
}

TEST_CASE("tapped delay line application") {
  SUBCASE("identity and scalar taps") {
    std::vector<cplx> tx = {1, 2, 3, 4};
    const FadedSignal same =
        apply_channel(tx, {{cplx(1, 0)}}, {0}, 4, 1);
    CHECK(same.samples == tx);
    CHECK_FALSE(same.delay_exceeds_cp);
    const FadedSignal scaled = apply_channel(tx, {{cplx(0, 2)}}, {0}, 4, 1);
    CHECK(scaled.samples[2] == cplx(0, 6));
  }
  SUBCASE("two taps on an impulse") {
    std::vector<cplx> tx = {1, 0, 0, 0};
    const FadedSignal out =
        apply_channel(tx, {{cplx(1, 0)}, {cplx(0.5, 0)}}, {0, 1}, 4, 2);
    CHECK(out.samples == std::vector<cplx>{cplx(1, 0), cplx(0.5, 0), cplx(0, 0), cplx(0, 0)});
  }
  SUBCASE("delay beyond the prefix is flagged") {
    std::vector<cplx> tx(8, cplx(1, 0));
    const FadedSignal out = apply_channel(tx, {{cplx(1, 0)}, {cplx(0.1, 0)}}, {0, 3}, 8, 2);
    CHECK(out.delay_exceeds_cp);
  }
  CHECK_THROWS(apply_channel({1, 2, 3}, {{cplx(1, 0)}}, {0}, 2, 1));
}

TEST_CASE("white noise injection") {
  std::vector<cplx> sig(100000, cplx(1.0, -1.0));

  SUBCASE("vanishing noise at 300 dB") {
    const auto out = add_awgn(sig, 300.0, 2.0, 3);
    double worst = 0;
    for (std::size_t i = 0; i < sig.size(); ++i) worst = std::max(worst, std::abs(out[i] - sig[i]));
    CHECK(worst < 1e-10);
  }
  SUBCASE("empirical snr within a tenth of a dB") {
    const double snr_db = 7.0;
    const auto out = add_awgn(sig, snr_db, 2.0, 11);
    double noise_p = 0;
    for (std::size_t i = 0; i < sig.size(); ++i) noise_p += std::norm(out[i] - sig[i]);
    noise_p /= static_cast<double>(sig.size());
    const double measured = 10.0 * std::log10(2.0 / noise_p);
    CHECK(measured == doctest::Approx(snr_db).epsilon(0.015));
  }
  SUBCASE("seeded determinism") {
    CHECK(add_awgn(sig, 10, 2.0, 5) == add_awgn(sig, 10, 2.0, 5));
  }
}

TEST_CASE("frequency response of the delay line") {
  SUBCASE("single tap at zero delay is flat") {
    const auto h = channel_freq_response({cplx(0.3, -0.4)}, {0}, 256);
    for (const cplx& v : h) REQUIRE(std::abs(v - cplx(0.3, -0.4)) < 1e-15);
  }
  SUBCASE("delayed tap rotates linearly across bins") {
    const auto h = channel_freq_response({cplx(1, 0)}, {3}, 256);
    for (int k = 0; k < 256; k += 17) {
      const cplx want = std::polar(1.0, -2.0 * std::numbers::pi * k * 3.0 / 256.0);
      REQUIRE(std::abs(h[static_cast<std::size_t>(k)] - want) < 1e-12);
    }
  }
}

TEST_CASE("zero forcing equalizer") {
  FrequencyFrame f;
  for (int i = 0; i < kNfft; ++i) f.bins[static_cast<std::size_t>(i)] = cplx(i, -i);

  SUBCASE("flat channel recovers exactly") {
    std::vector<cplx> h(kNfft, cplx(0, 2));
    const EqualizedFrame eq = ideal_equalize(f, h);
    CHECK(eq.zeroed_bins == 0);
    for (int i = 0; i < kNfft; ++i) {
      REQUIRE(std::abs(eq.frame.bins[static_cast<std::size_t>(i)] * cplx(0, 2) -
                       f.bins[static_cast<std::size_t>(i)]) < 1e-12);
    }
  }
  SUBCASE("dead bins are zeroed and counted") {
    std::vector<cplx> h(kNfft, cplx(1, 0));
    h[5] = cplx(1e-13, 0);
    const EqualizedFrame eq = ideal_equalize(f, h);
    CHECK(eq.zeroed_bins == 1);
    CHECK(eq.frame.bins[5] == cplx(0, 0));
  }
}

TEST_CASE("short-delay multipath is circularly equivalent after the prefix") {
  // The reason noiseless error rates vanish: with every tap delay inside the
  // prefix, the linear channel acts on each body as a circular one, which the
  // transform diagonalizes exactly.
  std::mt19937_64 rng(123);
  std::vector<cplx> data(kDataCarriers);
  for (auto& d : data) {
    d = cplx(static_cast<double>(rng() % 201) / 100.0 - 1.0,
             static_cast<double>(rng() % 201) / 100.0 - 1.0);
  }
  const FrequencyFrame frame = assemble_frame(data, std::vector<cplx>(kPilotCarriers, cplx(1, 0)));
  const int cp = 16;
  const TimeSymbol sym = ofdm_modulate(frame, cp);

  const std::vector<cplx> gains = {cplx(0.9, 0.1), cplx(-0.3, 0.25), cplx(0.1, -0.2)};
  const std::vector<int> delays = {0, 2, 7};
  std::vector<std::vector<cplx>> per_symbol_gains;
  for (const cplx& g : gains) per_symbol_gains.push_back({g});

  const FadedSignal rx = apply_channel(sym.samples, per_symbol_gains, delays, kNfft + cp, cp);
  CHECK_FALSE(rx.delay_exceeds_cp);

  TimeSymbol rx_sym;
  rx_sym.cp_len = cp;
  rx_sym.samples = rx.samples;
  const FrequencyFrame after = ofdm_demodulate(rx_sym);
  const auto h = channel_freq_response(gains, delays, kNfft);
  for (int i = 0; i < kNfft; ++i) {
    REQUIRE(std::abs(after.bins[static_cast<std::size_t>(i)] -
                     h[static_cast<std::size_t>(i)] * frame.bins[static_cast<std::size_t>(i)]) <
            1e-12);
  }
}

TEST_CASE("config parsing") {
  SUBCASE("builtin table round trips through the parser") {
    const auto parsed = parse_channel_config(builtin_channel_config_text());
    REQUIRE(parsed.size() == 6);
    const SuiChannelSpec& s3 = parsed.at("sui-3");
    CHECK(s3.terrain == 'B');
    REQUIRE(s3.taps.size() == 3);
    CHECK(s3.taps[1].delay_s == doctest::Approx(0.4e-6));
    CHECK(s3.taps[1].power == doctest::Approx(std::pow(10.0, -0.5)));
    CHECK(s3.taps[0].k_factor == 1.0);
    CHECK(s3.taps[2].doppler_hz == 0.5);
  }
  SUBCASE("comments and blank lines are ignored") {
    const auto parsed = parse_channel_config(
        "# leading comment\n\n[ch]\nterrain = A # trailing\n"
        "tap_delays_us = 0 1\ntap_powers_db = 0 -3\nk_factors = 0 0\ndoppler_hz = 1 1\n");
    CHECK(parsed.at("ch").taps.size() == 2);
  }
  SUBCASE("malformed inputs throw") {
    CHECK_THROWS(parse_channel_config(""));
    CHECK_THROWS(parse_channel_config("[x]\n"));
    CHECK_THROWS(parse_channel_config("key = 1\n"));
    CHECK_THROWS(parse_channel_config("[x\nterrain = A\n"));
    CHECK_THROWS(parse_channel_config(
        "[ch]\nterrain = A\ntap_delays_us = 0 1\ntap_powers_db = 0\nk_factors = 0 0\ndoppler_hz = 1 1\n"));
    CHECK_THROWS(parse_channel_config(
        "[ch]\nterrain = A\ntap_delays_us = 0 zebra\ntap_powers_db = 0 -3\nk_factors = 0 0\ndoppler_hz = 1 1\n"));
  }
  SUBCASE("builtin channels are all valid") {
    for (const auto& [name, spec] : builtin_channel_table()) {
      CAPTURE(name);
      CHECK_NOTHROW(validate_channel_spec(spec));
      CHECK(spec.taps.size() == 3);
    }
  }
}
