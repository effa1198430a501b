#include "wman/cli.hpp"

#include "wman/bits.hpp"
#include "wman/channel_config.hpp"
#include "wman/conv.hpp"
#include "wman/interleaver.hpp"
#include "wman/link.hpp"
#include "wman/rng.hpp"
#include "wman/rs.hpp"
#include "wman/scrambler.hpp"
#include "wman/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace wman {

namespace {

double parse_snr_field(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw CLI::ValidationError("--snr", "bad number '" + s + "'");
  return v;
}

void parse_snr_range(const std::string& arg, SimConfig& cfg) {
  const std::size_t c1 = arg.find(':');
  const std::size_t c2 = c1 == std::string::npos ? std::string::npos : arg.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos || arg.find(':', c2 + 1) != std::string::npos) {
    throw CLI::ValidationError("--snr", "expected start:step:stop, got '" + arg + "'");
  }
  cfg.snr_start_db = parse_snr_field(arg.substr(0, c1));
  cfg.snr_step_db = parse_snr_field(arg.substr(c1 + 1, c2 - c1 - 1));
  cfg.snr_stop_db = parse_snr_field(arg.substr(c2 + 1));
}

Rational parse_guard(const std::string& arg) {
  long long num = 0, den = 0;
  if (std::sscanf(arg.c_str(), "%lld/%lld", &num, &den) != 2 || den == 0) {
    throw CLI::ValidationError("--guard", "expected a fraction like 1/4, got '" + arg + "'");
  }
  return Rational{num, den};
}

std::vector<std::string> split_csv(const std::string& arg) {
  std::vector<std::string> out;
  std::istringstream iss(arg);
  std::string item;
  while (std::getline(iss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void merge_channel_file(const std::string& path, std::map<std::string, SuiChannelSpec>& table) {
  for (auto& [name, spec] : load_channel_config(path)) table[name] = spec;
}

void print_sweep(const SweepResult& res) {
  for (const std::string& w : res.warnings) std::cerr << "warning: " << w << "\n";
  std::printf("# ebn0_db = snr_db %+.4f dB; rs_failures=%llu zeroed_bins=%llu wall=%.1fs\n",
              res.ebn0_offset_db, static_cast<unsigned long long>(res.rs_failures),
              static_cast<unsigned long long>(res.zeroed_bins), res.wall_seconds);
  std::printf("%10s %12s %12s %12s %10s  %s\n", "snr_db", "ebn0_db", "bits", "bit_errors", "ber",
              "stop_reason");
  for (const BerPoint& p : res.points) {
    std::printf("%10.3f %12.3f %12llu %12llu %10.3e  %s\n", p.snr_db,
                p.snr_db + res.ebn0_offset_db, static_cast<unsigned long long>(p.bits),
                static_cast<unsigned long long>(p.bit_errors), p.ber, to_string(p.stop_reason));
  }
}

int run_selftest() {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
    if (ok) {
      std::printf("ok   %s\n", name.c_str());
    } else {
      ++failures;
      std::printf("FAIL %s%s%s\n", name.c_str(), detail.empty() ? "" : ": ", detail.c_str());
    }
  };

  {
    Scrambler s;
    const std::uint8_t want[4] = {0x00, 0x02, 0x00, 0x0C};
    bool ok = true;
    for (std::uint8_t w : want) ok = ok && s.next_byte() == w;
    check("randomizer sequence head", ok);
  }

  {
    const RsCode code = make_rs_code(255, 239);
    Rng rng(12345);
    std::vector<std::uint8_t> data(239);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng() & 0xFF);
    std::vector<std::uint8_t> cw = rs_encode(data, code);
    for (int e = 0; e < 8; ++e) cw[static_cast<std::size_t>(rng() % 255)] ^= static_cast<std::uint8_t>(1 + (rng() % 255));
    const RsDecodeResult dec = rs_decode(cw, code);
    check("outer code corrects 8 symbol errors", !dec.failure && dec.data == data);
  }

  {
    bool ok = true;
    std::ostringstream detail;
    for (const auto& [rate, want] : std::vector<std::pair<Rational, int>>{
             {{1, 2}, 10}, {{2, 3}, 6}, {{3, 4}, 5}, {{5, 6}, 4}}) {
      const PunctureRate& pr = puncture_rate(rate);
      int best = 1 << 30;
      for (unsigned m = 1; m < 4096; ++m) {
        // 30 steps = 12 info bits plus flush zeros, a multiple of every pattern period.
        std::vector<std::uint8_t> msg(30, 0);
        for (int i = 0; i < 12; ++i) msg[static_cast<std::size_t>(i)] = (m >> (11 - i)) & 1u;
        const CcOutput cc = cc_encode(msg);
        int w = 0;
        for (std::uint8_t b : puncture(cc.x, cc.y, pr)) w += b;
        best = std::min(best, w);
      }
      if (best != want) {
        ok = false;
        detail << "rate " << rate << " gave " << best << " want " << want << "; ";
      }
    }
    check("punctured free distances", ok, detail.str());
  }

  {
    bool ok = true;
    for (const auto& [n_cbps, n_cpc] :
         std::vector<std::pair<int, int>>{{192, 1}, {384, 2}, {768, 4}, {1152, 6}}) {
      const InterleaverSpec spec = build_spec(n_cbps, n_cpc);  // self-checks the permutations
      Rng rng(7);
      std::vector<std::uint8_t> v(static_cast<std::size_t>(n_cbps));
      for (auto& b : v) b = static_cast<std::uint8_t>(rng() & 1);
      ok = ok && deinterleave(interleave(v, spec), spec) == v;
    }
    check("interleaver round trip", ok);
  }

  {
    bool ok = true;
    std::ostringstream detail;
    for (const CodingProfile& prof : profile_table()) {
      SimConfig cfg;
      cfg.profile = prof;
      cfg.channel = "sui-3";
      cfg.target_errors = 1;
      cfg.max_bits = 4000;
      const BerPoint p = run_point(cfg, 300.0);
      if (p.bit_errors != 0) {
        ok = false;
        detail << prof.name << " had " << p.bit_errors << " errors; ";
      }
    }
    check("noiseless end-to-end", ok, detail.str());
  }

  {
    SimConfig cfg;
    cfg.profile = profile_by_name("qpsk-1/2");
    cfg.channel = "awgn";
    cfg.target_errors = 50;
    cfg.max_bits = 100000;
    const BerPoint a = run_point(cfg, 3.0);
    const BerPoint b = run_point(cfg, 3.0);
    check("seeded determinism",
          a.bits == b.bits && a.bit_errors == b.bit_errors && a.ber == b.ber);
  }

  std::printf("%s\n", failures == 0 ? "selftest passed" : "selftest FAILED");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Link-level BER simulator for the 256-carrier WirelessMAN-OFDM physical layer"};
  app.require_subcommand(1);

  std::vector<std::string> profile_names;
  for (const CodingProfile& p : profile_table()) profile_names.push_back(p.name);

  SimConfig cfg;
  std::string profile = "bpsk-1/2";
  std::string snr_arg = "0:1:10";
  std::string guard_arg = "1/4";
  std::string channel_file;
  cfg.output_path = "sweep.csv";

  CLI::App* sw = app.add_subcommand("sweep", "Run a BER-vs-SNR sweep and write a CSV");
  sw->add_option("--profile", profile, "Coding profile")
      ->check(CLI::IsMember(profile_names))
      ->capture_default_str();
  sw->add_option("--channel", cfg.channel, "'awgn' or a configured channel name")
      ->capture_default_str();
  sw->add_option("--channel-config", channel_file, "Extra channel definitions (overrides built-ins)");
  sw->add_option("--guard", guard_arg, "Cyclic prefix ratio G")->capture_default_str();
  sw->add_option("--snr", snr_arg, "SNR grid in dB, start:step:stop")->capture_default_str();
  sw->add_option("--max-bits", cfg.max_bits, "Bit budget per SNR point")->capture_default_str();
  sw->add_option("--target-errors", cfg.target_errors, "Stop a point after this many bit errors")
      ->capture_default_str();
  sw->add_option("--seed", cfg.master_seed, "Master seed")->capture_default_str();
  sw->add_option("--out", cfg.output_path, "CSV output path")->capture_default_str();
  sw->add_option("--batch-symbols", cfg.batch_symbols,
                 "OFDM symbols per Monte Carlo batch (0 = automatic)")
      ->capture_default_str();
  sw->add_flag("--uncoded", cfg.uncoded_bpsk, "Uncoded BPSK calibration mode (bypasses FEC)");
  std::string noise_ref_arg = "expected";
  sw->add_option("--noise-ref", noise_ref_arg,
                 "Noise sized against 'expected' (ensemble mean) or 'measured' (per batch) "
                 "received power")
      ->check(CLI::IsMember({"expected", "measured"}))
      ->capture_default_str();
  sw->callback([&] {
    cfg.profile = profile_by_name(profile);
    cfg.guard_ratio = parse_guard(guard_arg);
    parse_snr_range(snr_arg, cfg);
    cfg.noise_reference = noise_ref_arg == "measured" ? NoiseReference::measured_batch
                                                      : NoiseReference::expected_power;
    if (!channel_file.empty()) merge_channel_file(channel_file, cfg.channels);
    const SweepResult res = sweep(cfg);
    print_sweep(res);
    std::printf("wrote %s\n", cfg.output_path.c_str());
  });

  Table5Config tc;
  std::string channels_arg = "sui-1,sui-2,sui-3";
  std::string axis_arg = "time-snr";
  std::string t5_channel_file;
  CLI::App* t5 = app.add_subcommand(
      "table5", "Reproduce the published SNR-at-BER-1e-3 matrix for the named channels");
  t5->add_option("--channels", channels_arg, "Comma-separated channel names")
      ->capture_default_str();
  t5->add_option("--target-errors", tc.target_errors, "Bit errors to collect per SNR point")
      ->capture_default_str();
  t5->add_option("--max-bits", tc.max_bits, "Bit budget per SNR point")->capture_default_str();
  t5->add_option("--seed", tc.master_seed, "Master seed")->capture_default_str();
  t5->add_option("--axis", axis_arg, "Axis the crossings are reported on: ebn0 or time-snr")
      ->check(CLI::IsMember({"ebn0", "time-snr"}))
      ->capture_default_str();
  t5->add_option("--channel-config", t5_channel_file,
                 "Extra channel definitions (overrides built-ins)");
  t5->add_option("--batch-symbols", tc.batch_symbols,
                 "OFDM symbols per independent channel draw")
      ->capture_default_str();
  std::string t5_noise_ref_arg = "expected";
  t5->add_option("--noise-ref", t5_noise_ref_arg,
                 "Noise sized against 'expected' (ensemble mean) or 'measured' (per batch) "
                 "received power")
      ->check(CLI::IsMember({"expected", "measured"}))
      ->capture_default_str();
  t5->callback([&] {
    tc.channels = split_csv(channels_arg);
    tc.axis = axis_arg == "ebn0" ? SnrAxis::ebn0 : SnrAxis::time_snr;
    tc.noise_reference = t5_noise_ref_arg == "measured" ? NoiseReference::measured_batch
                                                        : NoiseReference::expected_power;
    if (!t5_channel_file.empty()) merge_channel_file(t5_channel_file, tc.channel_table);
    const Table5Result res = run_table5(tc);
    std::printf("%s", format_table5(res).c_str());
    std::printf("wall=%.1fs\n", res.wall_seconds);
  });

  CLI::App* st = app.add_subcommand("selftest", "Run the built-in property checks");
  int selftest_rc = 0;
  st->callback([&] { selftest_rc = run_selftest(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return selftest_rc;
}

}  // namespace wman
