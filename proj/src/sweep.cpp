#include "wman/sweep.hpp"

#include "wman/channel.hpp"
#include "wman/link.hpp"
#include "wman/rng.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace wman {

namespace {

constexpr double kMeanTxPower = 200.0 / 256.0;  // unit-energy carriers over the transform size

struct ResolvedChannel {
  bool identity = true;
  SuiChannelSpec spec;
  std::vector<int> delays_samples;
  double total_power = 1.0;
};

ResolvedChannel resolve_channel(const SimConfig& cfg, double sampling_freq_hz) {
  ResolvedChannel rc;
  if (cfg.channel == "awgn") return rc;
  const auto it = cfg.channels.find(cfg.channel);
  if (it == cfg.channels.end()) {
    throw std::invalid_argument("unknown channel '" + cfg.channel + "'");
  }
  rc.identity = false;
  rc.spec = it->second;
  validate_channel_spec(rc.spec);
  rc.total_power = 0.0;
  for (const SuiTapSpec& t : rc.spec.taps) {
    rc.delays_samples.push_back(static_cast<int>(std::lround(t.delay_s * sampling_freq_hz)));
    rc.total_power += t.power;
  }
  return rc;
}

int payload_bits_per_symbol(const SimConfig& cfg) {
  return cfg.uncoded_bpsk ? kDataCarriers : cfg.profile.payload_bits();
}

int batch_symbol_count(const SimConfig& cfg) {
  if (cfg.batch_symbols > 0) return cfg.batch_symbols;
  const int per_symbol = payload_bits_per_symbol(cfg);
  return std::max(1, (4096 + per_symbol - 1) / per_symbol);
}

double ebn0_offset_db(const SimConfig& cfg) {
  // Per-bit energy over N0 equals the time-sample SNR scaled by how the
  // occupied power spreads over data carriers and then over payload bits.
  const double b = payload_bits_per_symbol(cfg);
  return 10.0 * std::log10((kDataCarriers / b) * (static_cast<double>(kNfft) / 200.0));
}

struct PointDetail {
  BerPoint point;
  std::uint64_t rs_failures = 0;
  std::uint64_t zeroed_bins = 0;
};

PointDetail run_point_detail(const SimConfig& cfg, double snr_db) {
  const PrimitiveParams prim{1.75e6, 200, Rational{8, 7}, cfg.guard_ratio};
  const DerivedParams dp = derive_params(prim);
  const int cp = cp_samples(cfg.guard_ratio, kNfft);
  const int sps = kNfft + cp;
  const ResolvedChannel rc = resolve_channel(cfg, dp.sampling_freq_hz);

  std::optional<LinkChain> coded;
  std::optional<UncodedBpskChain> uncoded;
  if (cfg.uncoded_bpsk) {
    uncoded.emplace(cp);
  } else {
    coded.emplace(cfg.profile, cp);
  }
  const int bits_per_sym = payload_bits_per_symbol(cfg);
  const int n_sym = batch_symbol_count(cfg);
  const std::size_t n_taps = rc.spec.taps.size();

  std::vector<int> data_idx;
  data_idx.reserve(kDataCarriers);
  for (int b : data_bins()) data_idx.push_back((b + kNfft) % kNfft);

  const std::uint64_t point_seed = derive_seed(cfg.master_seed, std::bit_cast<std::uint64_t>(snr_db));
  const double snr_lin = std::pow(10.0, snr_db / 10.0);

  PointDetail out;
  out.point.snr_db = snr_db;
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
  StopReason reason = StopReason::max_bits_reached;

  std::vector<std::vector<std::uint8_t>> sent(static_cast<std::size_t>(n_sym));
  std::vector<std::vector<cplx>> gains(n_taps);
  std::vector<double> noise_vars(kDataCarriers);
  std::vector<cplx> gains_at(n_taps);

  for (std::uint64_t batch = 0;; ++batch) {
    Rng payload_rng(make_rng(derive_seed(point_seed, batch, 0)));
    const std::uint64_t noise_seed = derive_seed(point_seed, batch, 1);

    std::vector<cplx> tx;
    tx.reserve(static_cast<std::size_t>(n_sym) * static_cast<std::size_t>(sps));
    for (int s = 0; s < n_sym; ++s) {
      std::vector<std::uint8_t>& payload = sent[static_cast<std::size_t>(s)];
      TimeSymbol ts;
      if (coded) {
        payload.resize(static_cast<std::size_t>(cfg.profile.payload_bytes()));
        for (std::uint8_t& b : payload) b = static_cast<std::uint8_t>(payload_rng() & 0xFF);
        ts = coded->encode_symbol(payload);
      } else {
        payload.resize(kDataCarriers);
        for (std::uint8_t& b : payload) b = static_cast<std::uint8_t>(payload_rng() & 1);
        ts = uncoded->encode_symbol(payload);
      }
      tx.insert(tx.end(), ts.samples.begin(), ts.samples.end());
    }

    std::vector<cplx> faded;
    if (rc.identity) {
      faded = std::move(tx);
    } else {
      for (std::size_t t = 0; t < n_taps; ++t) {
        const SuiTapSpec& tap = rc.spec.taps[t];
        const int n_coeffs =
            static_cast<int>(std::ceil(n_sym * dp.symbol_time_s * 2.0 * tap.doppler_hz)) + 2;
        const TapProcess tp =
            generate_tap(tap, n_coeffs, derive_seed(point_seed, batch, 2, t));
        gains[t] = interpolate_to_symbols(tp, dp.symbol_time_s, n_sym);
      }
      faded = apply_channel(tx, gains, rc.delays_samples, sps, cp).samples;
    }

    double ref = 0.0;
    if (cfg.noise_reference == NoiseReference::measured_batch) {
      for (const cplx& v : faded) ref += std::norm(v);
      ref /= static_cast<double>(faded.size());
    } else {
      ref = kMeanTxPower * rc.total_power;
    }
    const double n0 = ref / snr_lin;
    const std::vector<cplx> rx = add_awgn(faded, snr_db, ref, noise_seed);

    for (int s = 0; s < n_sym; ++s) {
      TimeSymbol ts;
      ts.cp_len = cp;
      const auto base = rx.begin() + static_cast<std::ptrdiff_t>(s) * sps;
      ts.samples.assign(base, base + sps);
      FrequencyFrame freq = ofdm_demodulate(ts);

      FrequencyFrame eq;
      if (rc.identity) {
        eq = std::move(freq);
        std::fill(noise_vars.begin(), noise_vars.end(), n0);
      } else {
        for (std::size_t t = 0; t < n_taps; ++t) gains_at[t] = gains[t][static_cast<std::size_t>(s)];
        const std::vector<cplx> h = channel_freq_response(gains_at, rc.delays_samples, kNfft);
        EqualizedFrame ef = ideal_equalize(freq, h);
        out.zeroed_bins += static_cast<std::uint64_t>(ef.zeroed_bins);
        eq = std::move(ef.frame);
        for (int i = 0; i < kDataCarriers; ++i) {
          const double mag2 = std::norm(h[static_cast<std::size_t>(data_idx[static_cast<std::size_t>(i)])]);
          noise_vars[static_cast<std::size_t>(i)] =
              mag2 < 1e-24 ? std::numeric_limits<double>::infinity() : n0 / mag2;
        }
      }

      const std::vector<std::uint8_t>& ref_payload = sent[static_cast<std::size_t>(s)];
      if (coded) {
        const LinkChain::DecodeResult dr = coded->decode_symbol(eq, noise_vars);
        if (dr.rs_failure) ++out.rs_failures;
        for (std::size_t j = 0; j < ref_payload.size(); ++j) {
          errors += static_cast<std::uint64_t>(
              std::popcount(static_cast<unsigned>(ref_payload[j] ^ dr.payload[j])));
        }
      } else {
        const std::vector<std::uint8_t> got = uncoded->decode_symbol(eq);
        for (std::size_t j = 0; j < ref_payload.size(); ++j) {
          errors += (ref_payload[j] != got[j]) ? 1u : 0u;
        }
      }
      bits += static_cast<std::uint64_t>(bits_per_sym);
    }

    if (errors >= cfg.target_errors) {
      reason = StopReason::target_errors_reached;
      break;
    }
    if (bits >= cfg.max_bits) {
      reason = StopReason::max_bits_reached;
      break;
    }
  }

  out.point.bits = bits;
  out.point.bit_errors = errors;
  out.point.ber = bits ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
  out.point.stop_reason = reason;
  return out;
}

}  // namespace

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::target_errors_reached:
      return "target_errors_reached";
    case StopReason::max_bits_reached:
      return "max_bits_reached";
  }
  return "unknown";
}

void validate_config(const SimConfig& cfg) {
  if (!(cfg.snr_start_db <= cfg.snr_stop_db)) {
    throw std::invalid_argument("snr_start_db must not exceed snr_stop_db");
  }
  if (!(cfg.snr_step_db > 0)) {
    throw std::invalid_argument("snr_step_db must be positive");
  }
  if (cfg.target_errors < 1) {
    throw std::invalid_argument("target_errors must be at least 1");
  }
  if (cfg.max_bits < 1) {
    throw std::invalid_argument("max_bits must be at least 1");
  }
  if (!valid_guard_ratio(cfg.guard_ratio)) {
    throw std::invalid_argument("guard ratio must be one of 1/4, 1/8, 1/16, 1/32");
  }
  if (!cfg.uncoded_bpsk) {
    const CodingProfile& p = cfg.profile;
    if (p.rs_n < p.rs_k || p.rs_k < 2 || p.n_cbps <= 0) {
      throw std::invalid_argument("coding profile is incomplete");
    }
    if (Rational(p.n_cbps) * p.cc_rate != Rational(p.rs_n * 8)) {
      throw std::invalid_argument("profile coded-bit budget is inconsistent");
    }
  }
  if (cfg.channel != "awgn" && cfg.channels.find(cfg.channel) == cfg.channels.end()) {
    throw std::invalid_argument("unknown channel '" + cfg.channel + "'");
  }
}

std::vector<double> snr_grid(const SimConfig& cfg) {
  const int n =
      static_cast<int>(std::floor((cfg.snr_stop_db - cfg.snr_start_db) / cfg.snr_step_db + 1e-9)) +
      1;
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = cfg.snr_start_db + i * cfg.snr_step_db;
  return grid;
}

BerPoint run_point(const SimConfig& cfg, double snr_db) {
  validate_config(cfg);
  return run_point_detail(cfg, snr_db).point;
}

SweepResult sweep(const SimConfig& cfg) {
  validate_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  SweepResult res;
  res.config = cfg;
  res.ebn0_offset_db = ebn0_offset_db(cfg);

  const PrimitiveParams prim{1.75e6, 200, Rational{8, 7}, cfg.guard_ratio};
  const DerivedParams dp = derive_params(prim);
  const int cp = cp_samples(cfg.guard_ratio, kNfft);
  const ResolvedChannel rc = resolve_channel(cfg, dp.sampling_freq_hz);
  if (!rc.identity) {
    std::ostringstream q;
    q << "channel '" << cfg.channel << "': tap delays quantized to samples [";
    for (std::size_t t = 0; t < rc.delays_samples.size(); ++t) {
      q << (t ? ", " : "") << rc.delays_samples[t];
    }
    q << "]";
    res.warnings.push_back(q.str());
    for (std::size_t t = 0; t < rc.delays_samples.size(); ++t) {
      if (rc.delays_samples[t] > cp) {
        std::ostringstream w;
        w << "channel '" << cfg.channel << "': tap " << t << " delay "
          << rc.delays_samples[t] << " samples exceeds the cyclic prefix (" << cp << ")";
        res.warnings.push_back(w.str());
      }
    }
  }

  for (double snr : snr_grid(cfg)) {
    PointDetail pd = run_point_detail(cfg, snr);
    res.points.push_back(pd.point);
    res.rs_failures += pd.rs_failures;
    res.zeroed_bins += pd.zeroed_bins;
  }
  std::sort(res.points.begin(), res.points.end(),
            [](const BerPoint& a, const BerPoint& b) { return a.snr_db < b.snr_db; });

  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!cfg.output_path.empty()) emit_csv(res, cfg.output_path);
  return res;
}

double snr_at_ber(const SweepResult& result, double target_ber) {
  if (!(target_ber > 0.0)) {
    throw std::invalid_argument("snr_at_ber: target must be positive");
  }
  const std::vector<BerPoint>& p = result.points;
  for (const BerPoint& pt : p) {
    if (pt.ber == target_ber) return pt.snr_db;
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const BerPoint& hi = p[i];      // higher BER, lower SNR
    const BerPoint& lo = p[i + 1];  // lower BER, higher SNR
    if (hi.ber > target_ber && lo.ber < target_ber && lo.ber > 0.0) {
      const double la = std::log10(hi.ber);
      const double lb = std::log10(lo.ber);
      const double lt = std::log10(target_ber);
      return hi.snr_db + (lo.snr_db - hi.snr_db) * (lt - la) / (lb - la);
    }
  }
  throw std::runtime_error("snr_at_ber: no adjacent grid points bracket the target BER");
}

std::string to_csv(const SweepResult& result) {
  if (result.points.empty()) {
    throw std::invalid_argument("refusing to serialize an empty sweep");
  }
  std::string out = "snr_db,bits,bit_errors,ber,stop_reason\n";
  char buf[128];
  for (const BerPoint& p : result.points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%llu,%llu,%.17g,%s\n", p.snr_db,
                  static_cast<unsigned long long>(p.bits),
                  static_cast<unsigned long long>(p.bit_errors), p.ber, to_string(p.stop_reason));
    out += buf;
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::string& path) {
  const std::string body = to_csv(result);  // throws before the file is touched
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  f << body;
  f.flush();
  if (!f) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

const std::map<std::string, std::array<double, 7>>& reference_snr_table() {
  static const std::map<std::string, std::array<double, 7>> table = {
      {"sui-1", {4.1, 6.4, 10.0, 12.4, 15.5, 19.3, 20.9}},
      {"sui-2", {7.4, 10.4, 14.1, 16.20, 19.5, 23.2, 25.5}},
      {"sui-3", {12.7, 17.1, 22.7, 22.7, 28.2, 30.0, 32.6}},
  };
  return table;
}

namespace {

Table5Cell run_table5_cell(const Table5Config& tc, const std::string& channel,
                           const CodingProfile& prof, std::uint64_t cell_seed, double ref_db) {
  SimConfig cfg;
  cfg.profile = prof;
  cfg.channel = channel;
  cfg.channels = tc.channel_table;
  cfg.target_errors = tc.target_errors;
  cfg.max_bits = tc.max_bits;
  cfg.master_seed = cell_seed;
  cfg.noise_reference = tc.noise_reference;
  cfg.batch_symbols = tc.batch_symbols;

  const double offset =
      10.0 * std::log10((static_cast<double>(kDataCarriers) / prof.payload_bits()) *
                        (static_cast<double>(kNfft) / 200.0));
  const double axis_shift = tc.axis == SnrAxis::ebn0 ? offset : 0.0;
  const double center = (std::isnan(ref_db) ? 15.0 : ref_db) - axis_shift;

  Table5Cell cell;
  cell.channel = channel;
  cell.profile = prof.name;
  cell.reference_db = ref_db;

  auto eval = [&](double snr) {
    BerPoint p = run_point(cfg, snr);
    const auto pos = std::lower_bound(
        cell.points.begin(), cell.points.end(), p,
        [](const BerPoint& a, const BerPoint& b) { return a.snr_db < b.snr_db; });
    cell.points.insert(pos, p);
    return p;
  };

  // Walk outward from the published value until the target BER is bracketed,
  // then bisect. lo always carries BER above the target, hi at or below it.
  const double limit = 24.0;
  double lo = center, hi = center;
  BerPoint lo_point = eval(center), hi_point = lo_point;
  bool have_lo = lo_point.ber > tc.target_ber;
  bool have_hi = hi_point.ber <= tc.target_ber;
  while (!have_hi) {
    hi += 2.0;
    if (hi > center + limit) {
      throw std::runtime_error("table5: " + channel + "/" + prof.name +
                               " never reached the target BER");
    }
    const BerPoint p = eval(hi);
    if (p.ber <= tc.target_ber) {
      hi_point = p;
      have_hi = true;
    } else {
      lo = hi;
      lo_point = p;
      have_lo = true;
    }
  }
  while (!have_lo) {
    lo -= 2.0;
    if (lo < center - limit) {
      throw std::runtime_error("table5: " + channel + "/" + prof.name +
                               " never rose above the target BER");
    }
    const BerPoint p = eval(lo);
    if (p.ber > tc.target_ber) {
      lo_point = p;
      have_lo = true;
    } else {
      hi = lo;
      hi_point = p;
    }
  }
  while (hi - lo > 0.25) {
    const double mid = 0.5 * (lo + hi);
    const BerPoint p = eval(mid);
    if (p.ber > tc.target_ber) {
      lo = mid;
      lo_point = p;
    } else {
      hi = mid;
      hi_point = p;
    }
  }

  if (hi_point.ber > 0.0) {
    const double la = std::log10(lo_point.ber);
    const double lb = std::log10(hi_point.ber);
    const double t = la == lb ? 0.5 : (la - std::log10(tc.target_ber)) / (la - lb);
    cell.snr_db = lo + (hi - lo) * t + axis_shift;
  } else {
    cell.snr_db = 0.5 * (lo + hi) + axis_shift;
  }
  return cell;
}

}  // namespace

Table5Result run_table5(const Table5Config& tc) {
  const auto t0 = std::chrono::steady_clock::now();
  Table5Result res;
  res.config = tc;
  for (const CodingProfile& p : profile_table()) res.profiles.push_back(p.name);

  const auto& refs = reference_snr_table();
  for (std::size_t ci = 0; ci < tc.channels.size(); ++ci) {
    const std::string& channel = tc.channels[ci];
    std::vector<Table5Cell> row;
    for (std::size_t pi = 0; pi < profile_table().size(); ++pi) {
      const auto rit = refs.find(channel);
      const double ref = rit != refs.end() ? rit->second[pi]
                                           : std::numeric_limits<double>::quiet_NaN();
      const std::uint64_t cell_seed = derive_seed(tc.master_seed, ci * 16 + pi + 1);
      row.push_back(run_table5_cell(tc, channel, profile_table()[pi], cell_seed, ref));
    }
    res.rows.push_back(std::move(row));
  }
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::string format_table5(const Table5Result& result) {
  std::ostringstream out;
  out << "SNR (dB) at BER 1e-3, axis: "
      << (result.config.axis == SnrAxis::ebn0 ? "per-bit Eb/N0" : "measured time-sample SNR")
      << "\n";
  char buf[64];
  out << std::left;
  auto header = [&] {
    out << "            ";
    for (const std::string& p : result.profiles) {
      std::snprintf(buf, sizeof(buf), "%10s", p.c_str());
      out << buf;
    }
    out << "\n";
  };
  header();
  for (const auto& row : result.rows) {
    std::snprintf(buf, sizeof(buf), "%-6s  sim ", row.front().channel.c_str());
    out << buf;
    for (const Table5Cell& c : row) {
      std::snprintf(buf, sizeof(buf), "%10.2f", c.snr_db);
      out << buf;
    }
    out << "\n";
    const bool have_ref = !std::isnan(row.front().reference_db);
    if (have_ref) {
      std::snprintf(buf, sizeof(buf), "%-6s  ref ", "");
      out << buf;
      for (const Table5Cell& c : row) {
        std::snprintf(buf, sizeof(buf), "%10.2f", c.reference_db);
        out << buf;
      }
      out << "\n";
      std::snprintf(buf, sizeof(buf), "%-6s  diff", "");
      out << buf;
      for (const Table5Cell& c : row) {
        std::snprintf(buf, sizeof(buf), "%+10.2f", c.snr_db - c.reference_db);
        out << buf;
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace wman
