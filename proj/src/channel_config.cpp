#include "wman/channel_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wman {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_numbers(const std::string& s, const std::string& key) {
  std::istringstream iss(s);
  std::vector<double> out;
  double v = 0;
  while (iss >> v) out.push_back(v);
  std::string leftover;
  if (iss.clear(), iss >> leftover) {
    throw std::invalid_argument("channel config: bad number in '" + key + "'");
  }
  if (out.empty()) {
    throw std::invalid_argument("channel config: no values for '" + key + "'");
  }
  return out;
}

struct RawSection {
  std::string terrain;
  std::vector<double> delays_us;
  std::vector<double> powers_db;
  std::vector<double> k_factors;
  std::vector<double> doppler_hz;
  bool any = false;
};

SuiChannelSpec finish_section(const std::string& name, const RawSection& raw) {
  if (raw.terrain.size() != 1) {
    throw std::invalid_argument("channel config: [" + name + "] needs a one-letter terrain");
  }
  const std::size_t n = raw.delays_us.size();
  if (raw.powers_db.size() != n || raw.k_factors.size() != n || raw.doppler_hz.size() != n) {
    throw std::invalid_argument("channel config: [" + name + "] tap lists differ in length");
  }
  SuiChannelSpec spec;
  spec.name = name;
  spec.terrain = raw.terrain[0];
  spec.taps.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    spec.taps[i].delay_s = raw.delays_us[i] * 1e-6;
    spec.taps[i].power = std::pow(10.0, raw.powers_db[i] / 10.0);
    spec.taps[i].k_factor = raw.k_factors[i];
    spec.taps[i].doppler_hz = raw.doppler_hz[i];
  }
  validate_channel_spec(spec);
  return spec;
}

}  // namespace

std::map<std::string, SuiChannelSpec> parse_channel_config(const std::string& text) {
  std::map<std::string, SuiChannelSpec> table;
  std::istringstream iss(text);
  std::string line;
  std::string section;
  RawSection raw;
  auto flush = [&] {
    if (!section.empty()) {
      if (!raw.any) {
        throw std::invalid_argument("channel config: [" + section + "] is empty");
      }
      table[section] = finish_section(section, raw);
    }
    raw = RawSection{};
  };
  int lineno = 0;
  while (std::getline(iss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("channel config: unterminated section header at line " +
                                    std::to_string(lineno));
      }
      flush();
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw std::invalid_argument("channel config: empty section name at line " +
                                    std::to_string(lineno));
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos || section.empty()) {
      throw std::invalid_argument("channel config: expected 'key = values' at line " +
                                  std::to_string(lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    raw.any = true;
    if (key == "terrain") {
      raw.terrain = val;
    } else if (key == "tap_delays_us") {
      raw.delays_us = parse_numbers(val, key);
    } else if (key == "tap_powers_db") {
      raw.powers_db = parse_numbers(val, key);
    } else if (key == "k_factors") {
      raw.k_factors = parse_numbers(val, key);
    } else if (key == "doppler_hz") {
      raw.doppler_hz = parse_numbers(val, key);
    } else {
      throw std::invalid_argument("channel config: unknown key '" + key + "' at line " +
                                  std::to_string(lineno));
    }
  }
  flush();
  if (table.empty()) {
    throw std::invalid_argument("channel config: no channel sections found");
  }
  return table;
}

std::map<std::string, SuiChannelSpec> load_channel_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open channel config '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_config(buf.str());
}

std::string builtin_channel_config_text() {
  return R"(# Stanford University Interim channel models, omnidirectional antennas,
# 90% cell-coverage K factors. Three taps each; terrain C is the flattest
# (low delay spread), terrain A the most dispersive.

[sui-1]
terrain       = C
tap_delays_us = 0 0.4 0.9
tap_powers_db = 0 -15 -20
k_factors     = 4 0 0
doppler_hz    = 0.4 0.3 0.5

[sui-2]
terrain       = C
tap_delays_us = 0 0.4 1.1
tap_powers_db = 0 -12 -15
k_factors     = 2 0 0
doppler_hz    = 0.2 0.15 0.25

[sui-3]
terrain       = B
tap_delays_us = 0 0.4 0.9
tap_powers_db = 0 -5 -10
k_factors     = 1 0 0
doppler_hz    = 0.4 0.3 0.5

[sui-4]
terrain       = B
tap_delays_us = 0 1.5 4
tap_powers_db = 0 -4 -8
k_factors     = 0 0 0
doppler_hz    = 0.2 0.15 0.25

[sui-5]
terrain       = A
tap_delays_us = 0 4 10
tap_powers_db = 0 -5 -10
k_factors     = 0 0 0
doppler_hz    = 2 1.5 2.5

[sui-6]
terrain       = A
tap_delays_us = 0 14 20
tap_powers_db = 0 -10 -14
k_factors     = 0 0 0
doppler_hz    = 0.4 0.3 0.5
)";
}

const std::map<std::string, SuiChannelSpec>& builtin_channel_table() {
  static const std::map<std::string, SuiChannelSpec> table =
      parse_channel_config(builtin_channel_config_text());
  return table;
}

}  // namespace wman
