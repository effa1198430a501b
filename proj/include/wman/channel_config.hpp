#pragma once

#include "wman/channel.hpp"

#include <map>
#include <string>

namespace wman {

// Parses the tap-table format used by channels/sui.cfg: "[name]" section
// headers followed by key/value lines (terrain, tap_delays_us, tap_powers_db,
// k_factors, doppler_hz), '#' starting a comment. Every parsed channel is
// validated before it is returned.
std::map<std::string, SuiChannelSpec> parse_channel_config(const std::string& text);

std::map<std::string, SuiChannelSpec> load_channel_config(const std::string& path);

// The six SUI profiles (omnidirectional antennas, 90% K factors) compiled in
// so the simulator runs without an external file.
const std::map<std::string, SuiChannelSpec>& builtin_channel_table();

// Same data in config-file form; channels/sui.cfg mirrors this text.
std::string builtin_channel_config_text();

}  // namespace wman
