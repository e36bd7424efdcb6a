// JSON run configuration: channel, receiver, band, grid and analysis knobs.
//
// SI units throughout. Frequencies may be given in Hz (`*_hz`) or rad/s
// (`*_rad_s`); they are held in rad/s internally and serialized that way so
// that parse(serialize(c)) == c bit for bit.

#ifndef RESCAP_CONFIG_HPP
#define RESCAP_CONFIG_HPP

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rescap/channels.hpp"
#include "rescap/grid.hpp"
#include "rescap/linkmodel.hpp"

namespace rescap {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ReceiverSettings {
    std::vector<double> load_resistances_ohm;
    double amp_gain = 100.0;
    double amp_noise_density = 3.29e-18;
    double temperature_k = 300.0;
    double boltzmann = kBoltzmannRounded;

    ReceiverParams at(double load_resistance_ohm) const;

    bool operator==(const ReceiverSettings&) const = default;
};

struct AnalysisSettings {
    double transmit_power_w = 2.68e-14;
    std::vector<double> mu_list;  // empty: generated from the channel
    double tolerance = 1e-6;
    std::size_t sweep_points = 50;

    bool operator==(const AnalysisSettings&) const = default;
};

struct RunConfig {
    std::string description;
    ChannelModel channel;
    ReceiverSettings receiver;
    Band band;
    GridSpec grid;
    AnalysisSettings analysis;

    bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError naming the offending field (or line/column for JSON
/// syntax errors). Unknown keys are rejected; omitted sections fall back to
/// the defaults of default_lc_config(), except `channel`, which is required.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

/// Re-checks every invariant; throws ConfigError.
void validate(const RunConfig& config);

/// 3 GHz carrier, 10 MHz band, T = 300 K, G = 100, Q_A = 3.29e-18 V^2/Hz,
/// R_L in {5e4, 5e5, 5e6}, P_T = 2.68e-14 W. L = 4.7 nH with C chosen so the
/// resonance sits exactly on the carrier (C = 5.995e-13 F).
RunConfig default_lc_config();

/// Same receiver and band; shorted 75 m line (c0 = 3e8 m/s) tapped at L/7
/// and 8L/13. z0 = 50 ohm is a free choice.
RunConfig default_tline_config();

}  // namespace rescap

#endif  // RESCAP_CONFIG_HPP
