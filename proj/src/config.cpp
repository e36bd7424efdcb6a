#include "rescap/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rescap {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
    }
}

double number(const json& obj, const std::string& where, const std::string& key) {
    const std::string field = where + "." + key;
    if (!obj.contains(key)) fail(field, "missing");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "must be finite");
    return d;
}

double number_or(const json& obj, const std::string& where, const std::string& key, double fallback) {
    return obj.contains(key) ? number(obj, where, key) : fallback;
}

std::vector<double> number_list(const json& obj, const std::string& where, const std::string& key) {
    const std::string field = where + "." + key;
    const json& v = obj.at(key);
    if (!v.is_array()) fail(field, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) fail(field + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

std::size_t count(const json& obj, const std::string& where, const std::string& key) {
    const std::string field = where + "." + key;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(field, "expected a non-negative integer");
    return v.get<std::size_t>();
}

// Exactly one of `hz_key` / `rad_key`, returned in rad/s.
double frequency(const json& obj, const std::string& where, const std::string& hz_key, const std::string& rad_key) {
    const bool has_hz = obj.contains(hz_key);
    const bool has_rad = obj.contains(rad_key);
    if (has_hz == has_rad) fail(where + "." + hz_key, "give exactly one of '" + hz_key + "' or '" + rad_key + "'");
    return has_hz ? kTwoPi * number(obj, where, hz_key) : number(obj, where, rad_key);
}

ChannelModel parse_channel(const json& j) {
    const std::string where = "channel";
    if (!j.is_object()) fail(where, "expected an object");
    if (!j.contains("type") || !j.at("type").is_string()) fail(where + ".type", "missing or not a string");
    const std::string type = j.at("type").get<std::string>();
    if (type == "lc_parallel") {
        reject_unknown(j, where, {"type", "inductance_h", "capacitance_f", "resonance_hz", "resonance_rad_s"});
        LcParallel lc;
        lc.inductance_h = number(j, where, "inductance_h");
        const int given = j.contains("capacitance_f") + j.contains("resonance_hz") + j.contains("resonance_rad_s");
        if (given != 1) {
            fail(where + ".capacitance_f", "give exactly one of capacitance_f, resonance_hz, resonance_rad_s");
        }
        if (j.contains("capacitance_f")) {
            lc.capacitance_f = number(j, where, "capacitance_f");
        } else {
            const double w0 = frequency(j, where, "resonance_hz", "resonance_rad_s");
            if (!(w0 > 0.0)) fail(where + ".resonance_hz", "must be > 0");
            lc.capacitance_f = 1.0 / (w0 * w0 * lc.inductance_h);
        }
        return lc;
    }
    if (type == "tline_open") {
        reject_unknown(j, where, {"type", "char_impedance_ohm", "wave_speed_m_s", "length_m"});
        return TLineOpenEnds{number(j, where, "char_impedance_ohm"), number(j, where, "wave_speed_m_s"),
                             number(j, where, "length_m")};
    }
    if (type == "tline_shorted") {
        reject_unknown(j, where,
                       {"type", "char_impedance_ohm", "wave_speed_m_s", "length_m", "x_transmit_m", "x_receive_m"});
        return TLineShortedTapped{number(j, where, "char_impedance_ohm"), number(j, where, "wave_speed_m_s"),
                                  number(j, where, "length_m"), number(j, where, "x_transmit_m"),
                                  number(j, where, "x_receive_m")};
    }
    fail(where + ".type", "expected one of lc_parallel, tline_open, tline_shorted; got '" + type + "'");
}

json channel_to_json(const ChannelModel& model) {
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LcParallel>) {
                return {{"type", "lc_parallel"}, {"inductance_h", m.inductance_h}, {"capacitance_f", m.capacitance_f}};
            } else if constexpr (std::is_same_v<T, TLineOpenEnds>) {
                return {{"type", "tline_open"},
                        {"char_impedance_ohm", m.char_impedance_ohm},
                        {"wave_speed_m_s", m.wave_speed_m_s},
                        {"length_m", m.length_m}};
            } else {
                return {{"type", "tline_shorted"},
                        {"char_impedance_ohm", m.char_impedance_ohm},
                        {"wave_speed_m_s", m.wave_speed_m_s},
                        {"length_m", m.length_m},
                        {"x_transmit_m", m.x_transmit_m},
                        {"x_receive_m", m.x_receive_m}};
            }
        },
        model);
}

template <class F>
void rethrow_as_config_error(const std::string& field, F&& check) {
    try {
        check();
    } catch (const std::invalid_argument& e) {
        fail(field, e.what());
    }
}

}  // namespace

ReceiverParams ReceiverSettings::at(double load_resistance_ohm) const {
    return ReceiverParams{load_resistance_ohm, amp_gain, amp_noise_density, temperature_k, boltzmann};
}

void validate(const RunConfig& config) {
    rethrow_as_config_error("channel", [&] { validate(config.channel); });
    rethrow_as_config_error("band", [&] { validate(config.band); });
    const ReceiverSettings& rx = config.receiver;
    if (rx.load_resistances_ohm.empty()) fail("receiver.load_resistances_ohm", "must list at least one value");
    for (double r_l : rx.load_resistances_ohm) {
        rethrow_as_config_error("receiver", [&] { validate(rx.at(r_l)); });
    }
    if (rx.amp_noise_density == 0.0 && rx.temperature_k == 0.0) {
        fail("receiver", "amplifier noise and temperature cannot both be zero");
    }
    if (config.grid.base_points < 16) fail("grid.base_points", "must be >= 16");
    if (config.grid.refine_levels < 0) fail("grid.refine_levels", "must be >= 0");
    const AnalysisSettings& an = config.analysis;
    if (!(an.transmit_power_w > 0.0) || !std::isfinite(an.transmit_power_w)) {
        fail("analysis.transmit_power_w", "must be finite and > 0");
    }
    for (double mu : an.mu_list) {
        if (!(mu > 0.0) || !std::isfinite(mu)) fail("analysis.mu_list", "entries must be finite and > 0");
    }
    if (!(an.tolerance > 0.0 && an.tolerance < 1.0)) fail("analysis.tolerance", "must lie in (0, 1)");
    if (an.sweep_points < 2) fail("analysis.sweep_points", "must be >= 2");
}

RunConfig parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, "", {"description", "channel", "receiver", "band", "grid", "analysis"});

    RunConfig cfg = default_lc_config();
    cfg.description.clear();
    if (root.contains("description")) {
        if (!root.at("description").is_string()) fail("description", "expected a string");
        cfg.description = root.at("description").get<std::string>();
    }
    if (!root.contains("channel")) fail("channel", "missing");
    cfg.channel = parse_channel(root.at("channel"));

    if (root.contains("receiver")) {
        const json& j = root.at("receiver");
        reject_unknown(j, "receiver",
                       {"load_resistances_ohm", "amp_gain", "amp_noise_density_v2_per_hz", "temperature_k",
                        "boltzmann_j_per_k"});
        ReceiverSettings& rx = cfg.receiver;
        if (j.contains("load_resistances_ohm")) {
            rx.load_resistances_ohm = number_list(j, "receiver", "load_resistances_ohm");
        }
        rx.amp_gain = number_or(j, "receiver", "amp_gain", rx.amp_gain);
        rx.temperature_k = number_or(j, "receiver", "temperature_k", rx.temperature_k);
        rx.boltzmann = number_or(j, "receiver", "boltzmann_j_per_k", rx.boltzmann);
        rx.amp_noise_density = number_or(j, "receiver", "amp_noise_density_v2_per_hz", rx.amp_noise_density);
    }
    if (root.contains("band")) {
        const json& j = root.at("band");
        reject_unknown(j, "band", {"carrier_hz", "carrier_rad_s", "bandwidth_hz"});
        cfg.band.carrier_rad_s = frequency(j, "band", "carrier_hz", "carrier_rad_s");
        cfg.band.bandwidth_hz = number(j, "band", "bandwidth_hz");
    }
    if (root.contains("grid")) {
        const json& j = root.at("grid");
        reject_unknown(j, "grid", {"base_points", "refine_levels"});
        if (j.contains("base_points")) cfg.grid.base_points = count(j, "grid", "base_points");
        if (j.contains("refine_levels")) cfg.grid.refine_levels = static_cast<int>(count(j, "grid", "refine_levels"));
    }
    if (root.contains("analysis")) {
        const json& j = root.at("analysis");
        reject_unknown(j, "analysis", {"transmit_power_w", "mu_list", "tolerance", "sweep_points"});
        AnalysisSettings& an = cfg.analysis;
        an.transmit_power_w = number_or(j, "analysis", "transmit_power_w", an.transmit_power_w);
        if (j.contains("mu_list")) an.mu_list = number_list(j, "analysis", "mu_list");
        an.tolerance = number_or(j, "analysis", "tolerance", an.tolerance);
        if (j.contains("sweep_points")) an.sweep_points = count(j, "analysis", "sweep_points");
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_config(text.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string serialize_config(const RunConfig& config) {
    json root;
    if (!config.description.empty()) root["description"] = config.description;
    root["channel"] = channel_to_json(config.channel);
    const ReceiverSettings& rx = config.receiver;
    root["receiver"] = {{"load_resistances_ohm", rx.load_resistances_ohm},
                        {"amp_gain", rx.amp_gain},
                        {"amp_noise_density_v2_per_hz", rx.amp_noise_density},
                        {"temperature_k", rx.temperature_k},
                        {"boltzmann_j_per_k", rx.boltzmann}};
    root["band"] = {{"carrier_rad_s", config.band.carrier_rad_s}, {"bandwidth_hz", config.band.bandwidth_hz}};
    root["grid"] = {{"base_points", config.grid.base_points}, {"refine_levels", config.grid.refine_levels}};
    root["analysis"] = {{"transmit_power_w", config.analysis.transmit_power_w},
                        {"mu_list", config.analysis.mu_list},
                        {"tolerance", config.analysis.tolerance},
                        {"sweep_points", config.analysis.sweep_points}};
    return root.dump(2) + "\n";
}

RunConfig default_lc_config() {
    RunConfig cfg;
    cfg.description = "Parallel LC two-port, resonance on the 3 GHz carrier";
    cfg.band = Band{kTwoPi * 3e9, 1e7};
    constexpr double inductance = 4.7e-9;
    cfg.channel = LcParallel{inductance, 1.0 / (cfg.band.carrier_rad_s * cfg.band.carrier_rad_s * inductance)};
    cfg.receiver.load_resistances_ohm = {5e4, 5e5, 5e6};
    return cfg;
}

RunConfig default_tline_config() {
    RunConfig cfg = default_lc_config();
    cfg.description = "Shorted 75 m line tapped at L/7 and 8L/13; z0 = 50 ohm is not a measured value";
    constexpr double length = 75.0;
    cfg.channel = TLineShortedTapped{50.0, 3e8, length, length / 7.0, 8.0 * length / 13.0};
    return cfg;
}

}  // namespace rescap
