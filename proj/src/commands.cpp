#include "rescap/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace rescap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_double(double value, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, value);
    return buf;
}

FrequencyGrid grid_for(const RunConfig& config) {
    return build_grid(config.band, config.channel, config.grid);
}

double to_ghz(double omega) { return omega / kTwoPi / 1e9; }

std::vector<std::filesystem::path> per_load(const RunConfig& config, const std::filesystem::path& out,
                                            const std::function<CsvTable(double)>& table) {
    std::vector<std::filesystem::path> written;
    for (double r_l : config.receiver.load_resistances_ohm) {
        const auto path = per_load_path(out, r_l);
        write_file_atomic(path, to_csv(table(r_l)));
        written.push_back(path);
    }
    return written;
}

}  // namespace

std::string to_csv(const CsvTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!std::isfinite(row[i])) {
                throw std::domain_error("refusing to write non-finite value in column '" +
                                        (i < table.columns.size() ? table.columns[i] : std::to_string(i)) + "'");
            }
            if (i) out += ',';
            out += format_double(row[i], "%.17g");
        }
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
        file << content;
        file.flush();
        if (!file) throw std::runtime_error("write failed for '" + path.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place at '" + path.string() + "'");
    }
}

std::filesystem::path per_load_path(const std::filesystem::path& out, double load_resistance_ohm,
                                    const std::string& extension) {
    std::string name = out.stem().string() + "_rl" + format_double(load_resistance_ohm, "%.6g");
    name += extension.empty() ? out.extension().string() : extension;
    return out.parent_path() / name;
}

CsvTable transfer_table(const RunConfig& config, double load_resistance_ohm) {
    const ReceiverParams rx = config.receiver.at(load_resistance_ohm);
    const FrequencyGrid grid = grid_for(config);
    CsvTable table{{"omega_rad_s", "freq_ghz", "transfer_ohm"}, {}};
    table.rows.reserve(grid.size());
    for (double w : grid.nodes) {
        table.rows.push_back({w, to_ghz(w), transfer_magnitude(config.channel, rx, w)});
    }
    return table;
}

CsvTable ratio_table(const RunConfig& config, double load_resistance_ohm) {
    const ReceiverParams rx = config.receiver.at(load_resistance_ohm);
    const FrequencyGrid grid = grid_for(config);
    CsvTable table{{"omega_rad_s", "freq_ghz", "ratio"}, {}};
    table.rows.reserve(grid.size());
    for (double w : grid.nodes) {
        table.rows.push_back({w, to_ghz(w), ratio_alpha_beta(config.channel, rx, w)});
    }
    return table;
}

WaterfillReport waterfill_report(const RunConfig& config, double load_resistance_ohm) {
    const ReceiverParams rx = config.receiver.at(load_resistance_ohm);
    const double p_t = config.analysis.transmit_power_w;
    const double bandwidth = config.band.bandwidth_hz;
    const WaterfillProblem problem(config.channel, rx, grid_for(config));

    WaterfillReport report;
    report.load_resistance_ohm = load_resistance_ohm;
    report.solution = problem.solve_for_power(p_t, config.analysis.tolerance);
    report.spectral_efficiency = report.solution.capacity_bps / bandwidth;
    report.lower_bound_se = capacity_lower_bound(config.channel, rx, problem.grid(), p_t) / bandwidth;
    report.upper_bound_se = capacity_upper_bound(rx, config.band, p_t) / bandwidth;

    report.spectrum.columns = {"omega_rad_s", "s_it_A2_per_Hz", "in_support"};
    const auto& nodes = problem.grid().nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        report.spectrum.rows.push_back(
            {nodes[i], report.solution.s_it[i], report.solution.support[i] ? 1.0 : 0.0});
    }
    return report;
}

std::string waterfill_summary_json(const WaterfillReport& report) {
    const WaterfillSolution& sol = report.solution;
    nlohmann::json j = {
        {"load_resistance_ohm", report.load_resistance_ohm},
        {"mu", sol.mu},
        {"power_W", sol.power_w},
        {"capacity_bps", sol.capacity_bps},
        {"spectral_efficiency", report.spectral_efficiency},
        {"lower_bound_se", report.lower_bound_se},
        {"upper_bound_se", report.upper_bound_se},
        {"support_nodes", sol.support_size()},
        {"grid_nodes", sol.support.size()},
    };
    return j.dump(2) + "\n";
}

CsvTable sweep_table(const RunConfig& config, double load_resistance_ohm) {
    const ReceiverParams rx = config.receiver.at(load_resistance_ohm);
    const double bandwidth = config.band.bandwidth_hz;
    const WaterfillProblem problem(config.channel, rx, grid_for(config));

    std::vector<double> mus = config.analysis.mu_list.empty()
                                  ? problem.default_mu_list(config.analysis.sweep_points)
                                  : config.analysis.mu_list;
    std::sort(mus.begin(), mus.end(), std::greater<>());
    const SweepResult result = problem.sweep(mus);

    CsvTable table{{"mu", "power_W", "capacity_bps", "spectral_eff", "full_support", "lower_bound_se",
                    "upper_bound_se"},
                   {}};
    for (const SweepPoint& p : result.points) {
        const double lower = capacity_lower_bound(config.channel, rx, problem.grid(), p.power_w) / bandwidth;
        const double upper = capacity_upper_bound(rx, config.band, p.power_w) / bandwidth;
        table.rows.push_back(
            {p.mu, p.power_w, p.capacity_bps, p.capacity_bps / bandwidth, p.full_support ? 1.0 : 0.0, lower, upper});
    }
    return table;
}

std::vector<Table1Row> table1_rows(const RunConfig& config) {
    std::vector<Table1Row> rows;
    for (double r_l : config.receiver.load_resistances_ohm) {
        const WaterfillReport report = waterfill_report(config, r_l);
        rows.push_back({r_l, report.lower_bound_se, report.spectral_efficiency, report.upper_bound_se});
    }
    return rows;
}

CsvTable table1_table(const std::vector<Table1Row>& rows) {
    CsvTable table{{"load_resistance_ohm", "lower_bound_se", "spectral_efficiency", "upper_bound_se"}, {}};
    for (const Table1Row& r : rows) {
        table.rows.push_back({r.load_resistance_ohm, r.lower_bound_se, r.spectral_efficiency, r.upper_bound_se});
    }
    return table;
}

std::vector<std::filesystem::path> cmd_transfer(const RunConfig& config, const std::filesystem::path& out) {
    return per_load(config, out, [&](double r_l) { return transfer_table(config, r_l); });
}

std::vector<std::filesystem::path> cmd_ratio(const RunConfig& config, const std::filesystem::path& out) {
    return per_load(config, out, [&](double r_l) { return ratio_table(config, r_l); });
}

std::vector<std::filesystem::path> cmd_waterfill(const RunConfig& config, const std::filesystem::path& out) {
    std::vector<std::filesystem::path> written;
    for (double r_l : config.receiver.load_resistances_ohm) {
        const WaterfillReport report = waterfill_report(config, r_l);
        const auto csv = per_load_path(out, r_l);
        const auto summary = per_load_path(out, r_l, ".json");
        write_file_atomic(csv, to_csv(report.spectrum));
        write_file_atomic(summary, waterfill_summary_json(report));
        written.push_back(csv);
        written.push_back(summary);
    }
    return written;
}

std::vector<std::filesystem::path> cmd_sweep(const RunConfig& config, const std::filesystem::path& out) {
    return per_load(config, out, [&](double r_l) { return sweep_table(config, r_l); });
}

std::filesystem::path cmd_table1(const RunConfig& config, const std::filesystem::path& out) {
    write_file_atomic(out, to_csv(table1_table(table1_rows(config))));
    return out;
}

OracleModels oracle_models_for(const RunConfig& config) {
    OracleModels models{std::get<LcParallel>(default_lc_config().channel), TLineOpenEnds{50.0, 3e8, 75.0},
                        std::get<TLineShortedTapped>(default_tline_config().channel)};
    if (const auto* lc = std::get_if<LcParallel>(&config.channel)) models.lc = *lc;
    if (const auto* open = std::get_if<TLineOpenEnds>(&config.channel)) models.open_line = *open;
    if (const auto* shorted = std::get_if<TLineShortedTapped>(&config.channel)) {
        models.shorted_line = *shorted;
        models.open_line = TLineOpenEnds{shorted->char_impedance_ohm, shorted->wave_speed_m_s, shorted->length_m};
    }
    return models;
}

bool cmd_verify(const RunConfig& config, std::ostream& report) {
    bool all = true;
    for (const OracleCheck& check : run_oracle_checks(oracle_models_for(config))) {
        all = all && check.passed;
        report << (check.passed ? "PASS  " : "FAIL  ") << check.name << "  (error " << std::setprecision(3)
               << check.error << ", tolerance " << check.tolerance << ")\n";
    }
    report << (all ? "all checks passed\n" : "some checks FAILED\n");
    return all;
}

}  // namespace rescap
