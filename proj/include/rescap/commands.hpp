// Analyses behind the command-line subcommands, and their CSV/JSON writers.
//
// Each table-producing analysis is exposed twice: a pure function returning
// the table, and a cmd_* wrapper that writes it to disk. Commands that run
// per load resistance write one file per value, named
// <stem>_rl<R_L><ext> next to the requested output path.

#ifndef RESCAP_COMMANDS_HPP
#define RESCAP_COMMANDS_HPP

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "rescap/config.hpp"
#include "rescap/timedomain.hpp"
#include "rescap/waterfill.hpp"

namespace rescap {

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// 17 significant digits per value. Throws std::domain_error if any value is
/// NaN or infinite.
std::string to_csv(const CsvTable& table);

/// Writes via a sibling temporary file and rename. Throws
/// std::runtime_error if the destination is not writable.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// out = "dir/name.csv", r_l = 5e4  ->  "dir/name_rl50000.csv".
std::filesystem::path per_load_path(const std::filesystem::path& out, double load_resistance_ohm,
                                    const std::string& extension = {});

CsvTable transfer_table(const RunConfig& config, double load_resistance_ohm);
CsvTable ratio_table(const RunConfig& config, double load_resistance_ohm);

struct WaterfillReport {
    double load_resistance_ohm = 0.0;
    WaterfillSolution solution;
    CsvTable spectrum;
    double spectral_efficiency = 0.0;
    double lower_bound_se = 0.0;
    double upper_bound_se = 0.0;
};

WaterfillReport waterfill_report(const RunConfig& config, double load_resistance_ohm);
std::string waterfill_summary_json(const WaterfillReport& report);

CsvTable sweep_table(const RunConfig& config, double load_resistance_ohm);

struct Table1Row {
    double load_resistance_ohm = 0.0;
    double lower_bound_se = 0.0;
    double spectral_efficiency = 0.0;
    double upper_bound_se = 0.0;
};

std::vector<Table1Row> table1_rows(const RunConfig& config);
CsvTable table1_table(const std::vector<Table1Row>& rows);

std::vector<std::filesystem::path> cmd_transfer(const RunConfig& config, const std::filesystem::path& out);
std::vector<std::filesystem::path> cmd_ratio(const RunConfig& config, const std::filesystem::path& out);
/// Writes a spectrum CSV and a JSON summary per load resistance.
std::vector<std::filesystem::path> cmd_waterfill(const RunConfig& config, const std::filesystem::path& out);
std::vector<std::filesystem::path> cmd_sweep(const RunConfig& config, const std::filesystem::path& out);
std::filesystem::path cmd_table1(const RunConfig& config, const std::filesystem::path& out);

/// Oracle models taken from the config where its channel type matches,
/// otherwise from the default configurations.
OracleModels oracle_models_for(const RunConfig& config);

/// Prints one PASS/FAIL line per oracle check; returns true if all passed.
bool cmd_verify(const RunConfig& config, std::ostream& report);

}  // namespace rescap

#endif  // RESCAP_COMMANDS_HPP
