// rescap: capacity of current-driven links through lossless two-port
// networks.
//
//   rescap table1 --out table1.csv
//   rescap waterfill --config configs/lc_carrier.json --out out/lc.csv --rl 5e4
//   rescap sweep --config configs/tline_shorted.json --out out/tline_sweep.csv
//   rescap verify

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rescap/commands.hpp"
#include "rescap/config.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::vector<double> load_resistances;
    std::optional<double> power;
    std::vector<double> mu_list;
    std::optional<std::size_t> grid_points;
    std::optional<int> refine;
};

void add_common(CLI::App* cmd, Options& opt, bool config_required, bool with_out) {
    auto* config = cmd->add_option("--config", opt.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    if (config_required) config->required();
    if (with_out) cmd->add_option("--out", opt.out_path, "output file (per-R_L files get an _rl<value> suffix)")->required();
    cmd->add_option("--rl", opt.load_resistances, "override load resistances (ohm), comma separated")
        ->delimiter(',');
    cmd->add_option("--power", opt.power, "transmit power budget (W)");
    cmd->add_option("--mu", opt.mu_list, "Lagrange multipliers for sweep, comma separated")->delimiter(',');
    cmd->add_option("--grid-points", opt.grid_points, "uniform base grid points");
    cmd->add_option("--refine", opt.refine, "pole refinement levels");
}

rescap::RunConfig resolve_config(const Options& opt) {
    rescap::RunConfig cfg = opt.config_path.empty() ? rescap::default_lc_config() : rescap::load_config(opt.config_path);
    if (!opt.load_resistances.empty()) cfg.receiver.load_resistances_ohm = opt.load_resistances;
    if (opt.power) cfg.analysis.transmit_power_w = *opt.power;
    if (!opt.mu_list.empty()) cfg.analysis.mu_list = opt.mu_list;
    if (opt.grid_points) cfg.grid.base_points = *opt.grid_points;
    if (opt.refine) cfg.grid.refine_levels = *opt.refine;
    rescap::validate(cfg);
    return cfg;
}

void print_written(const std::vector<std::filesystem::path>& paths) {
    for (const auto& p : paths) std::cout << "wrote " << p.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shannon capacity of links through lossless two-port networks"};
    app.require_subcommand(1);
    Options opt;

    auto* transfer = app.add_subcommand("transfer", "|V_R/I_T| over the band, one CSV per load resistance");
    auto* ratio = app.add_subcommand("ratio", "alpha/beta over the band, one CSV per load resistance");
    auto* waterfill = app.add_subcommand("waterfill", "optimal transmit spectral density at the power budget");
    auto* sweep = app.add_subcommand("sweep", "capacity versus power over a multiplier sweep");
    auto* table1 = app.add_subcommand("table1", "spectral efficiency and bounds for the LC reference setup");
    auto* verify = app.add_subcommand("verify", "run the time-domain oracle checks");
    for (auto* cmd : {transfer, ratio, waterfill, sweep}) add_common(cmd, opt, true, true);
    add_common(table1, opt, false, true);
    add_common(verify, opt, false, false);

    CLI11_PARSE(app, argc, argv);

    try {
        const rescap::RunConfig cfg = resolve_config(opt);
        if (transfer->parsed()) {
            print_written(rescap::cmd_transfer(cfg, opt.out_path));
        } else if (ratio->parsed()) {
            print_written(rescap::cmd_ratio(cfg, opt.out_path));
        } else if (waterfill->parsed()) {
            print_written(rescap::cmd_waterfill(cfg, opt.out_path));
        } else if (sweep->parsed()) {
            print_written(rescap::cmd_sweep(cfg, opt.out_path));
        } else if (table1->parsed()) {
            const auto path = rescap::cmd_table1(cfg, opt.out_path);
            std::cout << "wrote " << path.string() << "\n";
        } else if (verify->parsed()) {
            return rescap::cmd_verify(cfg, std::cout) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
