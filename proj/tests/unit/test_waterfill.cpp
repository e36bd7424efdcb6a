#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "../oracles.hpp"
#include "rescap/config.hpp"
#include "rescap/grid.hpp"
#include "rescap/waterfill.hpp"

using namespace rescap;

namespace {

constexpr double kPower = 2.68e-14;

struct Case {
    RunConfig cfg;
    ReceiverParams rx;
    FrequencyGrid grid;
};

Case lc_setup(double r_l, GridSpec spec = {}) {
    RunConfig cfg = default_lc_config();
    return {cfg, cfg.receiver.at(r_l), build_grid(cfg.band, cfg.channel, spec)};
}

Case tline_setup(double r_l, GridSpec spec = {}) {
    RunConfig cfg = default_tline_config();
    return {cfg, cfg.receiver.at(r_l), build_grid(cfg.band, cfg.channel, spec)};
}

}  // namespace

TEST(Grid, LcBandHasOnePoleNode) {
    const Case s = lc_setup(5e4);
    ASSERT_EQ(s.grid.pole_nodes.size(), 1u);
    EXPECT_EQ(s.grid.nodes[s.grid.pole_nodes[0]], resonance_omega(std::get<LcParallel>(s.cfg.channel)));
}

TEST(Grid, StructuralInvariants) {
    for (const Case& s : {lc_setup(5e4), tline_setup(5e4), lc_setup(5e4, GridSpec{16, 0})}) {
        const auto& n = s.grid.nodes;
        ASSERT_EQ(n.size(), s.grid.weights.size());
        EXPECT_EQ(n.front(), s.grid.band.lo());
        EXPECT_EQ(n.back(), s.grid.band.hi());
        for (std::size_t i = 1; i < n.size(); ++i) ASSERT_LT(n[i - 1], n[i]);
        for (double w : s.grid.weights) ASSERT_GT(w, 0.0);
        const double total = std::accumulate(s.grid.weights.begin(), s.grid.weights.end(), 0.0);
        EXPECT_NEAR(total, 2.0 * std::numbers::pi * 1e7, 1e-9 * total);
        const auto poles = poles_in_interval(s.cfg.channel, s.grid.band.lo(), s.grid.band.hi());
        ASSERT_EQ(poles.size(), s.grid.pole_nodes.size());
        for (std::size_t i = 0; i < poles.size(); ++i) EXPECT_EQ(n[s.grid.pole_nodes[i]], poles[i]);
    }
}

TEST(Grid, TlineBandHasManyPoles) {
    const Case s = tline_setup(5e4);
    // 10 MHz band, pole spacing c0 / 2L = 2 MHz.
    EXPECT_EQ(s.grid.pole_nodes.size(), 5u);
}

TEST(Grid, BandBetweenPolesIsUniform) {
    const TLineOpenEnds line{50.0, 3e8, 75.0};
    const double spacing = std::numbers::pi * 3e8 / 75.0;
    const Band band{1000.5 * spacing, 0.2 * spacing / (2.0 * std::numbers::pi)};
    const FrequencyGrid grid = build_grid(band, line, 101, 6);
    EXPECT_TRUE(grid.pole_nodes.empty());
    EXPECT_EQ(grid.size(), 101u);
}

TEST(Grid, RejectsBadArguments) {
    const RunConfig cfg = default_lc_config();
    EXPECT_THROW(build_grid(cfg.band, cfg.channel, 15, 0), std::invalid_argument);
    EXPECT_THROW(build_grid(cfg.band, cfg.channel, 100, -1), std::invalid_argument);
    EXPECT_THROW(build_grid(Band{1.0, 1e7}, cfg.channel, 100, 0), std::invalid_argument);
}

TEST(Waterfill, EmptySupportAboveMaxRatio) {
    const Case s = lc_setup(5e4);
    const WaterfillProblem p(s.cfg.channel, s.rx, s.grid);
    const WaterfillSolution sol = p.solve_for_mu(p.empty_support_mu());
    EXPECT_EQ(sol.support_size(), 0u);
    EXPECT_EQ(sol.capacity_bps, 0.0);
    EXPECT_EQ(sol.power_w, 0.0);
    EXPECT_THROW(p.solve_for_mu(0.0), std::invalid_argument);
}

TEST(Waterfill, MonotoneInMu) {
    for (const Case& s : {lc_setup(5e5), tline_setup(5e5)}) {
        const WaterfillProblem p(s.cfg.channel, s.rx, s.grid);
        const auto mus = p.default_mu_list(50);
        double prev_p = -1.0;
        double prev_c = -1.0;
        for (double mu : mus) {
            const WaterfillSolution sol = p.solve_for_mu(mu);
            EXPECT_GE(sol.power_w, prev_p);
            EXPECT_GE(sol.capacity_bps, prev_c);
            prev_p = sol.power_w;
            prev_c = sol.capacity_bps;
        }
    }
}

TEST(Waterfill, WaterLevelOnSupport) {
    const Case s = tline_setup(5e4);
    const WaterfillProblem p(s.cfg.channel, s.rx, s.grid);
    const WaterfillSolution sol = p.solve_for_power(kPower);
    ASSERT_GT(sol.support_size(), 0u);
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        EXPECT_GE(sol.s_it[i], 0.0);
        if (!sol.support[i]) {
            EXPECT_EQ(sol.s_it[i], 0.0);
            continue;
        }
        const double level = sol.mu * p.beta()[i] * (sol.s_it[i] + 1.0 / p.alpha()[i]);
        EXPECT_NEAR(level, 1.0, 1e-10);
    }
}

TEST(Waterfill, SolveForPowerHitsBudget) {
    for (const Case& s : {lc_setup(5e4), lc_setup(5e6), tline_setup(5e5)}) {
        const WaterfillSolution sol = solve_for_power(s.cfg.channel, s.rx, s.grid, kPower);
        EXPECT_LE(std::abs(sol.power_w - kPower) / kPower, 1e-6);
    }
    const Case s = lc_setup(5e4);
    EXPECT_THROW(solve_for_power(s.cfg.channel, s.rx, s.grid, 0.0), std::invalid_argument);
    // Far beyond the full-support regime is still solvable.
    const WaterfillSolution big = solve_for_power(s.cfg.channel, s.rx, s.grid, 1e-6);
    EXPECT_EQ(big.support_size(), s.grid.size());
}

TEST(Waterfill, SmallPowerConcentratesAtRatioMaximum) {
    const Case s = lc_setup(5e4);
    const WaterfillProblem p(s.cfg.channel, s.rx, s.grid);
    const WaterfillSolution sol = p.solve_for_power(1e-22, 1e-3);
    ASSERT_GT(sol.support_size(), 0u);
    EXPECT_LT(sol.capacity_bps / 1e7, 1e-3);
    const auto argmax = std::max_element(p.ratio().begin(), p.ratio().end()) - p.ratio().begin();
    EXPECT_TRUE(sol.support[static_cast<std::size_t>(argmax)]);
}

TEST(Waterfill, PoleNodesUnpoweredBelowFullSupport) {
    for (const Case& s : {lc_setup(5e4), lc_setup(5e6), tline_setup(5e4)}) {
        const WaterfillProblem p(s.cfg.channel, s.rx, s.grid);
        for (double mu : p.default_mu_list(20)) {
            if (mu <= p.full_support_mu()) continue;
            const WaterfillSolution sol = p.solve_for_mu(mu);
            for (std::size_t idx : s.grid.pole_nodes) EXPECT_EQ(sol.s_it[idx], 0.0) << "mu=" << mu;
        }
    }
}

TEST(Waterfill, FullSupportTermination) {
    const Case s = tline_setup(5e5);
    const WaterfillProblem p(s.cfg.channel, s.rx, s.grid);
    const auto mus = p.default_mu_list(30);
    const SweepResult r = p.sweep(mus);
    ASSERT_FALSE(r.points.empty());
    EXPECT_TRUE(r.points.back().full_support);
    EXPECT_EQ(r.points.back().mu, r.full_support_mu);
    for (std::size_t i = 0; i + 1 < r.points.size(); ++i) {
        EXPECT_FALSE(r.points[i].full_support);
        EXPECT_LE(r.points[i].power_w, r.points[i + 1].power_w);
    }
    const WaterfillSolution full = p.solve_for_mu(r.full_support_mu);
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        if (p.beta()[i] > 0.0) {
            EXPECT_TRUE(full.support[i]);
        }
    }
}

TEST(Waterfill, DerivativeMatchesMuTimesLog2e) {
    const Case s = lc_setup(5e5);
    const WaterfillProblem p(s.cfg.channel, s.rx, s.grid);
    for (double pt : {0.3 * kPower, kPower, 3.0 * kPower}) {
        const double dp = 1e-3 * pt;
        const WaterfillSolution mid = p.solve_for_power(pt, 1e-10);
        const WaterfillSolution up = p.solve_for_power(pt + dp, 1e-10);
        const WaterfillSolution down = p.solve_for_power(pt - dp, 1e-10);
        const double slope = (up.capacity_bps - down.capacity_bps) / (up.power_w - down.power_w);
        EXPECT_LE(oracle::rel_err(slope, mid.mu * std::numbers::log2e), 0.05);
    }
}

TEST(Waterfill, RiemannOracleAgreement) {
    for (const Case& s : {lc_setup(5e4), lc_setup(5e6), tline_setup(5e5)}) {
        const WaterfillProblem p(s.cfg.channel, s.rx, s.grid);
        const WaterfillSolution sol = p.solve_for_power(kPower);
        const auto ref = oracle::riemann_waterfill(s.cfg.channel, s.rx, s.grid.band.lo(), s.grid.band.hi(),
                                                   4 * s.cfg.grid.base_points, sol.mu);
        EXPECT_LE(oracle::rel_err(ref.power_w, sol.power_w), 1e-3);
        EXPECT_LE(oracle::rel_err(ref.capacity_bps, sol.capacity_bps), 1e-3);
    }
}
