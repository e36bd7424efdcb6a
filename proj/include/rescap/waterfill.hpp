// Water-filling allocation of transmit-current spectral density.
//
// For a Lagrange multiplier mu the optimal density is
//   s_it(w) = 1/(mu beta(w)) - 1/alpha(w)   where mu beta(w) < alpha(w), else 0,
// and capacity and power follow by integrating over the support with the
// d(omega)/(2 pi) measure. 1/mu therefore carries units of W per unit of
// that measure; capacity is in bits/s and dC/dP = mu * log2(e).
// Support and density are evaluated through the pole-safe ratio alpha/beta.

#ifndef RESCAP_WATERFILL_HPP
#define RESCAP_WATERFILL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "rescap/channels.hpp"
#include "rescap/grid.hpp"
#include "rescap/linkmodel.hpp"

namespace rescap {

struct WaterfillSolution {
    double mu = 0.0;
    std::vector<bool> support;  // per grid node
    std::vector<double> s_it;   // A^2/Hz per grid node
    double capacity_bps = 0.0;
    double power_w = 0.0;

    std::size_t support_size() const;
};

struct SweepPoint {
    double mu = 0.0;
    double power_w = 0.0;
    double capacity_bps = 0.0;
    bool full_support = false;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    // Largest multiplier at which every coupled node is powered; the last
    // entry of `points` is evaluated there.
    double full_support_mu = 0.0;
};

/// alpha, beta and their ratio tabulated on a grid, plus the solver.
class WaterfillProblem {
public:
    WaterfillProblem(const ChannelModel& model, const ReceiverParams& rx, FrequencyGrid grid);

    const FrequencyGrid& grid() const { return grid_; }
    const std::vector<double>& alpha() const { return alpha_; }
    const std::vector<double>& beta() const { return beta_; }
    const std::vector<double>& ratio() const { return ratio_; }

    /// Smallest mu with empty support.
    double empty_support_mu() const { return max_ratio_; }

    /// Largest mu with full support (all nodes with beta > 0 powered).
    double full_support_mu() const;

    /// Throws std::invalid_argument unless mu > 0.
    WaterfillSolution solve_for_mu(double mu) const;

    /// Bisects on mu until |power - p_t| <= tol * p_t (at most 200 steps).
    /// Throws std::invalid_argument for p_t <= 0 or tol <= 0, and
    /// std::runtime_error when no bracket is found or the tolerance is missed.
    WaterfillSolution solve_for_power(double p_t, double tol = 1e-6) const;

    /// One solution per multiplier (expected positive, descending), truncated
    /// at the full-support multiplier, which is appended as the final point.
    SweepResult sweep(std::span<const double> mu_list) const;

    /// `count` multipliers log-spaced from the value at which about 5 % of the
    /// base grid is powered down to the full-support value.
    std::vector<double> default_mu_list(std::size_t count) const;

private:
    bool in_support(std::size_t i, double mu) const;
    void accumulate(double mu, WaterfillSolution* out) const;
    double power_at(double mu) const;

    FrequencyGrid grid_;
    std::vector<double> alpha_;
    std::vector<double> beta_;
    std::vector<double> ratio_;
    double max_ratio_ = 0.0;
    double min_coupled_ratio_ = 0.0;
};

WaterfillSolution solve_for_mu(const ChannelModel& model, const ReceiverParams& rx, const FrequencyGrid& grid,
                               double mu);
WaterfillSolution solve_for_power(const ChannelModel& model, const ReceiverParams& rx, const FrequencyGrid& grid,
                                  double p_t, double tol = 1e-6);
SweepResult sweep(const ChannelModel& model, const ReceiverParams& rx, const FrequencyGrid& grid,
                  std::span<const double> mu_list);

}  // namespace rescap

#endif  // RESCAP_WATERFILL_HPP
