#include "rescap/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rescap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxBisections = 200;

}  // namespace

std::size_t WaterfillSolution::support_size() const {
    return static_cast<std::size_t>(std::count(support.begin(), support.end(), true));
}

WaterfillProblem::WaterfillProblem(const ChannelModel& model, const ReceiverParams& rx, FrequencyGrid grid)
    : grid_(std::move(grid)) {
    validate(model);
    validate(rx);
    const std::size_t n = grid_.size();
    alpha_.resize(n);
    beta_.resize(n);
    ratio_.resize(n);
    max_ratio_ = 0.0;
    min_coupled_ratio_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const ReactanceSample z = eval_reactances(model, grid_.nodes[i]);
        alpha_[i] = rescap::alpha(z, rx);
        beta_[i] = rescap::beta(z, rx);
        ratio_[i] = ratio_alpha_beta(z, rx);
        if (beta_[i] > 0.0) {
            max_ratio_ = std::max(max_ratio_, ratio_[i]);
            min_coupled_ratio_ = std::min(min_coupled_ratio_, ratio_[i]);
        }
    }
    if (!std::isfinite(min_coupled_ratio_)) min_coupled_ratio_ = 0.0;
}

double WaterfillProblem::full_support_mu() const {
    // Support is open, so the node(s) attaining the minimum ratio join it
    // only strictly below that ratio.
    return std::nextafter(min_coupled_ratio_, 0.0);
}

bool WaterfillProblem::in_support(std::size_t i, double mu) const {
    // mu * beta < alpha, tested as mu < alpha/beta so that the thresholds
    // reported by empty_support_mu() and full_support_mu() are exact.
    return beta_[i] > 0.0 && mu < ratio_[i];
}

void WaterfillProblem::accumulate(double mu, WaterfillSolution* out) const {
    const std::size_t n = grid_.size();
    out->mu = mu;
    out->support.assign(n, false);
    out->s_it.assign(n, 0.0);
    double capacity = 0.0;
    double power = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_support(i, mu)) continue;
        const double level = ratio_[i] / mu;  // alpha / (mu beta) > 1
        out->support[i] = true;
        out->s_it[i] = (level - 1.0) / alpha_[i];
        capacity += grid_.weights[i] * std::log2(level);
        power += grid_.weights[i] * (1.0 / mu - 1.0 / ratio_[i]);
    }
    out->capacity_bps = capacity / kTwoPi;
    out->power_w = power / kTwoPi;
}

double WaterfillProblem::power_at(double mu) const {
    double power = 0.0;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (in_support(i, mu)) power += grid_.weights[i] * (1.0 / mu - 1.0 / ratio_[i]);
    }
    return power / kTwoPi;
}

WaterfillSolution WaterfillProblem::solve_for_mu(double mu) const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("solve_for_mu: mu must be finite and > 0");
    WaterfillSolution out;
    accumulate(mu, &out);
    return out;
}

WaterfillSolution WaterfillProblem::solve_for_power(double p_t, double tol) const {
    if (!(p_t > 0.0) || !std::isfinite(p_t)) throw std::invalid_argument("solve_for_power: p_t must be > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_for_power: tol must be > 0");
    if (!(max_ratio_ > 0.0)) throw std::runtime_error("solve_for_power: channel has no coupling in band");

    auto close_enough = [&](double power) { return std::abs(power - p_t) <= tol * p_t; };

    // power(mu) is continuous, zero at max_ratio_ and grows like 1/mu below
    // the full-support point, so halving always brackets eventually.
    double hi = max_ratio_;
    double lo = max_ratio_;
    double p_lo = 0.0;
    for (int i = 0; i < 4000 && p_lo < p_t; ++i) {
        hi = lo;
        lo *= 0.5;
        if (!(lo > 0.0)) break;
        p_lo = power_at(lo);
    }
    if (!(p_lo >= p_t)) throw std::runtime_error("solve_for_power: failed to bracket the power budget");
    if (close_enough(p_lo)) return solve_for_mu(lo);

    for (int iter = 0; iter < kMaxBisections; ++iter) {
        const double mid = std::sqrt(lo * hi);
        const double power = power_at(mid);
        if (close_enough(power)) return solve_for_mu(mid);
        if (power > p_t) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw std::runtime_error("solve_for_power: tolerance not reached within iteration limit");
}

SweepResult WaterfillProblem::sweep(std::span<const double> mu_list) const {
    SweepResult result;
    result.full_support_mu = full_support_mu();
    auto point_for = [&](double mu) {
        WaterfillSolution sol = solve_for_mu(mu);
        bool full = true;
        for (std::size_t i = 0; i < grid_.size(); ++i) {
            if (beta_[i] > 0.0 && !sol.support[i]) {
                full = false;
                break;
            }
        }
        return SweepPoint{mu, sol.power_w, sol.capacity_bps, full};
    };
    for (double mu : mu_list) {
        if (mu > result.full_support_mu) result.points.push_back(point_for(mu));
    }
    if (result.full_support_mu > 0.0) result.points.push_back(point_for(result.full_support_mu));
    return result;
}

std::vector<double> WaterfillProblem::default_mu_list(std::size_t count) const {
    std::vector<double> mus;
    if (count == 0 || !(max_ratio_ > 0.0)) return mus;
    // Start where the support already spans about 5 % of the base grid; above
    // that the powered set is a handful of nodes and the quadrature is
    // meaningless.
    std::vector<double> coupled;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (beta_[i] > 0.0) coupled.push_back(ratio_[i]);
    }
    const std::size_t base = static_cast<std::size_t>(grid_.band.width_rad_s() / grid_.base_spacing) + 1;
    const std::size_t rank = std::min(coupled.size() - 1, std::max<std::size_t>(8, base / 20));
    std::nth_element(coupled.begin(), coupled.begin() + static_cast<std::ptrdiff_t>(rank), coupled.end(),
                     std::greater<>());
    const double top = coupled[rank];
    const double bottom = full_support_mu();
    if (count == 1 || !(bottom < top)) {
        mus.push_back(bottom);
        return mus;
    }
    const double step = std::log(bottom / top) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) mus.push_back(top * std::exp(step * static_cast<double>(i)));
    mus.back() = bottom;
    return mus;
}

WaterfillSolution solve_for_mu(const ChannelModel& model, const ReceiverParams& rx, const FrequencyGrid& grid,
                               double mu) {
    return WaterfillProblem(model, rx, grid).solve_for_mu(mu);
}

WaterfillSolution solve_for_power(const ChannelModel& model, const ReceiverParams& rx, const FrequencyGrid& grid,
                                  double p_t, double tol) {
    return WaterfillProblem(model, rx, grid).solve_for_power(p_t, tol);
}

SweepResult sweep(const ChannelModel& model, const ReceiverParams& rx, const FrequencyGrid& grid,
                  std::span<const double> mu_list) {
    return WaterfillProblem(model, rx, grid).sweep(mu_list);
}

}  // namespace rescap
