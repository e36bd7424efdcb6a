#include "rescap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rescap {

double Band::lo() const { return carrier_rad_s - std::numbers::pi * bandwidth_hz; }
double Band::hi() const { return carrier_rad_s + std::numbers::pi * bandwidth_hz; }
double Band::width_rad_s() const { return 2.0 * std::numbers::pi * bandwidth_hz; }

void validate(const Band& band) {
    if (!(band.bandwidth_hz > 0.0) || !std::isfinite(band.bandwidth_hz)) {
        throw std::invalid_argument("band: bandwidth must be finite and > 0");
    }
    if (!(band.lo() > 0.0) || !std::isfinite(band.carrier_rad_s)) {
        throw std::invalid_argument("band: carrier - pi*B must be > 0");
    }
}

FrequencyGrid build_grid(const Band& band, const ChannelModel& model, std::size_t base_points,
                         int refine_levels) {
    validate(band);
    validate(model);
    if (base_points < 16) throw std::invalid_argument("build_grid: base_points must be >= 16");
    if (refine_levels < 0) throw std::invalid_argument("build_grid: refine_levels must be >= 0");

    const double lo = band.lo();
    const double hi = band.hi();
    const double h = (hi - lo) / static_cast<double>(base_points - 1);
    const std::vector<double> poles = poles_in_interval(model, lo, hi);

    std::vector<double> nodes;
    nodes.reserve(base_points + poles.size() * (1 + 40 * static_cast<std::size_t>(refine_levels)));
    for (std::size_t i = 0; i + 1 < base_points; ++i) {
        nodes.push_back(lo + h * static_cast<double>(i));
    }
    nodes.push_back(hi);

    for (double pole : poles) {
        double parent = h;
        for (int level = 1; level <= refine_levels; ++level) {
            const double spacing = parent / 2.0;
            const auto count = static_cast<int>(std::lround(10.0 * parent / spacing));
            for (int i = -count; i <= count; ++i) {
                if (i == 0) continue;
                const double w = pole + spacing * i;
                if (w > lo && w < hi) nodes.push_back(w);
            }
            parent = spacing;
        }
    }

    std::sort(nodes.begin(), nodes.end());
    // Merge near-duplicates left by overlapping refinement windows, then snap
    // each pole onto the grid as an exact node.
    const double merge_tol = 1e-6 * h / std::ldexp(1.0, refine_levels);
    std::vector<double> merged;
    merged.reserve(nodes.size() + poles.size());
    for (double w : nodes) {
        if (merged.empty() || w - merged.back() > merge_tol) merged.push_back(w);
    }
    for (double pole : poles) {
        auto it = std::lower_bound(merged.begin(), merged.end(), pole);
        if (it != merged.end() && *it == pole) continue;
        const auto is_edge = [&](double w) { return w == lo || w == hi; };
        if (it != merged.end() && *it - pole <= merge_tol && !is_edge(*it)) {
            *it = pole;
        } else if (it != merged.begin() && pole - *(it - 1) <= merge_tol && !is_edge(*(it - 1))) {
            *(it - 1) = pole;
        } else {
            merged.insert(it, pole);
        }
    }

    FrequencyGrid grid;
    grid.band = band;
    grid.base_spacing = h;
    grid.nodes = std::move(merged);
    const std::size_t n = grid.nodes.size();
    grid.weights.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double half = 0.5 * (grid.nodes[i + 1] - grid.nodes[i]);
        grid.weights[i] += half;
        grid.weights[i + 1] += half;
    }
    for (double pole : poles) {
        auto it = std::lower_bound(grid.nodes.begin(), grid.nodes.end(), pole);
        if (it != grid.nodes.end() && *it == pole) {
            grid.pole_nodes.push_back(static_cast<std::size_t>(it - grid.nodes.begin()));
        }
    }
    return grid;
}

}  // namespace rescap
