// Pole-refined frequency grid with trapezoidal weights over the transmit band.

#ifndef RESCAP_GRID_HPP
#define RESCAP_GRID_HPP

#include <cstddef>
#include <vector>

#include "rescap/channels.hpp"

namespace rescap {

/// Positive-frequency transmit band [carrier - pi*B, carrier + pi*B] in rad/s,
/// i.e. B Hz wide.
struct Band {
    double carrier_rad_s = 0.0;
    double bandwidth_hz = 0.0;

    double lo() const;
    double hi() const;
    double width_rad_s() const;

    bool operator==(const Band&) const = default;
};

/// Throws std::invalid_argument unless B > 0 and the band lies at positive
/// frequencies.
void validate(const Band& band);

struct GridSpec {
    std::size_t base_points = 4001;
    int refine_levels = 6;

    bool operator==(const GridSpec&) const = default;
};

/// Quadrature nodes over a Band. Weights integrate d(omega), so
/// sum(weights) == 2*pi*B and a band integral of f(omega) d(omega)/(2*pi) is
/// sum(w_i * f_i) / (2*pi).
struct FrequencyGrid {
    Band band;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<std::size_t> pole_nodes;  // indices where nodes[i] is a pole
    double base_spacing = 0.0;

    std::size_t size() const { return nodes.size(); }
};

/// Uniform base grid of `base_points` nodes spanning the band, plus nested
/// refinement around every in-band pole: level j (1-based) adds nodes with
/// spacing base_spacing / 2^j inside +-10 spacings of level j-1. Each pole is
/// inserted as an exact node.
///
/// Throws std::invalid_argument for an invalid band, base_points < 16 or
/// refine_levels < 0.
FrequencyGrid build_grid(const Band& band, const ChannelModel& model, std::size_t base_points,
                         int refine_levels);

inline FrequencyGrid build_grid(const Band& band, const ChannelModel& model, const GridSpec& spec) {
    return build_grid(band, model, spec.base_points, spec.refine_levels);
}

}  // namespace rescap

#endif  // RESCAP_GRID_HPP
