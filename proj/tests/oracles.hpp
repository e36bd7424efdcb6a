// Test-only reference computations. Nothing here calls into the rational
// (numerator/denominator) evaluation path of the library; impedances come
// from complex circuit algebra or the textbook matrix entries directly.

#ifndef RESCAP_TESTS_ORACLES_HPP
#define RESCAP_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "rescap/channels.hpp"
#include "rescap/linkmodel.hpp"

namespace rescap::oracle {

struct Reactances {
    double t, r, rt;
};

/// LC: invert the admittance i w C + 1/(i w L) in complex arithmetic.
inline Reactances lc_reactances(const LcParallel& lc, double omega) {
    using C = std::complex<double>;
    const C i{0.0, 1.0};
    const C z = 1.0 / (i * omega * lc.capacitance_f + 1.0 / (i * omega * lc.inductance_h));
    return {z.imag(), z.imag(), z.imag()};
}

/// Shorted tapped line: the cosine-difference entries over 2 sin kL.
inline Reactances shorted_reactances(const TLineShortedTapped& l, double omega) {
    const double k = omega / l.wave_speed_m_s;
    const double len = l.length_m;
    const double d = 2.0 * std::sin(k * len);
    const double z0 = l.char_impedance_ohm;
    return {z0 * (std::cos(k * (len - 2.0 * l.x_transmit_m)) - std::cos(k * len)) / d,
            z0 * (std::cos(k * (len - 2.0 * l.x_receive_m)) - std::cos(k * len)) / d,
            z0 * (std::cos(k * (len - l.x_receive_m - l.x_transmit_m)) -
                  std::cos(k * (len - std::abs(l.x_transmit_m - l.x_receive_m)))) /
                d};
}

/// Open line: -z0 cot kL on the diagonal, -z0 / sin kL off it.
inline Reactances open_reactances(const TLineOpenEnds& l, double omega) {
    const double kl = omega * l.length_m / l.wave_speed_m_s;
    return {-l.char_impedance_ohm * std::cos(kl) / std::sin(kl), -l.char_impedance_ohm * std::cos(kl) / std::sin(kl),
            -l.char_impedance_ohm / std::sin(kl)};
}

inline Reactances reactances(const ChannelModel& m, double omega) {
    if (auto* lc = std::get_if<LcParallel>(&m)) return lc_reactances(*lc, omega);
    if (auto* open = std::get_if<TLineOpenEnds>(&m)) return open_reactances(*open, omega);
    return shorted_reactances(std::get<TLineShortedTapped>(m), omega);
}

/// Delivered power per unit current density, straight from the reactances.
inline double beta(const Reactances& z, const ReceiverParams& rx) {
    const double rl = rx.load_resistance_ohm;
    return 2.0 * rl * z.rt * z.rt / (z.r * z.r + rl * rl);
}

/// SNR per unit current density, straight from the reactances.
inline double alpha(const Reactances& z, const ReceiverParams& rx) {
    const double rl = rx.load_resistance_ohm;
    const double g2 = rx.amp_gain * rx.amp_gain;
    return g2 * z.rt * z.rt * rl * rl /
           (2.0 * g2 * rx.boltzmann * rx.temperature_k * z.r * z.r * rl + rx.amp_noise_density * (z.r * z.r + rl * rl));
}

struct PowerCapacity {
    double power_w;
    double capacity_bps;
};

/// Midpoint Riemann sum of the water-filling power and capacity for a fixed
/// multiplier on `points` uniform cells over [lo, hi].
inline PowerCapacity riemann_waterfill(const ChannelModel& m, const ReceiverParams& rx, double lo, double hi,
                                       std::size_t points, double mu) {
    const double h = (hi - lo) / static_cast<double>(points);
    double power = 0.0;
    double capacity = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double w = lo + h * (static_cast<double>(i) + 0.5);
        const Reactances z = reactances(m, w);
        const double a = alpha(z, rx);
        const double b = beta(z, rx);
        if (!(mu * b < a)) continue;
        const double s = 1.0 / (mu * b) - 1.0 / a;
        power += b * s;
        capacity += std::log2(1.0 + a * s);
    }
    const double scale = h / (2.0 * std::numbers::pi);
    return {power * scale, capacity * scale};
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace rescap::oracle

#endif  // RESCAP_TESTS_ORACLES_HPP
