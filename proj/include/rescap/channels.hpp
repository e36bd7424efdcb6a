// Lossless two-port channel models: parallel LC network, open-ended
// transmission line, and shorted transmission line with interior taps.
//
// Every model's impedance matrix is purely imaginary, so only the reactances
// Z'' are stored. They are kept as numerators over one shared denominator so
// that evaluation stays finite at the resonance poles (denominator == 0).

#ifndef RESCAP_CHANNELS_HPP
#define RESCAP_CHANNELS_HPP

#include <variant>
#include <vector>

namespace rescap {

/// Two-port formed by a shunt L || C; both ports see the same node voltage.
struct LcParallel {
    double inductance_h = 0.0;
    double capacitance_f = 0.0;

    bool operator==(const LcParallel&) const = default;
};

/// Line segment 0 <= x <= length with the two ports at its open ends.
struct TLineOpenEnds {
    double char_impedance_ohm = 0.0;
    double wave_speed_m_s = 0.0;
    double length_m = 0.0;

    bool operator==(const TLineOpenEnds&) const = default;
};

/// Line segment shorted at both ends, driven at x_transmit and observed at
/// x_receive.
struct TLineShortedTapped {
    double char_impedance_ohm = 0.0;
    double wave_speed_m_s = 0.0;
    double length_m = 0.0;
    double x_transmit_m = 0.0;
    double x_receive_m = 0.0;

    bool operator==(const TLineShortedTapped&) const = default;
};

using ChannelModel = std::variant<LcParallel, TLineOpenEnds, TLineShortedTapped>;

/// Throws std::invalid_argument if a parameter is non-positive or a tap lies
/// outside the line.
void validate(const ChannelModel& model);

/// Short human-readable tag ("lc_parallel", "tline_open", "tline_shorted").
const char* model_name(const ChannelModel& model);

/// Reactances of the transmit self-impedance (t), receive self-impedance (r)
/// and mutual impedance (rt) over the common denominator.
///
/// The representation is homogeneous: scaling all four fields by the same
/// non-zero constant describes the same network. Z_TR == Z_RT (reciprocity),
/// so only one off-diagonal value is carried.
struct ReactanceSample {
    double num_t = 0.0;
    double num_r = 0.0;
    double num_rt = 0.0;
    double denom = 0.0;
    double omega = 0.0;

    // Only meaningful off-pole (denom != 0).
    double z_t() const { return num_t / denom; }
    double z_r() const { return num_r / denom; }
    double z_rt() const { return num_rt / denom; }
    bool at_pole() const { return denom == 0.0; }
};

ReactanceSample eval_reactances(const ChannelModel& model, double omega);

/// Pole frequencies (rad/s) inside [lo, hi], strictly increasing. For the
/// line models omega = 0 counts as a pole; for the LC model it does not.
///
/// The returned values are bit-identical to the abscissae at which
/// eval_reactances() reports denom == 0 exactly.
std::vector<double> poles_in_interval(const ChannelModel& model, double lo, double hi);

/// 1/sqrt(LC), the positive LC resonance in rad/s.
double resonance_omega(const LcParallel& lc);

/// Pole number `index` of a line of the given length: pi * c0 * index / L.
double line_pole(double wave_speed_m_s, double length_m, long long index);

/// Causal impulse response z21(t) = cos(t / sqrt(LC)) / C * u(t) of the LC
/// two-port, in ohm/s. Throws std::invalid_argument for non-LC models.
double lc_impulse_z21(const ChannelModel& model, double t);

}  // namespace rescap

#endif  // RESCAP_CHANNELS_HPP
