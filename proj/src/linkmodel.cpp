#include "rescap/linkmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rescap {

namespace {

// |Z_R + R_L|^2 scaled by denom^2: num_r^2 + R_L^2 d^2.
double divider_norm(const ReactanceSample& z, const ReceiverParams& rx) {
    const double rd = rx.load_resistance_ohm * z.denom;
    return z.num_r * z.num_r + rd * rd;
}

// Fraction Z_R''^2 / (Z_R''^2 + R_L^2) of the Johnson voltage that reaches
// the amplifier. A sample with num_r == denom == 0 is treated as a pole.
double johnson_share(const ReactanceSample& z, const ReceiverParams& rx) {
    const double norm = divider_norm(z, rx);
    if (norm == 0.0) return 1.0;
    return z.num_r * z.num_r / norm;
}

// Output-referred Johnson noise density G^2 2 k_B T R_L Z_R''^2/(Z_R''^2 + R_L^2).
double johnson_output(const ReactanceSample& z, const ReceiverParams& rx) {
    return rx.amp_gain * rx.amp_gain * rx.johnson_density() * johnson_share(z, rx);
}

double noise_output(const ReactanceSample& z, const ReceiverParams& rx) {
    const double noise = johnson_output(z, rx) + rx.amp_noise_density;
    if (!(noise > 0.0)) {
        throw std::domain_error("receiver noise density is zero; SNR is unbounded");
    }
    return noise;
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double ReceiverParams::pole_noise_density() const {
    return amp_gain * amp_gain * johnson_density() + amp_noise_density;
}

void validate(const ReceiverParams& rx) {
    require(rx.load_resistance_ohm > 0.0 && std::isfinite(rx.load_resistance_ohm),
            "receiver: load resistance must be finite and > 0");
    require(rx.amp_gain > 0.0 && std::isfinite(rx.amp_gain), "receiver: amplifier gain must be finite and > 0");
    require(rx.amp_noise_density >= 0.0 && std::isfinite(rx.amp_noise_density),
            "receiver: amplifier noise density must be finite and >= 0");
    require(rx.temperature_k >= 0.0 && std::isfinite(rx.temperature_k), "receiver: temperature must be >= 0");
    require(rx.boltzmann > 0.0 && std::isfinite(rx.boltzmann), "receiver: Boltzmann constant must be > 0");
}

double default_amp_noise_density(double temperature_k, double boltzmann) {
    return 2.0 * boltzmann * temperature_k * 50.0 * std::pow(10.0, 0.9);
}

double transfer_magnitude(const ReactanceSample& z, const ReceiverParams& rx) {
    const double norm = std::hypot(z.num_r, rx.load_resistance_ohm * z.denom);
    if (norm == 0.0) return 0.0;
    return rx.load_resistance_ohm * std::abs(z.num_rt) / norm;
}

double beta(const ReactanceSample& z, const ReceiverParams& rx) {
    const double norm = divider_norm(z, rx);
    if (norm == 0.0) return 0.0;
    return 2.0 * rx.load_resistance_ohm * z.num_rt * z.num_rt / norm;
}

double alpha(const ReactanceSample& z, const ReceiverParams& rx) {
    const double noise = noise_output(z, rx);
    const double norm = divider_norm(z, rx);
    if (norm == 0.0) return 0.0;
    const double gain_rl = rx.amp_gain * rx.load_resistance_ohm;
    return gain_rl * gain_rl * z.num_rt * z.num_rt / (norm * noise);
}

double ratio_alpha_beta(const ReactanceSample& z, const ReceiverParams& rx) {
    // The bracket (2 G^2 k_B T R_L + Q_A) - 2 G^2 k_B T R_L^3 d^2/(num_r^2 + R_L^2 d^2)
    // is summed as Q_A + Johnson share to avoid cancellation.
    return 0.5 * rx.amp_gain * rx.amp_gain * rx.load_resistance_ohm / noise_output(z, rx);
}

OutputPsd output_psd(const ReactanceSample& z, const ReceiverParams& rx, double s_it) {
    if (!(s_it >= 0.0)) throw std::invalid_argument("output_psd: s_it must be >= 0");
    OutputPsd psd;
    const double norm = divider_norm(z, rx);
    if (norm != 0.0 && s_it > 0.0) {
        const double gain_rl = rx.amp_gain * rx.load_resistance_ohm;
        psd.signal = gain_rl * gain_rl * z.num_rt * z.num_rt * s_it / norm;
    }
    psd.johnson = johnson_output(z, rx);
    psd.amplifier = rx.amp_noise_density;
    return psd;
}

double johnson_penalty(const ReactanceSample& z, const ReceiverParams& rx) {
    return rx.amp_noise_density / noise_output(z, rx);
}

double transfer_magnitude(const ChannelModel& model, const ReceiverParams& rx, double omega) {
    return transfer_magnitude(eval_reactances(model, omega), rx);
}

double alpha(const ChannelModel& model, const ReceiverParams& rx, double omega) {
    return alpha(eval_reactances(model, omega), rx);
}

double beta(const ChannelModel& model, const ReceiverParams& rx, double omega) {
    return beta(eval_reactances(model, omega), rx);
}

double ratio_alpha_beta(const ChannelModel& model, const ReceiverParams& rx, double omega) {
    return ratio_alpha_beta(eval_reactances(model, omega), rx);
}

OutputPsd output_psd(const ChannelModel& model, const ReceiverParams& rx, double omega, double s_it) {
    return output_psd(eval_reactances(model, omega), rx, s_it);
}

double capacity_upper_bound(const ReceiverParams& rx, const Band& band, double p_t) {
    validate(rx);
    validate(band);
    if (!(p_t >= 0.0)) throw std::invalid_argument("capacity_upper_bound: p_t must be >= 0");
    if (p_t == 0.0) return 0.0;
    if (rx.amp_noise_density == 0.0) {
        throw std::domain_error("capacity_upper_bound: unbounded for zero amplifier noise");
    }
    const double snr =
        p_t * rx.amp_gain * rx.amp_gain * rx.load_resistance_ohm / (2.0 * band.bandwidth_hz * rx.amp_noise_density);
    return band.bandwidth_hz * std::log1p(snr) / std::numbers::ln2;
}

double capacity_lower_bound(const ChannelModel& model, const ReceiverParams& rx, const FrequencyGrid& grid,
                            double p_t) {
    validate(rx);
    if (!(p_t >= 0.0)) throw std::invalid_argument("capacity_lower_bound: p_t must be >= 0");
    // SNR of the Johnson-blind allocation: P_T G^2 R_L / (2B) / (Q_A + Johnson share).
    const double signal = p_t * rx.amp_gain * rx.amp_gain * rx.load_resistance_ohm / (2.0 * grid.band.bandwidth_hz);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const ReactanceSample z = eval_reactances(model, grid.nodes[i]);
        sum += grid.weights[i] * std::log1p(signal / noise_output(z, rx));
    }
    return sum / (2.0 * std::numbers::pi * std::numbers::ln2);
}

LowerBoundEstimate capacity_lower_bound_checked(const ChannelModel& model, const ReceiverParams& rx,
                                                const Band& band, double p_t, const GridSpec& spec) {
    LowerBoundEstimate out;
    out.capacity_bps = capacity_lower_bound(model, rx, build_grid(band, model, spec), p_t);
    GridSpec finer = spec;
    finer.base_points = 2 * spec.base_points - 1;
    out.refined_capacity_bps = capacity_lower_bound(model, rx, build_grid(band, model, finer), p_t);
    const double scale = std::max(std::abs(out.refined_capacity_bps), 1e-300);
    out.grid_too_coarse = std::abs(out.refined_capacity_bps - out.capacity_bps) / scale > 1e-3;
    return out;
}

}  // namespace rescap
