// Receiver circuit and noise model for a current-driven lossless two-port
// terminated in a load resistor and read by an infinite-impedance amplifier.
//
// All per-frequency quantities are evaluated from a ReactanceSample in
// homogeneous form (numerators and denominator appear with equal total
// degree), so they are finite at poles and independent of how the sample is
// scaled.

#ifndef RESCAP_LINKMODEL_HPP
#define RESCAP_LINKMODEL_HPP

#include "rescap/channels.hpp"
#include "rescap/grid.hpp"

namespace rescap {

inline constexpr double kBoltzmannRounded = 1.38e-23;  // J/K, value used for regression fixtures
inline constexpr double kBoltzmannSi = 1.380649e-23;   // J/K, exact SI

struct ReceiverParams {
    double load_resistance_ohm = 0.0;
    double amp_gain = 0.0;
    double amp_noise_density = 0.0;  // Q_A, V^2/Hz
    double temperature_k = 0.0;
    double boltzmann = kBoltzmannRounded;

    /// 2 k_B T G^2 R_L + Q_A: receiver noise density seen at a pole.
    double pole_noise_density() const;
    double johnson_density() const { return 2.0 * boltzmann * temperature_k * load_resistance_ohm; }

    bool operator==(const ReceiverParams&) const = default;
};

/// Throws std::invalid_argument on R_L <= 0, G <= 0, Q_A < 0 or T < 0.
/// Does not reject the noise-free case; operations that divide by the
/// noise do that themselves.
void validate(const ReceiverParams& rx);

/// Amplifier noise referenced to 50 ohm at temperature T with a 9 dB excess:
/// 2 k_B T * 50 * 10^0.9.
double default_amp_noise_density(double temperature_k, double boltzmann = kBoltzmannRounded);

/// |V_R / I_T| = R_L |Z_RT| / |Z_R + R_L| (ohms).
double transfer_magnitude(const ReactanceSample& z, const ReceiverParams& rx);

/// SNR per unit transmit-current spectral density. Throws std::domain_error
/// when the receiver noise vanishes at this frequency.
double alpha(const ReactanceSample& z, const ReceiverParams& rx);

/// Delivered power per unit transmit-current spectral density (ohms); >= 0.
double beta(const ReactanceSample& z, const ReceiverParams& rx);

/// alpha/beta evaluated as
///   (G^2 R_L / 2) / [(2 G^2 k_B T R_L + Q_A) - 2 G^2 k_B T R_L^3 d^2 / (num_r^2 + R_L^2 d^2)],
/// which never forms an intermediate infinity and equals its pole limit when
/// d == 0. The expression does not involve num_rt, so it is returned even
/// where num_rt == 0 and alpha/beta would be 0/0.
double ratio_alpha_beta(const ReactanceSample& z, const ReceiverParams& rx);

struct OutputPsd {
    double signal = 0.0;
    double johnson = 0.0;
    double amplifier = 0.0;

    double total() const { return signal + johnson + amplifier; }
    double noise() const { return johnson + amplifier; }
};

/// Amplifier-output spectral density (V^2/Hz) for transmit-current density
/// s_it (A^2/Hz), split into its three terms.
OutputPsd output_psd(const ReactanceSample& z, const ReceiverParams& rx, double s_it);

/// Johnson-noise penalty factor psi in (0, 1]: Q_A / (Q_A + Johnson share).
double johnson_penalty(const ReactanceSample& z, const ReceiverParams& rx);

// Convenience overloads evaluating the model first.
double transfer_magnitude(const ChannelModel& model, const ReceiverParams& rx, double omega);
double alpha(const ChannelModel& model, const ReceiverParams& rx, double omega);
double beta(const ChannelModel& model, const ReceiverParams& rx, double omega);
double ratio_alpha_beta(const ChannelModel& model, const ReceiverParams& rx, double omega);
OutputPsd output_psd(const ChannelModel& model, const ReceiverParams& rx, double omega, double s_it);

/// Channel-independent capacity ceiling B log2(1 + P_T G^2 R_L / (2 B Q_A)),
/// in bits/s. Throws std::domain_error for Q_A == 0 with P_T > 0.
double capacity_upper_bound(const ReceiverParams& rx, const Band& band, double p_t);

/// Mutual information (bits/s) of the transmit density that is optimal when
/// Johnson noise is ignored, integrated over `grid`.
double capacity_lower_bound(const ChannelModel& model, const ReceiverParams& rx, const FrequencyGrid& grid,
                            double p_t);

struct LowerBoundEstimate {
    double capacity_bps = 0.0;
    double refined_capacity_bps = 0.0;
    bool grid_too_coarse = false;  // refinement moved the result by > 0.1 %
};

/// Lower bound on the grid from `spec` and on a grid with twice the base
/// points; flags the estimate when the two disagree by more than 0.1 %.
LowerBoundEstimate capacity_lower_bound_checked(const ChannelModel& model, const ReceiverParams& rx,
                                                const Band& band, double p_t, const GridSpec& spec);

}  // namespace rescap

#endif  // RESCAP_LINKMODEL_HPP
