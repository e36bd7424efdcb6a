// Independent checks of the frequency-domain impedance formulas.
//
// The line models are checked against their reflection (bounce) series,
// which converge for Im(omega) < 0; the LC model against a direct time
// integral of its impulse response. Closed forms are evaluated at complex
// frequency as well so both sides live in the region of convergence.

#ifndef RESCAP_TIMEDOMAIN_HPP
#define RESCAP_TIMEDOMAIN_HPP

#include <complex>
#include <string>
#include <vector>

#include "rescap/channels.hpp"

namespace rescap {

using Complex = std::complex<double>;

/// omega = re + i*im, rad/s. The series need im < 0.
struct ComplexFrequency {
    double re = 0.0;
    double im = 0.0;

    Complex value() const { return {re, im}; }
};

struct LineResponse {
    Complex voltage;  // V(omega, x) / I_1, ohms
    Complex current;  // I(omega, x) / I_1
};

/// Partial sums (m = 0 .. terms-1) of the open-line bounce series for a unit
/// current driven into x = 0. Throws std::invalid_argument if s.im >= 0,
/// terms < 1, or x is off the line.
LineResponse open_line_series_vi(const TLineOpenEnds& line, ComplexFrequency s, double x, int terms);

/// Standing-wave closed form -i/sin(kL) [z0 cos k(L-x), i sin k(L-x)].
LineResponse open_line_closed_vi(const TLineOpenEnds& line, Complex omega, double x);

/// Partial sums of the image series for the voltage along a shorted line
/// driven by a unit current at x_transmit. Same preconditions as above.
Complex shorted_line_series_v(const TLineShortedTapped& line, ComplexFrequency s, double x, int terms);

/// i z0 [cos k(L - x - x_T) - cos k(L - |x - x_T|)] / (2 sin kL).
Complex shorted_line_closed_v(const TLineShortedTapped& line, Complex omega, double x);

/// Normalised Helmholtz residual |V'' + k^2 V| / (k^2 |V|) of the closed form
/// at x, using a central second difference with step dx.
double helmholtz_residual(const TLineShortedTapped& line, Complex omega, double x, double dx);

/// Composite-trapezoid value of the integral of z21(t) exp(-i omega t) over
/// [0, horizon]. Throws std::invalid_argument if s.im >= 0,
/// horizon * |s.im| < 20, or dt >= 0.05 sqrt(LC).
Complex lc_transfer_from_impulse(const LcParallel& lc, ComplexFrequency s, double horizon, double dt);

/// i omega L / (1 - LC omega^2) at complex omega.
Complex lc_transfer_closed(const LcParallel& lc, Complex omega);

/// Upper bound on the part of the impulse-response integral beyond
/// `horizon`: exp(im * horizon) / (|im| C).
double lc_tail_bound(const LcParallel& lc, ComplexFrequency s, double horizon);

struct OracleCheck {
    std::string name;
    double error = 0.0;      // worst relative (or absolute, for zeros) error observed
    double tolerance = 0.0;
    bool passed = false;
};

struct OracleModels {
    LcParallel lc;
    TLineOpenEnds open_line;
    TLineShortedTapped shorted_line;
};

/// Runs every series/closed-form comparison at its fixed tolerance.
/// Deterministic: sample points come from a seeded generator.
std::vector<OracleCheck> run_oracle_checks(const OracleModels& models);

}  // namespace rescap

#endif  // RESCAP_TIMEDOMAIN_HPP
