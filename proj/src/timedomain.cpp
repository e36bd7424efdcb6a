#include "rescap/timedomain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rescap {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_convergent(ComplexFrequency s, int terms) {
    if (!(s.im < 0.0)) throw std::invalid_argument("series needs Im(omega) < 0");
    if (terms < 1) throw std::invalid_argument("series needs at least one term");
}

void require_on_line(double x, double length) {
    if (!(x >= 0.0 && x <= length)) throw std::invalid_argument("x must lie on the line");
}

// exp(-i omega d / c0): a pulse delayed by travel distance d.
Complex delay(Complex omega, double distance, double speed) {
    return std::exp(-kI * omega * (distance / speed));
}

double relative_error(Complex got, Complex want, double floor) {
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

}  // namespace

LineResponse open_line_series_vi(const TLineOpenEnds& line, ComplexFrequency s, double x, int terms) {
    require_convergent(s, terms);
    require_on_line(x, line.length_m);
    const Complex w = s.value();
    const double len = line.length_m;
    const double c0 = line.wave_speed_m_s;
    // m-th bounce pair: forward wave after x + 2Lm, backward after 2L(m+1) - x.
    const Complex round_trip = delay(w, 2.0 * len, c0);
    Complex forward = delay(w, x, c0);
    Complex backward = delay(w, 2.0 * len - x, c0);
    Complex v{0.0, 0.0};
    Complex i{0.0, 0.0};
    for (int m = 0; m < terms; ++m) {
        v += forward + backward;
        i += forward - backward;
        forward *= round_trip;
        backward *= round_trip;
    }
    return {line.char_impedance_ohm * v, i};
}

LineResponse open_line_closed_vi(const TLineOpenEnds& line, Complex omega, double x) {
    const Complex k = omega / line.wave_speed_m_s;
    const Complex sin_kl = std::sin(k * line.length_m);
    const double rest = line.length_m - x;
    return {-kI * line.char_impedance_ohm * std::cos(k * rest) / sin_kl, std::sin(k * rest) / sin_kl};
}

Complex shorted_line_series_v(const TLineShortedTapped& line, ComplexFrequency s, double x, int terms) {
    require_convergent(s, terms);
    require_on_line(x, line.length_m);
    const Complex w = s.value();
    const double len = line.length_m;
    const double c0 = line.wave_speed_m_s;
    const double xt = line.x_transmit_m;

    const Complex direct = delay(w, std::abs(x - xt), c0);
    // Four image sources per round trip; shorts invert the voltage.
    const Complex images = delay(w, x - xt + 2.0 * len, c0) + delay(w, 2.0 * len + xt - x, c0) -
                           delay(w, x + xt, c0) - delay(w, 2.0 * len - x - xt, c0);
    const Complex round_trip = delay(w, 2.0 * len, c0);
    Complex train{0.0, 0.0};
    Complex power{1.0, 0.0};
    for (int m = 0; m < terms; ++m) {
        train += power;
        power *= round_trip;
    }
    return 0.5 * line.char_impedance_ohm * (direct + images * train);
}

Complex shorted_line_closed_v(const TLineShortedTapped& line, Complex omega, double x) {
    const Complex k = omega / line.wave_speed_m_s;
    const double len = line.length_m;
    const double xt = line.x_transmit_m;
    const Complex numer = std::cos(k * (len - x - xt)) - std::cos(k * (len - std::abs(x - xt)));
    return kI * line.char_impedance_ohm * numer / (2.0 * std::sin(k * len));
}

double helmholtz_residual(const TLineShortedTapped& line, Complex omega, double x, double dx) {
    const Complex k = omega / line.wave_speed_m_s;
    const Complex v0 = shorted_line_closed_v(line, omega, x);
    const Complex vp = shorted_line_closed_v(line, omega, x + dx);
    const Complex vm = shorted_line_closed_v(line, omega, x - dx);
    const Complex second = (vp - 2.0 * v0 + vm) / (dx * dx);
    return std::abs(second + k * k * v0) / (std::abs(k * k) * std::abs(v0));
}

Complex lc_transfer_from_impulse(const LcParallel& lc, ComplexFrequency s, double horizon, double dt) {
    if (!(s.im < 0.0)) throw std::invalid_argument("impulse integral needs Im(omega) < 0");
    if (!(horizon * std::abs(s.im) >= 20.0)) {
        throw std::invalid_argument("impulse integral horizon too short: need horizon*|Im(omega)| >= 20");
    }
    const double sqrt_lc = std::sqrt(lc.inductance_h * lc.capacitance_f);
    if (!(dt > 0.0) || dt >= 0.05 * sqrt_lc) {
        throw std::invalid_argument("impulse integral step too coarse: need dt < 0.05 sqrt(LC)");
    }
    const ChannelModel model = lc;
    const auto steps = static_cast<long long>(std::ceil(horizon / dt));
    const double h = horizon / static_cast<double>(steps);
    const Complex w = s.value();
    auto integrand = [&](double t) { return lc_impulse_z21(model, t) * std::exp(-kI * w * t); };

    Complex sum = 0.5 * (integrand(0.0) + integrand(horizon));
    for (long long n = 1; n < steps; ++n) sum += integrand(h * static_cast<double>(n));
    return sum * h;
}

Complex lc_transfer_closed(const LcParallel& lc, Complex omega) {
    return kI * omega * lc.inductance_h / (1.0 - lc.inductance_h * lc.capacitance_f * omega * omega);
}

double lc_tail_bound(const LcParallel& lc, ComplexFrequency s, double horizon) {
    return std::exp(s.im * horizon) / (std::abs(s.im) * lc.capacitance_f);
}

std::vector<OracleCheck> run_oracle_checks(const OracleModels& models) {
    std::vector<OracleCheck> checks;
    std::mt19937_64 rng(20240611);
    auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto record = [&](std::string name, double error, double tol) {
        checks.push_back({std::move(name), error, tol, error <= tol});
    };

    {
        const TLineOpenEnds& line = models.open_line;
        const double scale = line.wave_speed_m_s / line.length_m;
        const ComplexFrequency s{0.0, -0.5 * scale};
        double worst = 0.0;
        for (int n = 0; n < 20; ++n) {
            const ComplexFrequency p{uniform(0.0, 5000.0) * scale, s.im};
            const double x = uniform(0.0, line.length_m);
            const LineResponse series = open_line_series_vi(line, p, x, 64);
            const LineResponse closed = open_line_closed_vi(line, p.value(), x);
            worst = std::max(worst, relative_error(series.voltage, closed.voltage, 1e-12 * line.char_impedance_ohm));
            worst = std::max(worst, relative_error(series.current, closed.current, 1e-12));
        }
        record("open line: bounce series (64 terms) vs standing-wave form", worst, 1e-6);

        const ComplexFrequency p{3.7 * scale, s.im};
        const Complex single = open_line_series_vi(line, p, 0.0, 1).voltage;
        const Complex first_term =
            line.char_impedance_ohm * (1.0 + delay(p.value(), 2.0 * line.length_m, line.wave_speed_m_s));
        record("open line: single-term series equals first bounce pair", std::abs(single - first_term), 0.0);

        const double decay = std::exp(2.0 * line.length_m * s.im / line.wave_speed_m_s);
        double end_current = 0.0;
        for (int terms : {8, 16, 32, 64}) {
            end_current = std::max(end_current, std::abs(open_line_series_vi(line, p, line.length_m, terms).current));
        }
        record("open line: current vanishes at the open end x = L", end_current,
               2.0 * std::pow(decay, 8) / (1.0 - decay) + 1e-12);

        double growth = 0.0;
        for (int m : {8, 16, 32}) {
            const double x = uniform(0.0, line.length_m);
            const Complex fm = open_line_series_vi(line, p, x, m).voltage;
            const Complex f2m = open_line_series_vi(line, p, x, 2 * m).voltage;
            const double bound = std::abs(fm) * std::pow(decay, m) * 2.0;
            growth = std::max(growth, std::abs(f2m - fm) / bound);
        }
        record("open line: series increments shrink geometrically", growth, 1.0);
    }

    {
        const TLineShortedTapped& line = models.shorted_line;
        const double scale = line.wave_speed_m_s / line.length_m;
        const double pole_spacing = std::numbers::pi * scale;
        const ComplexFrequency s{0.0, -1e-3 * scale};
        const int terms = 20000;

        double worst = 0.0;
        for (int n = 0; n < 20; ++n) {
            const ComplexFrequency p{uniform(0.0, 5000.0) * scale, s.im};
            const double x = uniform(0.0, line.length_m);
            worst = std::max(worst, relative_error(shorted_line_series_v(line, p, x, terms),
                                                   shorted_line_closed_v(line, p.value(), x),
                                                   1e-9 * line.char_impedance_ohm));
        }
        record("shorted line: image series vs closed form", worst, 1e-4);

        // Approaching the real axis, Im V(x_R) tends to the mutual reactance.
        const ChannelModel model = line;
        double axis = 0.0;
        for (int n = 0; n < 20; ++n) {
            const double turns = std::floor(uniform(1.0, 1500.0)) + uniform(0.2, 0.8);
            const ComplexFrequency p{turns * pole_spacing, s.im};
            const Complex v = shorted_line_series_v(line, p, line.x_receive_m, terms);
            const ReactanceSample z = eval_reactances(model, p.re);
            const double want = z.z_rt();
            axis = std::max(axis, std::abs(v.imag() - want) / std::max(std::abs(want), 1e-9 * line.char_impedance_ohm));
        }
        record("shorted line: series near real axis vs mutual reactance", axis, 1e-4);

        const double tail = line.char_impedance_ohm * 2.0 *
                            std::pow(std::exp(2.0 * line.length_m * s.im / line.wave_speed_m_s), terms) /
                            (1.0 - std::exp(2.0 * line.length_m * s.im / line.wave_speed_m_s));
        double ends = 0.0;
        double closed_ends = 0.0;
        for (int n = 0; n < 5; ++n) {
            const ComplexFrequency p{uniform(0.5, 5000.0) * scale, s.im};
            for (double x : {0.0, line.length_m}) {
                ends = std::max(ends, std::abs(shorted_line_series_v(line, p, x, terms)));
                // Residual in units of the rounding error carried by the phase kL.
                const Complex k = p.value() / line.wave_speed_m_s;
                const double ulp_scale = std::numeric_limits<double>::epsilon() * std::abs(k) * line.length_m *
                                         line.char_impedance_ohm / std::abs(std::sin(k * line.length_m));
                closed_ends = std::max(closed_ends, std::abs(shorted_line_closed_v(line, p.value(), x)) / ulp_scale);
            }
        }
        record("shorted line: series voltage vanishes at the shorts", ends, tail + 1e-9 * line.char_impedance_ohm);
        record("shorted line: closed-form voltage vanishes at the shorts (rounding units)", closed_ends, 16.0);

        const double dx = line.length_m * 1e-4;
        double helm = 0.0;
        for (int n = 0; n < 20; ++n) {
            const Complex w{uniform(0.5, 20.0) * scale, -0.05 * scale};
            double x = uniform(dx, line.length_m - dx);
            if (std::abs(x - line.x_transmit_m) < 4.0 * dx) continue;
            helm = std::max(helm, helmholtz_residual(line, w, x, dx));
        }
        record("shorted line: closed form satisfies the Helmholtz equation", helm, 1e-3);

        double zero_taps = 0.0;
        for (auto [xt, xr] : {std::pair{0.0, line.x_receive_m}, std::pair{line.length_m, line.x_receive_m},
                              std::pair{line.x_transmit_m, 0.0}, std::pair{line.x_transmit_m, line.length_m}}) {
            TLineShortedTapped tapped = line;
            tapped.x_transmit_m = xt;
            tapped.x_receive_m = xr;
            for (int n = 0; n < 10; ++n) {
                const double w = uniform(0.0, 5000.0) * scale;
                zero_taps = std::max(zero_taps, std::abs(eval_reactances(tapped, w).num_rt));
            }
        }
        record("shorted line: mutual reactance is zero for a tap at a short", zero_taps, 0.0);
    }

    {
        const LcParallel& lc = models.lc;
        const double w0 = resonance_omega(lc);
        const double dt = 0.01 / w0;
        double worst = 0.0;
        for (ComplexFrequency s : {ComplexFrequency{w0, -0.01 * w0}, ComplexFrequency{0.0, -w0},
                                   ComplexFrequency{0.5 * w0, -0.1 * w0}}) {
            const double horizon = 25.0 / std::abs(s.im);
            worst = std::max(worst, relative_error(lc_transfer_from_impulse(lc, s, horizon, dt),
                                                   lc_transfer_closed(lc, s.value()), 0.0));
        }
        record("LC: impulse-response integral vs transfer function", worst, 1e-3);
    }

    return checks;
}

}  // namespace rescap
