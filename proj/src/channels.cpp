#include "rescap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rescap {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + " must be finite and > 0");
    }
}

void require_tap(double x, double length, const char* what) {
    if (!(x >= 0.0 && x <= length)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, length]");
    }
}

// Electrical length kL split as index * pi + delta, with delta measured from a
// pole value produced by line_pole(). Evaluating sin/cos through delta makes
// sin(kL) exactly zero at the abscissae returned by poles_in_interval().
struct LinePhase {
    double delta;
    double sign;  // (-1)^index
};

LinePhase reduce_line_phase(double omega, double wave_speed, double length) {
    const double turns = omega * length / (std::numbers::pi * wave_speed);
    if (!(std::abs(turns) < 1e15)) {
        return {omega * length / wave_speed, 1.0};
    }
    const long long index = std::llround(turns);
    const double pole = line_pole(wave_speed, length, index);
    const double delta = (omega - pole) * length / wave_speed;
    return {delta, (index % 2 == 0) ? 1.0 : -1.0};
}

ReactanceSample eval_lc(const LcParallel& lc, double omega) {
    // 1 - LC w^2 written as (1 - w/w0)(1 + w/w0) so it vanishes exactly at w0.
    const double ratio = omega / resonance_omega(lc);
    const double num = omega * lc.inductance_h;
    return {num, num, num, (1.0 - ratio) * (1.0 + ratio), omega};
}

ReactanceSample eval_open(const TLineOpenEnds& line, double omega) {
    const auto [delta, sign] = reduce_line_phase(omega, line.wave_speed_m_s, line.length_m);
    const double cos_kl = sign * std::cos(delta);
    const double sin_kl = sign * std::sin(delta);
    const double z0 = line.char_impedance_ohm;
    return {-z0 * cos_kl, -z0 * cos_kl, -z0, sin_kl, omega};
}

ReactanceSample eval_shorted(const TLineShortedTapped& line, double omega) {
    const auto [delta, sign] = reduce_line_phase(omega, line.wave_speed_m_s, line.length_m);
    const double k = omega / line.wave_speed_m_s;
    const double len = line.length_m;
    const double z0 = line.char_impedance_ohm;

    // z0/2 [cos k(L - 2x) - cos kL] == z0 sin(kx) sin(k(L - x)); the product
    // form keeps the structural zeros at x = 0 and x = L exact.
    auto self = [&](double x) { return z0 * std::sin(k * x) * std::sin(k * (len - x)); };
    const double x_lo = std::min(line.x_transmit_m, line.x_receive_m);
    const double x_hi = std::max(line.x_transmit_m, line.x_receive_m);
    const double mutual = z0 * std::sin(k * x_lo) * std::sin(k * (len - x_hi));

    return {self(line.x_transmit_m), self(line.x_receive_m), mutual, sign * std::sin(delta), omega};
}

}  // namespace

void validate(const ChannelModel& model) {
    std::visit(Overloaded{
                   [](const LcParallel& lc) {
                       require_positive(lc.inductance_h, "inductance");
                       require_positive(lc.capacitance_f, "capacitance");
                   },
                   [](const TLineOpenEnds& line) {
                       require_positive(line.char_impedance_ohm, "characteristic impedance");
                       require_positive(line.wave_speed_m_s, "wave speed");
                       require_positive(line.length_m, "line length");
                   },
                   [](const TLineShortedTapped& line) {
                       require_positive(line.char_impedance_ohm, "characteristic impedance");
                       require_positive(line.wave_speed_m_s, "wave speed");
                       require_positive(line.length_m, "line length");
                       require_tap(line.x_transmit_m, line.length_m, "x_transmit");
                       require_tap(line.x_receive_m, line.length_m, "x_receive");
                   },
               },
               model);
}

const char* model_name(const ChannelModel& model) {
    return std::visit(Overloaded{
                          [](const LcParallel&) { return "lc_parallel"; },
                          [](const TLineOpenEnds&) { return "tline_open"; },
                          [](const TLineShortedTapped&) { return "tline_shorted"; },
                      },
                      model);
}

double resonance_omega(const LcParallel& lc) {
    return 1.0 / std::sqrt(lc.inductance_h * lc.capacitance_f);
}

double line_pole(double wave_speed_m_s, double length_m, long long index) {
    return std::numbers::pi * wave_speed_m_s * static_cast<double>(index) / length_m;
}

ReactanceSample eval_reactances(const ChannelModel& model, double omega) {
    return std::visit(Overloaded{
                          [omega](const LcParallel& lc) { return eval_lc(lc, omega); },
                          [omega](const TLineOpenEnds& line) { return eval_open(line, omega); },
                          [omega](const TLineShortedTapped& line) { return eval_shorted(line, omega); },
                      },
                      model);
}

std::vector<double> poles_in_interval(const ChannelModel& model, double lo, double hi) {
    if (!(lo >= 0.0 && lo < hi)) {
        throw std::invalid_argument("poles_in_interval: need 0 <= lo < hi");
    }
    std::vector<double> poles;
    if (const auto* lc = std::get_if<LcParallel>(&model)) {
        const double w0 = resonance_omega(*lc);
        if (w0 >= lo && w0 <= hi) poles.push_back(w0);
        return poles;
    }

    const auto [speed, length] = std::visit(
        Overloaded{
            [](const LcParallel&) { return std::pair{0.0, 0.0}; },
            [](const TLineOpenEnds& l) { return std::pair{l.wave_speed_m_s, l.length_m}; },
            [](const TLineShortedTapped& l) { return std::pair{l.wave_speed_m_s, l.length_m}; },
        },
        model);
    const double spacing = std::numbers::pi * speed / length;
    const auto first = static_cast<long long>(std::floor(lo / spacing)) - 1;
    const auto last = static_cast<long long>(std::ceil(hi / spacing)) + 1;
    for (long long index = std::max(first, 0LL); index <= last; ++index) {
        const double pole = line_pole(speed, length, index);
        if (pole >= lo && pole <= hi) poles.push_back(pole);
    }
    return poles;
}

double lc_impulse_z21(const ChannelModel& model, double t) {
    const auto* lc = std::get_if<LcParallel>(&model);
    if (lc == nullptr) {
        throw std::invalid_argument("lc_impulse_z21: model is not an LC two-port");
    }
    if (t < 0.0) return 0.0;
    return std::cos(t * resonance_omega(*lc)) / lc->capacitance_f;
}

}  // namespace rescap
