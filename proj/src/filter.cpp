#include "walshrec/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "walshrec/negligibility.hpp"
#include "walshrec/quadrature.hpp"

namespace walshrec {

NoiseSpectrum NoiseSpectrum::power_law(double amplitude, double exponent, double omega_min,
                                       double omega_max) {
    if (!(amplitude >= 0.0)) throw std::invalid_argument("NoiseSpectrum: amplitude must be >= 0");
    if (!(omega_min > 0.0 && omega_min < omega_max && std::isfinite(omega_max)))
        throw std::invalid_argument("NoiseSpectrum: need 0 < omega_min < omega_max < inf");
    NoiseSpectrum s;
    s.kind = Kind::PowerLaw;
    s.amplitude = amplitude;
    s.exponent = exponent;
    s.omega_min = omega_min;
    s.omega_max = omega_max;
    return s;
}

NoiseSpectrum NoiseSpectrum::lorentzian(double amplitude, double cutoff, double omega_min,
                                        double omega_max) {
    if (!(amplitude >= 0.0 && cutoff > 0.0))
        throw std::invalid_argument("NoiseSpectrum: amplitude >= 0, cutoff > 0 required");
    if (!(omega_min > 0.0 && omega_min < omega_max && std::isfinite(omega_max)))
        throw std::invalid_argument("NoiseSpectrum: need 0 < omega_min < omega_max < inf");
    NoiseSpectrum s;
    s.kind = Kind::Lorentzian;
    s.amplitude = amplitude;
    s.cutoff = cutoff;
    s.omega_min = omega_min;
    s.omega_max = omega_max;
    return s;
}

NoiseSpectrum NoiseSpectrum::tabulated(std::vector<std::pair<double, double>> table) {
    if (table.size() < 2) throw std::invalid_argument("NoiseSpectrum: table needs >= 2 points");
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].second < 0.0)
            throw std::invalid_argument("NoiseSpectrum: table values must be >= 0");
        if (i > 0 && !(table[i].first > table[i - 1].first))
            throw std::invalid_argument("NoiseSpectrum: table grid must be increasing");
    }
    if (!(table.front().first > 0.0))
        throw std::invalid_argument("NoiseSpectrum: omega grid must be positive");
    NoiseSpectrum s;
    s.kind = Kind::Tabulated;
    s.omega_min = table.front().first;
    s.omega_max = table.back().first;
    s.table = std::move(table);
    return s;
}

double NoiseSpectrum::operator()(double omega) const {
    switch (kind) {
        case Kind::PowerLaw:
            return amplitude * std::pow(omega, exponent);
        case Kind::Lorentzian: {
            double r = omega / cutoff;
            return amplitude / (1.0 + r * r);
        }
        case Kind::Tabulated: {
            if (omega <= table.front().first) return table.front().second;
            if (omega >= table.back().first) return table.back().second;
            auto it = std::lower_bound(table.begin(), table.end(), omega,
                                       [](const auto& p, double w) { return p.first < w; });
            auto lo = *(it - 1);
            auto hi = *it;
            double u = (omega - lo.first) / (hi.first - lo.first);
            return lo.second + u * (hi.second - lo.second);
        }
    }
    return 0.0;
}

double filter_function(std::uint64_t paley_m, unsigned order, double omega_t) {
    if (order < degree(paley_m))
        throw std::invalid_argument("filter_function: order below the index degree");
    if (!(omega_t >= 0.0)) throw std::domain_error("filter_function: omegaT must be >= 0");
    double x = std::ldexp(omega_t, -static_cast<int>(order));  // omega * T_min
    double s = std::sin(0.5 * x);
    double value = std::exp2(2.0 * (order + 1.0)) * s * s;
    for (unsigned j = 1; j <= order; ++j) {
        double arg = std::ldexp(x, static_cast<int>(order) - static_cast<int>(j) - 1);
        double f = (paley_m >> (j - 1)) & 1 ? std::sin(arg) : std::cos(arg);
        value *= f * f;
    }
    return value;
}

FilterEvaluation evaluate_filter(std::uint64_t paley_m, unsigned order,
                                 std::span<const double> omega_t_grid) {
    FilterEvaluation eval;
    eval.paley = paley_m;
    eval.order = order;
    eval.rank = rank(paley_m);
    eval.negligibility = negligibility(paley_m);
    eval.omega_t.assign(omega_t_grid.begin(), omega_t_grid.end());
    eval.values.reserve(omega_t_grid.size());
    for (double wt : omega_t_grid) eval.values.push_back(filter_function(paley_m, order, wt));
    return eval;
}

double rolloff(std::uint64_t paley_m, double omega_t) {
    double r = rank(paley_m);
    double p = negligibility(paley_m);
    return std::pow(omega_t, 2.0 * (r + 1.0)) * std::exp2(-2.0 * p);
}

double annihilation_check(std::uint64_t paley_m, unsigned k) {
    unsigned d = degree(paley_m);
    std::uint64_t cells = std::uint64_t{1} << d;
    double h = 1.0 / static_cast<double>(cells);
    double sum = 0.0, comp = 0.0;  // Kahan: the terms cancel to ~0 for k < rank
    for (std::uint64_t i = 0; i < cells; ++i) {
        double a = static_cast<double>(i) * h;
        double b = a + h;
        double term = walsh_cell_sign(paley(paley_m), i, d) *
                      (std::pow(b, k + 1.0) - std::pow(a, k + 1.0)) / (k + 1.0);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

CoherenceResult coherence_decay(std::uint64_t paley_m, unsigned order, double duration,
                                const NoiseSpectrum& spectrum) {
    if (!(duration > 0.0)) throw std::invalid_argument("coherence_decay: duration must be > 0");
    auto integrand = [&](double w) {
        return spectrum(w) / (w * w) * filter_function(paley_m, order, w * duration);
    };
    // panels sized to resolve the fastest oscillation, sin^2(w T / 4)
    double span = spectrum.omega_max - spectrum.omega_min;
    auto panels = static_cast<unsigned>(
        std::min(1e6, std::max(32.0, std::ceil(span * duration / std::numbers::pi))));
    double integral = integrate_adaptive(integrand, spectrum.omega_min, spectrum.omega_max,
                                         1e-14, 1e-9, panels);
    CoherenceResult r;
    r.chi = integral / std::numbers::pi;
    r.coherence = std::exp(-r.chi);
    return r;
}

double default_omega_min(std::uint64_t paley_m, double duration, double omega_max, double drop) {
    if (!(omega_max > 0.0)) throw std::invalid_argument("default_omega_min: omega_max must be > 0");
    unsigned d = degree(paley_m);
    auto integrand = [&](double w) {
        return filter_function(paley_m, d, w * duration) / (w * w);
    };
    // flat-noise integrand shape; find its peak on a log grid of the band
    double lo = omega_max * 1e-12;
    double peak = 0.0, w_peak = lo;
    for (int i = 0; i <= 400; ++i) {
        double w = lo * std::pow(omega_max / lo, i / 400.0);
        double g = integrand(w);
        if (g > peak) {
            peak = g;
            w_peak = w;
        }
    }
    // walk down from the peak until the integrand has dropped enough;
    // rank-0 sequences have no infrared suppression, so floor at `lo`
    double w = w_peak;
    while (w > lo && integrand(w) > drop * peak) w *= 0.5;
    return w;
}

}  // namespace walshrec
