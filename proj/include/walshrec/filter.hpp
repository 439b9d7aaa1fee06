#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "walshrec/walsh.hpp"

namespace walshrec {

/// Dephasing-noise power spectral density on a finite band [omega_min, omega_max].
struct NoiseSpectrum {
    enum class Kind { PowerLaw, Lorentzian, Tabulated };

    Kind kind = Kind::PowerLaw;
    double amplitude = 1.0;
    double exponent = 0.0;   // PowerLaw: S = amplitude * omega^exponent
    double cutoff = 1.0;     // Lorentzian: S = amplitude / (1 + (omega/cutoff)^2)
    std::vector<std::pair<double, double>> table;  // Tabulated: (omega, S), increasing
    double omega_min = 0.0;
    double omega_max = 0.0;

    static NoiseSpectrum power_law(double amplitude, double exponent, double omega_min,
                                   double omega_max);
    static NoiseSpectrum lorentzian(double amplitude, double cutoff, double omega_min,
                                    double omega_max);
    static NoiseSpectrum tabulated(std::vector<std::pair<double, double>> table);

    double operator()(double omega) const;
};

/// Filter table for one Walsh control sequence on an omega*T grid.
struct FilterEvaluation {
    std::uint64_t paley = 0;
    unsigned order = 0;
    unsigned rank = 0;
    unsigned negligibility = 0;
    std::vector<double> omega_t;
    std::vector<double> values;
};

/// Frequency-domain filter function of the Walsh-m control sequence, from the
/// closed product form at reconstruction order n (requires n >= degree(m)):
///   4^(n+1) sin^2(x/2) * prod over set bits j of sin^2(2^(n-j-1) x)
///                      * prod over unset bits j <= n of cos^2(2^(n-j-1) x),
/// with x = omegaT / 2^n. Bit positions j are 1-indexed from the LSB of the
/// Paley label (the convention is pinned by the time-domain oracle in the
/// tests). The value is independent of the choice of n.
double filter_function(std::uint64_t paley_m, unsigned order, double omega_t);

FilterEvaluation evaluate_filter(std::uint64_t paley_m, unsigned order,
                                 std::span<const double> omega_t_grid);

/// Leading low-frequency behaviour: (omegaT)^(2(r(m)+1)) / 4^p(m).
double rolloff(std::uint64_t paley_m, double omega_t);

/// Moment integral of the Walsh function against t^k on [0,1], by exact
/// per-cell antiderivatives. Vanishes whenever k < rank(m).
double annihilation_check(std::uint64_t paley_m, unsigned k);

struct CoherenceResult {
    double chi = 0.0;        // (1/pi) integral of S(w)/w^2 * F_m(wT) dw
    double coherence = 1.0;  // exp(-chi)
};

/// Coherence decay of the sensor under the Walsh-m sequence and the given
/// noise spectrum, by adaptive quadrature over [omega_min, omega_max].
CoherenceResult coherence_decay(std::uint64_t paley_m, unsigned order, double duration,
                                const NoiseSpectrum& spectrum);

/// omega_min below which the integrand of chi is under `drop` times its peak
/// on the band; useful default when no physical infrared cutoff is known.
double default_omega_min(std::uint64_t paley_m, double duration, double omega_max,
                         double drop = 1e-9);

}  // namespace walshrec
