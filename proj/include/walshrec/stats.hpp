#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "walshrec/sensor.hpp"
#include "walshrec/walsh.hpp"

namespace walshrec {

/// Information carried by M repetitions about the field amplitude behind one
/// Walsh coefficient: M * gamma^2 * T^2 * v^2 * f_hat^2.
double fisher_information(double gamma, double duration, double visibility, double f_hat,
                          std::uint64_t shots);

struct Sensitivity {
    double eta = 0.0;    // 1 / (sqrt(M) gamma T v |f_hat|)
    double eta0 = 0.0;   // shot-normalized: 1 / (gamma T v |f_hat|)
    bool infinite = false;  // f_hat == 0: no signal, no sensitivity
};

Sensitivity sensitivity(double gamma, double duration, double visibility, double f_hat,
                        std::uint64_t shots);

/// Standard deviation of one estimated coefficient: 1 / (sqrt(M) T gamma v).
double coefficient_std(double gamma, double duration, double visibility, std::uint64_t shots);

/// Gaussian band around the reconstructed signal. The variance is the sum of
/// per-coefficient estimation variances and does not depend on t.
struct ReconstructionEnvelope {
    WalshSpectrum spectrum;                // estimated mean spectrum
    std::vector<std::uint64_t> indices;    // measured set J
    double variance = 0.0;                 // (1/(M T^2 g^2)) sum 1/v^2, inflated
    double inflation = 1.0;                // optional systematic-error factor

    double mean(double t) const;           // partial sum over J at t
    double sigma() const;
};

/// variance = inflation * (1/(M T^2 gamma^2)) * sum over J of 1/v^2.
ReconstructionEnvelope envelope(const WalshSpectrum& estimated,
                                std::span<const std::uint64_t> indices, std::uint64_t shots,
                                const SensorConfig& cfg, const VisibilityModel& vis,
                                double variance_inflation = 1.0);

/// Statistical variance plus worst-case truncation error of an order-n cut.
struct ErrorBudget {
    double variance = 0.0;
    double truncation = 0.0;
};

ErrorBudget total_error_report(unsigned order, const ReconstructionEnvelope& env,
                               double sup_deriv);

}  // namespace walshrec
