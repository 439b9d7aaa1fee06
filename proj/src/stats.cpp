#include "walshrec/stats.hpp"

#include <cmath>
#include <stdexcept>

#include "walshrec/compression.hpp"

namespace walshrec {

namespace {

void check_positive(double gamma, double duration, double visibility) {
    if (!(gamma > 0.0 && duration > 0.0))
        throw std::invalid_argument("stats: gamma and duration must be > 0");
    if (!(visibility > 0.0 && visibility <= 1.0))
        throw std::invalid_argument("stats: visibility must be in (0,1]");
}

}  // namespace

double fisher_information(double gamma, double duration, double visibility, double f_hat,
                          std::uint64_t shots) {
    check_positive(gamma, duration, visibility);
    double gtv = gamma * duration * visibility * f_hat;
    return static_cast<double>(shots) * gtv * gtv;
}

Sensitivity sensitivity(double gamma, double duration, double visibility, double f_hat,
                        std::uint64_t shots) {
    check_positive(gamma, duration, visibility);
    Sensitivity s;
    if (f_hat == 0.0) {
        s.infinite = true;
        s.eta = s.eta0 = std::numeric_limits<double>::infinity();
        return s;
    }
    s.eta0 = 1.0 / (gamma * duration * visibility * std::abs(f_hat));
    s.eta = s.eta0 / std::sqrt(static_cast<double>(shots));
    return s;
}

double coefficient_std(double gamma, double duration, double visibility, std::uint64_t shots) {
    check_positive(gamma, duration, visibility);
    if (shots == 0) throw std::invalid_argument("coefficient_std: shots must be >= 1");
    return 1.0 / (std::sqrt(static_cast<double>(shots)) * duration * gamma * visibility);
}

double ReconstructionEnvelope::mean(double t) const {
    return partial_sum(spectrum, indices, t);
}

double ReconstructionEnvelope::sigma() const { return std::sqrt(variance); }

ReconstructionEnvelope envelope(const WalshSpectrum& estimated,
                                std::span<const std::uint64_t> indices, std::uint64_t shots,
                                const SensorConfig& cfg, const VisibilityModel& vis,
                                double variance_inflation) {
    if (indices.empty()) throw std::invalid_argument("envelope: empty index set");
    if (!(variance_inflation >= 1.0))
        throw std::invalid_argument("envelope: inflation must be >= 1");
    ReconstructionEnvelope env;
    env.spectrum = estimated;
    env.indices.assign(indices.begin(), indices.end());
    env.inflation = variance_inflation;
    double inv_v2 = 0.0;
    for (std::uint64_t m : indices) {
        double v = vis.visibility(paley(m), cfg.duration);
        inv_v2 += 1.0 / (v * v);
    }
    env.variance = variance_inflation * inv_v2 /
                   (static_cast<double>(shots) * cfg.duration * cfg.duration * cfg.gamma *
                    cfg.gamma);
    return env;
}

ErrorBudget total_error_report(unsigned order, const ReconstructionEnvelope& env,
                               double sup_deriv) {
    ErrorBudget budget;
    budget.variance = env.variance;
    budget.truncation = truncation_bound(order, env.spectrum.duration, sup_deriv);
    return budget;
}

}  // namespace walshrec
