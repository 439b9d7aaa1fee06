#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "walshrec/profile.hpp"
#include "walshrec/walsh.hpp"

namespace walshrec {

enum class CompressionMethod { CpmgPdd, Threshold, SubDegree };

struct CpmgPddParams {
    unsigned terms = 1;  // M echo-train plus M Rademacher indices, plus w0
};

struct ThresholdParams {
    unsigned p0 = 0;  // keep every index with negligibility <= p0
};

struct SubDegreeParams {
    unsigned order = 5;  // keep indices of degree <= order
    // Per-degree subdegree cutoff; indices with subdegree > cutoff(d) are
    // dropped. The default reproduces d-2 for d >= 3 and keeps everything
    // of degree <= 2.
    std::function<unsigned(unsigned)> cutoff;
};

using CompressionParams = std::variant<CpmgPddParams, ThresholdParams, SubDegreeParams>;

struct CompressionPlan {
    CompressionMethod method = CompressionMethod::Threshold;
    CompressionParams parameters;
    std::vector<std::uint64_t> selected_indices;  // Paley, increasing

    /// Total pi-pulse count to acquire every selected index.
    std::uint64_t pulse_count() const;
};

/// Index selection for each compression strategy.
CompressionPlan plan_indices(const CompressionParams& params);

/// Mean-squared error (1/T) * integral of (f - reconstruction)^2 where the
/// reconstruction is the partial sum of `spectrum` over `indices`, piecewise
/// constant on the finest dyadic grid of the index set. Per-cell Gauss
/// quadrature of f; exact cell sums for sampled profiles.
double msqe(const FieldProfile& f, const WalshSpectrum& spectrum,
            std::span<const std::uint64_t> indices, unsigned quad_points_per_cell = 8);

/// Convenience: exact-transform reconstruction error of a plan.
double msqe(const FieldProfile& f, const CompressionPlan& plan,
            unsigned quad_points_per_cell = 8);

/// Worst-case reconstruction error of an order-n truncation:
/// 2^-(n+1) * T * sup|f'|.
double truncation_bound(unsigned order, double duration, double sup_deriv);

/// Worst-case error of dropping every degree-d index with subdegree > d':
/// 2^(-d'-d-2) * (1 - 2^(d'-d+1)) * T^2 * sup|f''|. Requires d' <= d-2.
double subdegree_error_bound(unsigned d, unsigned d_prime, double duration,
                             double sup_second_deriv);

struct ErrorReport {
    double msqe = 0.0;
    std::optional<double> truncation_bound;
    std::optional<double> subdegree_bound;
};

std::string method_name(CompressionMethod method);

}  // namespace walshrec
