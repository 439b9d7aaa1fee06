#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "walshrec/profile.hpp"
#include "walshrec/walsh.hpp"

namespace walshrec {

/// Qubit sensor parameters: coupling strength gamma (radians per field unit
/// per second) and acquisition time T. The reference electron coupling is
/// 2*pi*28 rad per (uT us) in those units; both enter only as the product
/// gamma*T here.
struct SensorConfig {
    double gamma = 1.0;
    double duration = 1.0;

    /// Largest field amplitude the arcsine inversion can resolve, pi/(gamma*T).
    double dynamic_range() const;
};

/// Fringe-contrast decay per control sequence:
///   v = exp(-(T / T2(seq))^stretch),  T2(seq) = t2 * max(1, pulses)^pulse_exponent.
/// Defaults (t2 = inf) give v = 1 for every sequence.
struct VisibilityModel {
    double t2 = std::numeric_limits<double>::infinity();
    double stretch = 1.0;
    double pulse_exponent = 0.0;

    double visibility(WalshIndex idx, double duration) const;
};

/// One acquired index: M repetitions, count of "0" outcomes, the visibility
/// and RNG seed used.
struct MeasurementRecord {
    std::uint64_t paley = 0;
    std::uint64_t shots = 0;
    std::uint64_t zeros = 0;
    double visibility = 1.0;
    std::uint64_t seed = 0;
};

/// Phase accumulated under the Walsh-modulated sequence:
/// gamma * T * <w_idx, b> = gamma * T * b_hat.
double accumulated_phase(const FieldProfile& b, WalshIndex idx, const SensorConfig& cfg,
                         unsigned quad_points_per_cell = 8);

/// Probability of outcome "0" after the final pi/2 pulse: (1 + v sin(phi)) / 2.
double outcome_probability(double phi, double visibility = 1.0);

/// zeros ~ Binomial(shots, p0), deterministic in the seed.
MeasurementRecord simulate_shots(double p0, std::uint64_t shots, std::uint64_t seed);

struct CoefficientEstimate {
    double value = 0.0;
    bool clamped = false;    // (2 p_hat - 1)/v fell outside [-1, 1]
    bool saturated = false;  // inverted phase hit the edge of the dynamic range
};

/// Invert the outcome probability: arcsin(clamp((2 zeros/M - 1)/v)) / (gamma T).
CoefficientEstimate estimate_coefficient(const MeasurementRecord& rec, const SensorConfig& cfg);
/// Same inversion from an un-sampled probability (noiseless path).
CoefficientEstimate estimate_from_probability(double p0, double visibility,
                                              const SensorConfig& cfg);

struct AcquisitionResult {
    WalshSpectrum spectrum;  // provenance Estimated
    std::vector<MeasurementRecord> records;
    unsigned clamp_events = 0;
    unsigned saturated_indices = 0;
};

/// Deterministic per-index RNG stream seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t paley_index);

/// Acquire one estimated coefficient per planned index. Per-index seeds are
/// derived from (seed, index), so results do not depend on evaluation order.
/// With noiseless = true the sampling step is skipped and the exact outcome
/// probability is inverted instead.
AcquisitionResult run_protocol(const FieldProfile& b, const SensorConfig& cfg,
                               std::span<const std::uint64_t> plan_paley,
                               const VisibilityModel& vis, std::uint64_t shots,
                               std::uint64_t seed, bool noiseless = false,
                               unsigned quad_points_per_cell = 8);

}  // namespace walshrec
