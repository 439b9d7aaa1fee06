#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "walshrec/profile.hpp"

namespace walshrec {

enum class Ordering { Paley, Sequency };

/// Identity of one Walsh function / control sequence: a natural number plus
/// the ordering its digits are read in.
struct WalshIndex {
    std::uint64_t m = 0;
    Ordering ordering = Ordering::Paley;

    friend bool operator==(const WalshIndex&, const WalshIndex&) = default;
};

inline WalshIndex paley(std::uint64_t m) { return {m, Ordering::Paley}; }
inline WalshIndex sequency(std::uint64_t m) { return {m, Ordering::Sequency}; }

std::uint64_t gray_code(std::uint64_t m);
std::uint64_t gray_decode(std::uint64_t g);

/// Same Walsh function, renumbered. Sequency m corresponds to Paley
/// gray_code(m); Paley p corresponds to sequency gray_decode(p).
WalshIndex convert_ordering(WalshIndex idx, Ordering target);

/// Paley label of idx (applies gray_code if idx is sequency-numbered).
std::uint64_t paley_number(WalshIndex idx);
/// Sequency label of idx; equals the number of sign changes of the function.
std::uint64_t sequency_number(WalshIndex idx);

/// k'th Rademacher square wave at t in [0,1): +1 on [0,2^-k), -1 on
/// [2^-k,2^-(k-1)), period 2^-(k-1). Right-continuous at the jumps.
/// R_0 is identically +1. Throws std::domain_error for t outside [0,1).
int rademacher_eval(unsigned k, double t);

/// Walsh function value at t in [0,1): the product of Rademacher factors
/// selected by the set bits of the Paley label. Right-continuous.
int walsh_eval(WalshIndex idx, double t);

/// Sign of the Walsh function on cell `cell` of the 2^order dyadic grid.
/// The function must be constant on the cell, i.e. its Paley label < 2^order.
int walsh_cell_sign(WalshIndex idx, std::uint64_t cell, unsigned order);

enum class Provenance { Exact, Estimated };

/// Walsh coefficients of a signal on [0,T], keyed by Paley number.
struct WalshSpectrum {
    double duration = 1.0;
    std::map<std::uint64_t, double> coefficients;
    Provenance provenance = Provenance::Exact;

    double at(std::uint64_t paley_m) const;  // throws on missing key
};

/// m'th Walsh coefficient (1/T) * integral of f(t) w_m(t/T) dt.
/// Closed-form profiles: per-cell Gauss-Legendre on the 2^degree dyadic grid
/// with quad_points_per_cell nodes per cell. Sampled profiles: exact
/// coefficient of the piecewise-constant interpolant (a Riemann sum).
double walsh_coefficient(const FieldProfile& f, WalshIndex idx,
                         unsigned quad_points_per_cell = 8);

/// Exact spectrum of the first 2^order coefficients (Paley 0 .. 2^order-1).
WalshSpectrum transform(const FieldProfile& f, unsigned order,
                        unsigned quad_points_per_cell = 8);
WalshSpectrum transform(const FieldProfile& f, std::span<const std::uint64_t> paley_indices,
                        unsigned quad_points_per_cell = 8);

/// Discrete Walsh transform of 2^n cell values; returns Paley-ordered
/// coefficients normalized by 1/2^n. Throws on non-power-of-two length.
std::vector<double> fwht(std::vector<double> samples);
/// Inverse of fwht: coefficients back to cell values.
std::vector<double> ifwht(std::vector<double> coefficients);

/// Partial sum over index_set at time t in [0,T). Every index must be
/// present in the spectrum (throws std::out_of_range otherwise).
double partial_sum(const WalshSpectrum& spectrum, std::span<const WalshIndex> index_set,
                   double t);
double partial_sum(const WalshSpectrum& spectrum, std::span<const std::uint64_t> paley_set,
                   double t);

/// Cell values of the partial sum on the 2^order dyadic grid.
std::vector<double> reconstruction_cells(const WalshSpectrum& spectrum,
                                         std::span<const std::uint64_t> paley_set,
                                         unsigned order);

/// First 2^order Paley labels {0,...,2^order-1}.
std::vector<std::uint64_t> full_order_indices(unsigned order);

/// Multipulse echo-train family: sequency {2^k}, Paley {3*2^(k-1)}, k=1..terms.
std::vector<std::uint64_t> cpmg_indices(unsigned terms, Ordering ordering);
/// Periodic decoupling family (the Rademacher functions): sequency {2^k-1},
/// Paley {2^(k-1)}, k=1..terms.
std::vector<std::uint64_t> pdd_indices(unsigned terms, Ordering ordering);

/// Total number of sign changes over the set = sum of sequency labels =
/// total pi-pulse count of the corresponding control sequences.
std::uint64_t zero_crossings(std::span<const WalshIndex> index_set);
std::uint64_t zero_crossings(std::span<const std::uint64_t> labels, Ordering ordering);

/// Pi-pulse times of one Walsh control sequence on (0,T).
struct PulseSequence {
    double duration = 1.0;
    std::vector<double> pulse_times;  // strictly increasing, dyadic fractions of T
};

/// Pulse times are the jump discontinuities of the Walsh function on (0,T);
/// their count equals the sequency label.
PulseSequence pulse_sequence_from_walsh(WalshIndex idx, double duration);

}  // namespace walshrec
