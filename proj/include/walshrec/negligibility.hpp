#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace walshrec {

/// Bit-structure invariants of a Paley label. Bit positions are 1-indexed
/// from the least-significant digit, matching the Rademacher factor they
/// select: rank = popcount, degree = leading bit position, negligibility
/// p(m) = sum of set-bit positions + rank, subdegree = position of the
/// second-leading set bit (0 when rank < 2).
struct IndexProfile {
    std::uint64_t m = 0;
    unsigned rank = 0;
    unsigned degree = 0;
    unsigned subdegree = 0;
    unsigned negligibility = 0;
    long long contrast = 0;  // p(m-1) - p(m); 0 for m = 0
};

unsigned rank(std::uint64_t m);
unsigned degree(std::uint64_t m);
unsigned subdegree(std::uint64_t m);
unsigned negligibility(std::uint64_t m);
long long contrast(std::uint64_t m);  // m >= 1
IndexProfile index_profile(std::uint64_t m);

/// Coefficient-size bound for a signal on [0,T] whose r(m)'th derivative is
/// bounded by derivative_sup:  2^-p(m) * T^r(m) * derivative_sup.
/// When the total variation of f^(r(m)-1) is supplied (and rank >= 1), the
/// alternative bound 2^(1-p(m)) * T^(r(m)-1) * variation is taken into the
/// minimum.
double coefficient_bound(std::uint64_t m, double duration, double derivative_sup,
                         std::optional<double> variation = std::nullopt);

/// All j <= limit where the negligibility has a local minimum,
/// p(j-1) >= p(j) <= p(j+1) (one-sided at j = 0). These are the multiples
/// of four.
std::vector<std::uint64_t> local_minima_negligibility(std::uint64_t limit);

/// All m with p(m) <= p0, in increasing order. Walks the rank-layered tree
/// of binary patterns (leading bit per degree, then descending lower bits)
/// pruning where p exceeds the threshold; never scans the full range.
std::vector<std::uint64_t> threshold_search(unsigned p0);

/// The two degree-d labels with the largest contrast; these are the degree-d
/// members of the Rademacher (2^(d-1)) and echo-train (3*2^(d-2)) families.
/// Requires d >= 2.
std::pair<std::uint64_t, std::uint64_t> maximal_contrast_at_degree(unsigned d);

}  // namespace walshrec
