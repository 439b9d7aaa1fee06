#include "walshrec/negligibility.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace walshrec {

unsigned rank(std::uint64_t m) { return static_cast<unsigned>(std::popcount(m)); }

unsigned degree(std::uint64_t m) { return static_cast<unsigned>(std::bit_width(m)); }

unsigned subdegree(std::uint64_t m) {
    if (rank(m) < 2) return 0;
    std::uint64_t below = m & ~(std::uint64_t{1} << (degree(m) - 1));
    return degree(below);
}

unsigned negligibility(std::uint64_t m) {
    unsigned p = 0;
    unsigned k = 1;
    while (m) {
        if (m & 1) p += k + 1;
        m >>= 1;
        ++k;
    }
    return p;
}

long long contrast(std::uint64_t m) {
    if (m == 0) throw std::domain_error("contrast: undefined for m = 0");
    return static_cast<long long>(negligibility(m - 1)) -
           static_cast<long long>(negligibility(m));
}

IndexProfile index_profile(std::uint64_t m) {
    IndexProfile p;
    p.m = m;
    p.rank = rank(m);
    p.degree = degree(m);
    p.subdegree = subdegree(m);
    p.negligibility = negligibility(m);
    p.contrast = m == 0 ? 0 : contrast(m);
    return p;
}

double coefficient_bound(std::uint64_t m, double duration, double derivative_sup,
                         std::optional<double> variation) {
    if (!(duration > 0.0)) throw std::invalid_argument("coefficient_bound: duration must be > 0");
    if (!(derivative_sup >= 0.0))
        throw std::invalid_argument("coefficient_bound: derivative_sup must be >= 0");
    unsigned r = rank(m);
    unsigned p = negligibility(m);
    double bound = std::exp2(-static_cast<double>(p)) * std::pow(duration, r) * derivative_sup;
    if (variation && r >= 1) {
        if (!(*variation >= 0.0))
            throw std::invalid_argument("coefficient_bound: variation must be >= 0");
        double alt = std::exp2(1.0 - static_cast<double>(p)) *
                     std::pow(duration, static_cast<double>(r) - 1.0) * *variation;
        bound = std::min(bound, alt);
    }
    return bound;
}

std::vector<std::uint64_t> local_minima_negligibility(std::uint64_t limit) {
    if (limit < 1) throw std::invalid_argument("local_minima_negligibility: limit must be >= 1");
    std::vector<std::uint64_t> minima;
    for (std::uint64_t j = 0; j <= limit; ++j) {
        unsigned pj = negligibility(j);
        bool left = j == 0 || negligibility(j - 1) >= pj;
        bool right = negligibility(j + 1) >= pj;
        if (left && right) minima.push_back(j);
    }
    return minima;
}

namespace {

// Extend `base` (lowest set bit at position `lag`) by one lower bit per
// branch. p grows strictly with the new bit position, hence the early break.
void extend(std::uint64_t base, unsigned lag, unsigned p_base, unsigned p0,
            std::vector<std::uint64_t>& out) {
    for (unsigned s = 1; s < lag; ++s) {
        unsigned p = p_base + s + 1;
        if (p > p0) break;
        std::uint64_t idx = base | (std::uint64_t{1} << (s - 1));
        out.push_back(idx);
        extend(idx, s, p, p0, out);
    }
}

}  // namespace

std::vector<std::uint64_t> threshold_search(unsigned p0) {
    std::vector<std::uint64_t> out{0};
    // Degree-d leading patterns have p = d+1, so degrees stop at p0-1.
    for (unsigned d = 1; d + 1 <= p0; ++d) {
        std::uint64_t lead = std::uint64_t{1} << (d - 1);
        out.push_back(lead);
        extend(lead, d, d + 1, p0, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<std::uint64_t, std::uint64_t> maximal_contrast_at_degree(unsigned d) {
    if (d < 2) throw std::invalid_argument("maximal_contrast_at_degree: requires d >= 2");
    std::uint64_t lo = std::uint64_t{1} << (d - 1);
    std::uint64_t hi = std::uint64_t{1} << d;
    std::uint64_t best = lo, second = lo + 1;
    long long best_c = contrast(lo), second_c = contrast(lo + 1);
    if (second_c > best_c) {
        std::swap(best, second);
        std::swap(best_c, second_c);
    }
    for (std::uint64_t j = lo + 2; j < hi; ++j) {
        long long c = contrast(j);
        if (c > best_c) {
            second = best;
            second_c = best_c;
            best = j;
            best_c = c;
        } else if (c > second_c) {
            second = j;
            second_c = c;
        }
    }
    return {std::min(best, second), std::max(best, second)};
}

}  // namespace walshrec
