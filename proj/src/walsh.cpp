#include "walshrec/walsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "walshrec/quadrature.hpp"

namespace walshrec {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

unsigned degree_of(std::uint64_t m) { return static_cast<unsigned>(std::bit_width(m)); }

void check_unit_interval(double t) {
    if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("walsh: t must lie in [0,1)");
}

// k'th binary digit of t = 0.t1 t2 t3 ...
unsigned binary_digit(double t, unsigned k) {
    return static_cast<unsigned>(static_cast<std::uint64_t>(std::ldexp(t, static_cast<int>(k)))) & 1u;
}

}  // namespace

std::uint64_t gray_code(std::uint64_t m) { return m ^ (m >> 1); }

std::uint64_t gray_decode(std::uint64_t g) {
    g ^= g >> 1;
    g ^= g >> 2;
    g ^= g >> 4;
    g ^= g >> 8;
    g ^= g >> 16;
    g ^= g >> 32;
    return g;
}

std::uint64_t paley_number(WalshIndex idx) {
    return idx.ordering == Ordering::Paley ? idx.m : gray_code(idx.m);
}

std::uint64_t sequency_number(WalshIndex idx) {
    return idx.ordering == Ordering::Sequency ? idx.m : gray_decode(idx.m);
}

WalshIndex convert_ordering(WalshIndex idx, Ordering target) {
    if (idx.ordering == target) return idx;
    return target == Ordering::Paley ? WalshIndex{paley_number(idx), Ordering::Paley}
                                     : WalshIndex{sequency_number(idx), Ordering::Sequency};
}

int rademacher_eval(unsigned k, double t) {
    check_unit_interval(t);
    if (k == 0) return 1;
    if (k > 63) throw std::invalid_argument("rademacher_eval: k > 63 unsupported");
    return binary_digit(t, k) ? -1 : 1;
}

int walsh_eval(WalshIndex idx, double t) {
    check_unit_interval(t);
    std::uint64_t m = paley_number(idx);
    unsigned parity = 0;
    unsigned k = 1;
    while (m) {
        if (m & 1) parity ^= binary_digit(t, k);
        m >>= 1;
        ++k;
    }
    return parity ? -1 : 1;
}

int walsh_cell_sign(WalshIndex idx, std::uint64_t cell, unsigned order) {
    std::uint64_t m = paley_number(idx);
    if (degree_of(m) > order)
        throw std::invalid_argument("walsh_cell_sign: index finer than the grid");
    if (cell >> order) throw std::domain_error("walsh_cell_sign: cell out of range");
    // digit t_k of the cell equals bit (order-k) of the cell number
    unsigned parity = 0;
    unsigned k = 1;
    while (m) {
        if (m & 1) parity ^= static_cast<unsigned>(cell >> (order - k)) & 1u;
        m >>= 1;
        ++k;
    }
    return parity ? -1 : 1;
}

double WalshSpectrum::at(std::uint64_t paley_m) const {
    auto it = coefficients.find(paley_m);
    if (it == coefficients.end())
        throw std::out_of_range("WalshSpectrum: missing coefficient " + std::to_string(paley_m));
    return it->second;
}

double walsh_coefficient(const FieldProfile& f, WalshIndex idx, unsigned quad_points_per_cell) {
    if (quad_points_per_cell < 1)
        throw std::invalid_argument("walsh_coefficient: need >= 1 quadrature point per cell");
    std::uint64_t m = paley_number(idx);
    unsigned d = degree_of(m);
    double T = f.duration();

    if (f.is_sampled()) {
        const auto& s = f.samples();
        unsigned n = static_cast<unsigned>(std::countr_zero(s.size()));
        // The interpolant's coefficient vanishes once the index outruns the grid.
        if (d > n) return 0.0;
        double sum = 0.0;
        for (std::uint64_t i = 0; i < s.size(); ++i)
            sum += s[i] * walsh_cell_sign(paley(m), i, n);
        return sum / static_cast<double>(s.size());
    }

    std::uint64_t cells = std::uint64_t{1} << d;
    double h = T / static_cast<double>(cells);
    GaussRule rule = gauss_legendre(quad_points_per_cell);
    double sum = 0.0;
    for (std::uint64_t i = 0; i < cells; ++i) {
        double a = static_cast<double>(i) * h;
        double cell_int = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
            cell_int += rule.weights[q] * f(a + h * rule.nodes[q]);
        sum += walsh_cell_sign(paley(m), i, d) * cell_int * h;
    }
    return sum / T;
}

WalshSpectrum transform(const FieldProfile& f, unsigned order, unsigned quad_points_per_cell) {
    auto idx = full_order_indices(order);
    return transform(f, idx, quad_points_per_cell);
}

WalshSpectrum transform(const FieldProfile& f, std::span<const std::uint64_t> paley_indices,
                        unsigned quad_points_per_cell) {
    WalshSpectrum spec;
    spec.duration = f.duration();
    spec.provenance = Provenance::Exact;
    for (std::uint64_t m : paley_indices)
        spec.coefficients[m] = walsh_coefficient(f, paley(m), quad_points_per_cell);
    return spec;
}

namespace {

void butterfly(std::vector<double>& x) {
    std::size_t n = x.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                double a = x[j], b = x[j + h];
                x[j] = a + b;
                x[j + h] = a - b;
            }
        }
    }
}

void bit_reverse_permute(std::vector<double>& x) {
    std::size_t n = x.size();
    unsigned bits = static_cast<unsigned>(std::countr_zero(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (unsigned b = 0; b < bits; ++b)
            if (i >> b & 1) r |= std::size_t{1} << (bits - 1 - b);
        if (r > i) std::swap(x[i], x[r]);
    }
}

}  // namespace

std::vector<double> fwht(std::vector<double> samples) {
    if (!is_power_of_two(samples.size()))
        throw std::invalid_argument("fwht: length must be a power of two");
    butterfly(samples);
    bit_reverse_permute(samples);
    double inv = 1.0 / static_cast<double>(samples.size());
    for (double& v : samples) v *= inv;
    return samples;
}

std::vector<double> ifwht(std::vector<double> coefficients) {
    if (!is_power_of_two(coefficients.size()))
        throw std::invalid_argument("ifwht: length must be a power of two");
    bit_reverse_permute(coefficients);
    butterfly(coefficients);
    return coefficients;
}

double partial_sum(const WalshSpectrum& spectrum, std::span<const WalshIndex> index_set,
                   double t) {
    double u = t / spectrum.duration;
    check_unit_interval(u);
    double sum = 0.0;
    for (WalshIndex idx : index_set)
        sum += spectrum.at(paley_number(idx)) * walsh_eval(idx, u);
    return sum;
}

double partial_sum(const WalshSpectrum& spectrum, std::span<const std::uint64_t> paley_set,
                   double t) {
    double u = t / spectrum.duration;
    check_unit_interval(u);
    double sum = 0.0;
    for (std::uint64_t m : paley_set) sum += spectrum.at(m) * walsh_eval(paley(m), u);
    return sum;
}

std::vector<double> reconstruction_cells(const WalshSpectrum& spectrum,
                                         std::span<const std::uint64_t> paley_set,
                                         unsigned order) {
    std::vector<double> coef(std::size_t{1} << order, 0.0);
    for (std::uint64_t m : paley_set) {
        if (degree_of(m) > order)
            throw std::invalid_argument("reconstruction_cells: index finer than the grid");
        coef[m] = spectrum.at(m);
    }
    return ifwht(std::move(coef));
}

std::vector<std::uint64_t> full_order_indices(unsigned order) {
    std::vector<std::uint64_t> idx(std::size_t{1} << order);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
}

std::vector<std::uint64_t> cpmg_indices(unsigned terms, Ordering ordering) {
    std::vector<std::uint64_t> out;
    out.reserve(terms);
    for (unsigned k = 1; k <= terms; ++k) {
        std::uint64_t seq = std::uint64_t{1} << k;
        out.push_back(ordering == Ordering::Sequency ? seq : gray_code(seq));
    }
    return out;
}

std::vector<std::uint64_t> pdd_indices(unsigned terms, Ordering ordering) {
    std::vector<std::uint64_t> out;
    out.reserve(terms);
    for (unsigned k = 1; k <= terms; ++k) {
        std::uint64_t seq = (std::uint64_t{1} << k) - 1;
        out.push_back(ordering == Ordering::Sequency ? seq : gray_code(seq));
    }
    return out;
}

std::uint64_t zero_crossings(std::span<const WalshIndex> index_set) {
    std::uint64_t total = 0;
    for (WalshIndex idx : index_set) total += sequency_number(idx);
    return total;
}

std::uint64_t zero_crossings(std::span<const std::uint64_t> labels, Ordering ordering) {
    std::uint64_t total = 0;
    for (std::uint64_t m : labels) total += sequency_number({m, ordering});
    return total;
}

PulseSequence pulse_sequence_from_walsh(WalshIndex idx, double duration) {
    if (!(duration > 0.0))
        throw std::invalid_argument("pulse_sequence_from_walsh: duration must be > 0");
    std::uint64_t m = paley_number(idx);
    unsigned d = degree_of(m);
    PulseSequence seq;
    seq.duration = duration;
    if (d == 0) return seq;  // Ramsey: no pulses
    std::uint64_t cells = std::uint64_t{1} << d;
    int prev = walsh_cell_sign(paley(m), 0, d);
    for (std::uint64_t i = 1; i < cells; ++i) {
        int cur = walsh_cell_sign(paley(m), i, d);
        if (cur != prev)
            seq.pulse_times.push_back(static_cast<double>(i) / static_cast<double>(cells) *
                                      duration);
        prev = cur;
    }
    return seq;
}

}  // namespace walshrec
