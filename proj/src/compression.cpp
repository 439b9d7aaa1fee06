#include "walshrec/compression.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "walshrec/negligibility.hpp"
#include "walshrec/quadrature.hpp"

namespace walshrec {

namespace {

unsigned default_subdegree_cutoff(unsigned d) { return d >= 3 ? d - 2 : d; }

}  // namespace

std::uint64_t CompressionPlan::pulse_count() const {
    return zero_crossings(selected_indices, Ordering::Paley);
}

CompressionPlan plan_indices(const CompressionParams& params) {
    CompressionPlan plan;
    plan.parameters = params;
    if (const auto* cp = std::get_if<CpmgPddParams>(&params)) {
        if (cp->terms < 1) throw std::invalid_argument("plan_indices: terms must be >= 1");
        plan.method = CompressionMethod::CpmgPdd;
        std::set<std::uint64_t> sel{0};
        for (std::uint64_t m : cpmg_indices(cp->terms, Ordering::Paley)) sel.insert(m);
        for (std::uint64_t m : pdd_indices(cp->terms, Ordering::Paley)) sel.insert(m);
        plan.selected_indices.assign(sel.begin(), sel.end());
    } else if (const auto* th = std::get_if<ThresholdParams>(&params)) {
        plan.method = CompressionMethod::Threshold;
        plan.selected_indices = threshold_search(th->p0);
    } else {
        const auto& sd = std::get<SubDegreeParams>(params);
        plan.method = CompressionMethod::SubDegree;
        auto cutoff = sd.cutoff ? sd.cutoff : default_subdegree_cutoff;
        std::uint64_t end = std::uint64_t{1} << sd.order;
        for (std::uint64_t m = 0; m < end; ++m) {
            unsigned d = degree(m);
            if (d <= 2 || subdegree(m) <= cutoff(d)) plan.selected_indices.push_back(m);
        }
    }
    return plan;
}

double msqe(const FieldProfile& f, const WalshSpectrum& spectrum,
            std::span<const std::uint64_t> indices, unsigned quad_points_per_cell) {
    if (f.duration() != spectrum.duration)
        throw std::invalid_argument("msqe: profile and spectrum durations differ");
    unsigned order = 0;
    for (std::uint64_t m : indices) order = std::max(order, degree(m));
    if (f.is_sampled()) {
        unsigned n = 0;
        while ((std::size_t{1} << n) < f.samples().size()) ++n;
        order = std::max(order, n);
    }
    std::vector<double> rec = reconstruction_cells(spectrum, indices, order);

    double T = f.duration();
    std::uint64_t cells = std::uint64_t{1} << order;
    double h = T / static_cast<double>(cells);
    double total = 0.0;
    if (f.is_sampled()) {
        // both piecewise constant on this grid: cell sums are exact
        std::uint64_t per = cells / f.samples().size();
        for (std::uint64_t i = 0; i < cells; ++i) {
            double d = f.samples()[i / per] - rec[i];
            total += d * d * h;
        }
    } else {
        GaussRule rule = gauss_legendre(quad_points_per_cell);
        for (std::uint64_t i = 0; i < cells; ++i) {
            double a = static_cast<double>(i) * h;
            double cell = 0.0;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                double d = f(a + h * rule.nodes[q]) - rec[i];
                cell += rule.weights[q] * d * d;
            }
            total += cell * h;
        }
    }
    return total / T;
}

double msqe(const FieldProfile& f, const CompressionPlan& plan, unsigned quad_points_per_cell) {
    WalshSpectrum spec = transform(f, plan.selected_indices, quad_points_per_cell);
    return msqe(f, spec, plan.selected_indices, quad_points_per_cell);
}

double truncation_bound(unsigned order, double duration, double sup_deriv) {
    if (!(sup_deriv >= 0.0))
        throw std::invalid_argument("truncation_bound: sup_deriv must be >= 0");
    return std::exp2(-(static_cast<double>(order) + 1.0)) * duration * sup_deriv;
}

double subdegree_error_bound(unsigned d, unsigned d_prime, double duration,
                             double sup_second_deriv) {
    if (d < 2 || d_prime > d - 2)
        throw std::invalid_argument("subdegree_error_bound: requires d' <= d-2");
    if (!(sup_second_deriv >= 0.0))
        throw std::invalid_argument("subdegree_error_bound: sup must be >= 0");
    double dd = static_cast<double>(d), dp = static_cast<double>(d_prime);
    return std::exp2(-dp - dd - 2.0) * (1.0 - std::exp2(dp - dd + 1.0)) * duration * duration *
           sup_second_deriv;
}

std::string method_name(CompressionMethod method) {
    switch (method) {
        case CompressionMethod::CpmgPdd: return "cpmgpdd";
        case CompressionMethod::Threshold: return "threshold";
        case CompressionMethod::SubDegree: return "subdegree";
    }
    return "unknown";
}

}  // namespace walshrec
