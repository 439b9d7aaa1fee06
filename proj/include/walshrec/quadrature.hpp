#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace walshrec {

/// Gauss-Legendre rule on [0,1]; weights sum to 1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [0,1]. Exact for polynomials of degree 2n-1.
GaussRule gauss_legendre(unsigned n);

/// Integrate f over [a,b] with the given rule.
double gauss_integrate(const std::function<double(double)>& f, double a, double b,
                       const GaussRule& rule);

struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& what, double a, double b, double estimate)
        : std::runtime_error(what), interval_lo(a), interval_hi(b), last_estimate(estimate) {}
    double interval_lo;
    double interval_hi;
    double last_estimate;
};

/// Adaptive Simpson integration of f over [a,b]. The interval is pre-split
/// into initial_panels panels; each panel is bisected until its local error
/// estimate meets the tolerance. Throws IntegrationError when max_depth
/// bisections are not enough.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, double rel_tol = 1e-10,
                          unsigned initial_panels = 32, unsigned max_depth = 40);

}  // namespace walshrec
