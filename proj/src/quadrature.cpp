#include "walshrec/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace walshrec {

GaussRule gauss_legendre(unsigned n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n, nodes on [-1,1], then mapped to [0,1].
    for (unsigned i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (unsigned k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = 0.5 * (1.0 - x);  // descending x -> ascending node
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b,
                       const GaussRule& rule) {
    double h = b - a;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(a + h * rule.nodes[i]);
    return sum * h;
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, unsigned depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    if (depth == 0)
        throw IntegrationError("adaptive integration did not converge", a, b, left + right);
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol, unsigned initial_panels,
                          unsigned max_depth) {
    if (!(a <= b)) throw std::invalid_argument("integrate_adaptive: requires a <= b");
    if (a == b) return 0.0;
    if (initial_panels == 0) initial_panels = 1;

    // First pass to scale the relative tolerance.
    double coarse = 0.0;
    double h = (b - a) / initial_panels;
    std::vector<double> fl(initial_panels), fm(initial_panels), fr(initial_panels);
    for (unsigned i = 0; i < initial_panels; ++i) {
        double x0 = a + i * h, x1 = x0 + h;
        fl[i] = f(x0);
        fm[i] = f(0.5 * (x0 + x1));
        fr[i] = f(x1);
        coarse += simpson(fl[i], fm[i], fr[i], h);
    }
    double tol = std::max(abs_tol, rel_tol * std::abs(coarse)) / initial_panels;

    double total = 0.0;
    for (unsigned i = 0; i < initial_panels; ++i) {
        double x0 = a + i * h, x1 = x0 + h;
        double whole = simpson(fl[i], fm[i], fr[i], h);
        total += adapt(f, x0, x1, fl[i], fm[i], fr[i], whole, tol, max_depth);
    }
    return total;
}

}  // namespace walshrec
