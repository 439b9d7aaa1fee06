#include "walshrec/profile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace walshrec {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

constexpr double two_pi = 2.0 * std::numbers::pi;

// sup over R of |He_r(x)| e^{-x^2/2} <= K sqrt(r!) with Cramer's constant;
// gives a rigorous bound on Gaussian-density derivatives.
double gaussian_derivative_sup(double sigma, unsigned r) {
    constexpr double cramer = 1.086435;
    double sqrt_fact = 1.0;
    for (unsigned k = 2; k <= r; ++k) sqrt_fact *= std::sqrt(static_cast<double>(k));
    return cramer * sqrt_fact / (std::pow(sigma, r + 1.0) * std::sqrt(two_pi));
}

}  // namespace

FieldProfile FieldProfile::from_function(std::string name, std::function<double(double)> fn,
                                         double duration) {
    if (!(duration > 0.0)) throw std::invalid_argument("FieldProfile: duration must be > 0");
    if (!fn) throw std::invalid_argument("FieldProfile: null function");
    FieldProfile p;
    p.name_ = std::move(name);
    p.fn_ = std::move(fn);
    p.duration_ = duration;
    return p;
}

FieldProfile FieldProfile::from_samples(std::vector<double> samples, double duration,
                                        SampleConvention convention, std::string name) {
    if (!(duration > 0.0)) throw std::invalid_argument("FieldProfile: duration must be > 0");
    if (!is_power_of_two(samples.size()))
        throw std::invalid_argument("FieldProfile: sample count must be a power of two");
    FieldProfile p;
    p.name_ = std::move(name);
    p.samples_ = std::move(samples);
    p.convention_ = convention;
    p.duration_ = duration;
    return p;
}

FieldProfile FieldProfile::sampled_from(const FieldProfile& src, unsigned order,
                                        SampleConvention convention) {
    std::size_t n = std::size_t{1} << order;
    std::vector<double> values(n);
    double T = src.duration();
    for (std::size_t i = 0; i < n; ++i) {
        double t = convention == SampleConvention::CellMidpoint
                       ? (static_cast<double>(i) + 0.5) / static_cast<double>(n) * T
                       : static_cast<double>(i) / static_cast<double>(n) * T;
        values[i] = src(t);
    }
    FieldProfile p = from_samples(std::move(values), T, convention, src.name());
    return p;
}

const std::vector<double>& FieldProfile::samples() const {
    if (!is_sampled()) throw std::logic_error("FieldProfile: not a sampled profile");
    return samples_;
}

double FieldProfile::operator()(double t) const {
    if (t < 0.0 || t > duration_)
        throw std::domain_error("FieldProfile: t outside [0, T]");
    if (!is_sampled()) return fn_(t);
    std::size_t n = samples_.size();
    auto cell = static_cast<std::size_t>(t / duration_ * static_cast<double>(n));
    if (cell >= n) cell = n - 1;  // t == T
    return samples_[cell];
}

FieldProfile FieldProfile::scaled(double factor) const {
    FieldProfile p = *this;
    if (p.is_sampled()) {
        for (double& v : p.samples_) v *= factor;
    } else {
        auto base = p.fn_;
        p.fn_ = [base, factor](double t) { return factor * base(t); };
    }
    if (p.derivative_sup) {
        auto base = p.derivative_sup;
        double mag = std::abs(factor);
        p.derivative_sup = [base, mag](unsigned r) { return mag * base(r); };
    }
    return p;
}

FieldProfile corpus_profile(std::string_view key) {
    if (key == "f1") {
        auto p = FieldProfile::from_function("f1", [](double t) { return std::cos(two_pi * t); }, 1.0);
        p.derivative_sup = [](unsigned r) { return std::pow(two_pi, r); };
        return p;
    }
    if (key == "f2" || key == "f3") {
        double eps = key == "f2" ? 0.2 : 0.5;
        double w = two_pi + eps;
        auto p = FieldProfile::from_function(std::string(key),
                                             [w](double t) { return std::cos(w * t); }, 1.0);
        p.derivative_sup = [w](unsigned r) { return std::pow(w, r); };
        return p;
    }
    if (key == "f4") {
        auto p = FieldProfile::from_function(
            "f4",
            [](double t) {
                return 2.0 + 3.0 * std::cos(two_pi * t) + 4.0 * std::cos(2.0 * two_pi * t) +
                       6.0 * std::sin(two_pi * t) + 2.0 * std::sin(2.0 * two_pi * t);
            },
            1.0);
        p.derivative_sup = [](unsigned r) {
            double s = 9.0 * std::pow(two_pi, r) + 6.0 * std::pow(2.0 * two_pi, r);
            return r == 0 ? s + 2.0 : s;
        };
        return p;
    }
    if (key == "f5") {
        constexpr double mu = 0.3, sigma = 0.1;
        auto p = FieldProfile::from_function(
            "f5",
            [](double t) {
                double z = (t - mu) / sigma;
                return std::exp(-0.5 * z * z) / (sigma * std::sqrt(two_pi));
            },
            1.0);
        p.derivative_sup = [](unsigned r) { return gaussian_derivative_sup(sigma, r); };
        return p;
    }
    if (key == "exp") {
        auto p = FieldProfile::from_function("exp", [](double t) { return std::exp(-t); }, 1.0);
        p.derivative_sup = [](unsigned) { return 1.0; };
        return p;
    }
    if (key == "sin") {
        auto p = FieldProfile::from_function("sin", [](double t) { return std::sin(two_pi * t); }, 1.0);
        p.derivative_sup = [](unsigned r) { return std::pow(two_pi, r); };
        return p;
    }
    if (key == "const") {
        auto p = FieldProfile::from_function("const", [](double) { return 1.0; }, 1.0);
        p.derivative_sup = [](unsigned r) { return r == 0 ? 1.0 : 0.0; };
        return p;
    }
    throw std::out_of_range("corpus_profile: unknown profile '" + std::string(key) + "'");
}

std::vector<std::string> corpus_names() {
    return {"f1", "f2", "f3", "f4", "f5", "exp", "sin", "const"};
}

double sampled_derivative_sup(const FieldProfile& profile, unsigned r) {
    const auto& s = profile.samples();
    double h = profile.duration() / static_cast<double>(s.size());
    double sup = 0.0;
    if (r == 1) {
        for (std::size_t i = 0; i + 1 < s.size(); ++i)
            sup = std::max(sup, std::abs(s[i + 1] - s[i]) / h);
    } else if (r == 2) {
        for (std::size_t i = 0; i + 2 < s.size(); ++i)
            sup = std::max(sup, std::abs(s[i + 2] - 2.0 * s[i + 1] + s[i]) / (h * h));
    } else {
        throw std::invalid_argument("sampled_derivative_sup: only r in {1,2} supported");
    }
    return sup;
}

}  // namespace walshrec
