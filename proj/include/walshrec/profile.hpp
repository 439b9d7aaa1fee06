#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace walshrec {

/// How the stored samples of a dyadic grid relate to the underlying signal.
enum class SampleConvention { CellMidpoint, LeftEdge };

/// A scalar signal b(t) on [0,T]: either a closed-form function or 2^n
/// uniform cell values on the dyadic grid (piecewise constant,
/// right-continuous).
class FieldProfile {
public:
    static FieldProfile from_function(std::string name, std::function<double(double)> fn,
                                      double duration);
    static FieldProfile from_samples(std::vector<double> samples, double duration,
                                     SampleConvention convention = SampleConvention::CellMidpoint,
                                     std::string name = "sampled");
    /// Sample a profile onto a 2^order dyadic grid.
    static FieldProfile sampled_from(const FieldProfile& src, unsigned order,
                                     SampleConvention convention = SampleConvention::CellMidpoint);

    double duration() const { return duration_; }
    bool is_sampled() const { return !samples_.empty(); }
    const std::string& name() const { return name_; }
    const std::vector<double>& samples() const;
    SampleConvention convention() const { return convention_; }

    /// Evaluate at t in [0,T]. Sampled profiles return the enclosing cell value.
    double operator()(double t) const;

    /// Optional: r -> upper bound on sup_{[0,T]} |f^(r)|. Set for the built-in
    /// corpus; empty for user-supplied functions. For sampled profiles use
    /// sampled_derivative_sup instead.
    std::function<double(unsigned)> derivative_sup;

    /// Scale the signal by a constant factor (derivative bounds follow).
    FieldProfile scaled(double factor) const;

private:
    FieldProfile() = default;
    std::string name_;
    double duration_ = 1.0;
    std::function<double(double)> fn_;
    std::vector<double> samples_;
    SampleConvention convention_ = SampleConvention::CellMidpoint;
};

/// Built-in test signals on T=1: "f1".."f5", "exp", "sin", "const".
/// All carry derivative_sup bounds. Throws std::out_of_range for unknown keys.
FieldProfile corpus_profile(std::string_view key);
std::vector<std::string> corpus_names();

/// Finite-difference estimate of sup |f^(r)| for a sampled profile, r in {1,2}.
double sampled_derivative_sup(const FieldProfile& profile, unsigned r);

}  // namespace walshrec
