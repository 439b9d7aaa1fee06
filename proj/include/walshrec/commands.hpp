#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "walshrec/profile.hpp"

namespace walshrec::cmd {

/// Resolve a --profile argument: a path to a `t,value` CSV (when the file
/// exists) or a built-in corpus name.
FieldProfile load_profile(const std::string& name_or_path);

struct TransformOptions {
    std::string profile = "exp";
    unsigned order = 5;
    std::vector<std::uint64_t> indices;  // explicit Paley labels; overrides order
    unsigned quad_points = 8;
    std::filesystem::path out_dir = ".";
};

struct TransformResult {
    std::filesystem::path spectrum_path;
    std::filesystem::path coefficients_path;
};

TransformResult cmd_transform(const TransformOptions& opt);

struct CompressOptions {
    std::string profile = "exp";
    std::string method = "threshold";  // cpmgpdd | threshold | subdegree
    unsigned terms = 8;                // cpmgpdd
    unsigned p0 = 6;                   // threshold
    unsigned order = 5;                // subdegree max degree
    unsigned quad_points = 8;
    unsigned reconstruction_points = 512;
    std::filesystem::path out_dir = ".";
};

struct CompressResult {
    std::filesystem::path report_path;
    std::filesystem::path reconstruction_path;
    double msqe = 0.0;
};

CompressResult cmd_compress(const CompressOptions& opt);

struct SenseOptions {
    std::string profile = "exp";
    double gamma = 1.0;
    std::optional<double> duration;      // must match the profile when given
    unsigned order = 3;                  // plan = first 2^order unless indices set
    std::vector<std::uint64_t> indices;  // explicit Paley plan
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
    bool noiseless = false;
    double t2 = 0.0;                     // 0 = no decay (v = 1)
    double stretch = 1.0;
    double pulse_exponent = 0.0;
    unsigned envelope_points = 256;
    unsigned quad_points = 8;
    std::filesystem::path out_dir = ".";
};

struct SenseResult {
    std::filesystem::path acquisition_path;
    std::filesystem::path envelope_path;
    unsigned clamp_events = 0;
    unsigned saturated_indices = 0;
    double envelope_variance = 0.0;
};

SenseResult cmd_sense(const SenseOptions& opt);

struct DdFilterOptions {
    std::vector<std::uint64_t> indices{0, 1, 3};  // Paley labels
    unsigned order = 0;                           // 0 = max degree of the indices
    double omega_t_max = 20.0;
    unsigned grid_points = 200;
    double duration = 1.0;
    // optional coherence ranking under a noise spectrum
    std::string spectrum;  // "" | powerlaw | lorentzian
    double amplitude = 1.0;
    double exponent = 0.0;
    double cutoff = 1.0;
    double omega_min = 0.0;  // 0 = default infrared cutoff
    double omega_max = 0.0;
    std::filesystem::path out_dir = ".";
};

struct DdFilterResult {
    std::filesystem::path filter_path;
    std::optional<std::filesystem::path> ranking_path;
};

DdFilterResult cmd_ddfilter(const DdFilterOptions& opt);

}  // namespace walshrec::cmd
