#include "walshrec/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "walshrec/compression.hpp"
#include "walshrec/filter.hpp"
#include "walshrec/io.hpp"
#include "walshrec/negligibility.hpp"
#include "walshrec/sensor.hpp"
#include "walshrec/stats.hpp"

namespace walshrec::cmd {

namespace {

nlohmann::json indices_json(const std::vector<std::uint64_t>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (auto m : v) a.push_back(m);
    return a;
}

void ensure_dir(const std::filesystem::path& dir) {
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

CompressionPlan make_plan(const std::string& method, unsigned terms, unsigned p0,
                          unsigned order) {
    if (method == "cpmgpdd") return plan_indices(CpmgPddParams{terms});
    if (method == "threshold") return plan_indices(ThresholdParams{p0});
    if (method == "subdegree") return plan_indices(SubDegreeParams{order, {}});
    throw std::invalid_argument("unknown compression method '" + method + "'");
}

nlohmann::json plan_parameters_json(const CompressionPlan& plan) {
    nlohmann::json p = nlohmann::json::object();
    if (const auto* cp = std::get_if<CpmgPddParams>(&plan.parameters)) {
        p["terms"] = cp->terms;
    } else if (const auto* th = std::get_if<ThresholdParams>(&plan.parameters)) {
        p["p0"] = th->p0;
    } else if (const auto* sd = std::get_if<SubDegreeParams>(&plan.parameters)) {
        p["order"] = sd->order;
        p["cutoff_rule"] = sd->cutoff ? "custom" : "degree-minus-2";
    }
    return p;
}

}  // namespace

FieldProfile load_profile(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path)) return read_profile_csv(name_or_path);
    return corpus_profile(name_or_path);
}

TransformResult cmd_transform(const TransformOptions& opt) {
    FieldProfile f = load_profile(opt.profile);
    std::vector<std::uint64_t> indices =
        opt.indices.empty() ? full_order_indices(opt.order) : opt.indices;
    WalshSpectrum spec = transform(f, indices, opt.quad_points);

    nlohmann::json run{{"command", "transform"},
                       {"profile", opt.profile},
                       {"order", opt.order},
                       {"indices", indices_json(opt.indices)},
                       {"quad_points", opt.quad_points}};

    ensure_dir(opt.out_dir);
    TransformResult result;
    result.spectrum_path = opt.out_dir / "spectrum.json";
    write_spectrum_json(result.spectrum_path, spec, &run);

    std::vector<std::vector<double>> rows;
    for (std::uint64_t m : indices) {
        double c = spec.at(m);
        rows.push_back({static_cast<double>(m), c, std::abs(c),
                        static_cast<double>(negligibility(m))});
    }
    result.coefficients_path = opt.out_dir / "coefficients.csv";
    write_csv(result.coefficients_path, run.dump(),
              {"paley", "coefficient", "magnitude", "negligibility"}, rows);
    return result;
}

CompressResult cmd_compress(const CompressOptions& opt) {
    FieldProfile f = load_profile(opt.profile);
    CompressionPlan plan = make_plan(opt.method, opt.terms, opt.p0, opt.order);
    WalshSpectrum spec = transform(f, plan.selected_indices, opt.quad_points);
    double error = msqe(f, spec, plan.selected_indices, opt.quad_points);

    ErrorReport report;
    report.msqe = error;
    unsigned max_deg = 0;
    for (std::uint64_t m : plan.selected_indices) max_deg = std::max(max_deg, degree(m));
    double sup1 = -1.0, sup2 = -1.0;
    if (f.derivative_sup) {
        sup1 = f.derivative_sup(1);
        sup2 = f.derivative_sup(2);
    } else if (f.is_sampled()) {
        sup1 = sampled_derivative_sup(f, 1);
        sup2 = sampled_derivative_sup(f, 2);
    }
    if (sup1 >= 0.0) report.truncation_bound = truncation_bound(max_deg, f.duration(), sup1);
    if (plan.method == CompressionMethod::SubDegree && sup2 >= 0.0) {
        const auto& sd = std::get<SubDegreeParams>(plan.parameters);
        auto cutoff = sd.cutoff ? sd.cutoff : [](unsigned d) { return d - 2; };
        double total = 0.0;  // dropped degrees contribute additively in sup norm
        for (unsigned d = 3; d <= sd.order; ++d)
            total += subdegree_error_bound(d, cutoff(d), f.duration(), sup2);
        report.subdegree_bound = total;
    }

    nlohmann::json run{{"command", "compress"}, {"profile", opt.profile},
                       {"method", opt.method},  {"terms", opt.terms},
                       {"p0", opt.p0},          {"order", opt.order},
                       {"quad_points", opt.quad_points}};

    nlohmann::json j{{"method", method_name(plan.method)},
                     {"parameters", plan_parameters_json(plan)},
                     {"selected_indices", indices_json(plan.selected_indices)},
                     {"msqe", report.msqe},
                     {"pulse_count", plan.pulse_count()},
                     {"run", run}};
    nlohmann::json bounds = nlohmann::json::object();
    if (report.truncation_bound) bounds["truncation"] = *report.truncation_bound;
    if (report.subdegree_bound) bounds["subdegree"] = *report.subdegree_bound;
    j["bounds"] = bounds;

    ensure_dir(opt.out_dir);
    CompressResult result;
    result.msqe = error;
    result.report_path = opt.out_dir / "report.json";
    write_json(result.report_path, j);

    std::vector<std::vector<double>> rows;
    unsigned n = opt.reconstruction_points;
    for (unsigned i = 0; i < n; ++i) {
        double t = (i + 0.5) / n * f.duration();
        rows.push_back({t, f(t), partial_sum(spec, plan.selected_indices, t)});
    }
    result.reconstruction_path = opt.out_dir / "reconstruction.csv";
    write_csv(result.reconstruction_path, run.dump(), {"t", "exact", "reconstruction"}, rows);
    return result;
}

SenseResult cmd_sense(const SenseOptions& opt) {
    FieldProfile f = load_profile(opt.profile);
    if (opt.duration && *opt.duration != f.duration())
        throw std::invalid_argument("--duration does not match the profile duration");
    SensorConfig cfg{opt.gamma, f.duration()};
    VisibilityModel vis;
    if (opt.t2 > 0.0) vis = {opt.t2, opt.stretch, opt.pulse_exponent};

    std::vector<std::uint64_t> plan =
        opt.indices.empty() ? full_order_indices(opt.order) : opt.indices;
    AcquisitionResult acq =
        run_protocol(f, cfg, plan, vis, opt.shots, opt.seed, opt.noiseless, opt.quad_points);
    ReconstructionEnvelope env = envelope(acq.spectrum, plan, opt.shots, cfg, vis);

    nlohmann::json run{{"command", "sense"},
                       {"profile", opt.profile},
                       {"gamma", opt.gamma},
                       {"duration", f.duration()},
                       {"order", opt.order},
                       {"indices", indices_json(opt.indices)},
                       {"shots", opt.shots},
                       {"seed", opt.seed},
                       {"noiseless", opt.noiseless},
                       {"t2", opt.t2},
                       {"stretch", opt.stretch},
                       {"pulse_exponent", opt.pulse_exponent},
                       {"quad_points", opt.quad_points}};

    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : acq.records)
        records.push_back({{"index", rec.paley},
                           {"shots", rec.shots},
                           {"zeros", rec.zeros},
                           {"visibility", rec.visibility},
                           {"seed", rec.seed}});

    nlohmann::json j{{"config",
                      {{"gamma", cfg.gamma},
                       {"duration", cfg.duration},
                       {"dynamic_range", cfg.dynamic_range()},
                       {"shots", opt.shots},
                       {"seed", opt.seed},
                       {"noiseless", opt.noiseless},
                       {"visibility",
                        {{"t2", opt.t2 > 0.0 ? nlohmann::json(opt.t2) : nlohmann::json()},
                         {"stretch", opt.stretch},
                         {"pulse_exponent", opt.pulse_exponent}}}}},
                     {"plan", indices_json(plan)},
                     {"records", records},
                     {"spectrum", spectrum_to_json(acq.spectrum)},
                     {"clamp_events", acq.clamp_events},
                     {"saturated_indices", acq.saturated_indices},
                     {"envelope_variance", env.variance},
                     {"run", run}};

    ensure_dir(opt.out_dir);
    SenseResult result;
    result.acquisition_path = opt.out_dir / "acquisition.json";
    write_json(result.acquisition_path, j);

    std::vector<std::vector<double>> rows;
    double sigma = env.sigma();
    for (unsigned i = 0; i < opt.envelope_points; ++i) {
        double t = (i + 0.5) / opt.envelope_points * f.duration();
        double mean = env.mean(t);
        rows.push_back({t, mean, mean - sigma, mean + sigma});
    }
    result.envelope_path = opt.out_dir / "envelope.csv";
    write_csv(result.envelope_path, run.dump(),
              {"t", "mean", "mean_minus_sigma", "mean_plus_sigma"}, rows);

    result.clamp_events = acq.clamp_events;
    result.saturated_indices = acq.saturated_indices;
    result.envelope_variance = env.variance;
    return result;
}

DdFilterResult cmd_ddfilter(const DdFilterOptions& opt) {
    if (opt.indices.empty()) throw std::invalid_argument("ddfilter: no indices given");
    unsigned order = opt.order;
    for (std::uint64_t m : opt.indices) order = std::max(order, degree(m));
    if (opt.order != 0 && opt.order < order)
        throw std::invalid_argument("ddfilter: --order below the degree of an index");

    nlohmann::json run{{"command", "ddfilter"},
                       {"indices", indices_json(opt.indices)},
                       {"order", order},
                       {"omega_t_max", opt.omega_t_max},
                       {"grid_points", opt.grid_points},
                       {"duration", opt.duration},
                       {"spectrum", opt.spectrum},
                       {"amplitude", opt.amplitude},
                       {"exponent", opt.exponent},
                       {"cutoff", opt.cutoff},
                       {"omega_min", opt.omega_min},
                       {"omega_max", opt.omega_max}};

    ensure_dir(opt.out_dir);
    DdFilterResult result;

    std::vector<std::string> header{"omegaT"};
    for (std::uint64_t m : opt.indices) header.push_back("F_" + std::to_string(m));
    std::vector<std::vector<double>> rows;
    for (unsigned i = 0; i <= opt.grid_points; ++i) {
        double wt = opt.omega_t_max * i / opt.grid_points;
        std::vector<double> row{wt};
        for (std::uint64_t m : opt.indices) row.push_back(filter_function(m, order, wt));
        rows.push_back(std::move(row));
    }
    result.filter_path = opt.out_dir / "filter.csv";
    write_csv(result.filter_path, run.dump(), header, rows);

    if (!opt.spectrum.empty()) {
        double wmax = opt.omega_max;
        if (!(wmax > 0.0)) throw std::invalid_argument("ddfilter: --omega-max required");
        nlohmann::json entries = nlohmann::json::array();
        std::vector<std::pair<double, nlohmann::json>> ranked;
        for (std::uint64_t m : opt.indices) {
            double wmin = opt.omega_min > 0.0
                              ? opt.omega_min
                              : default_omega_min(m, opt.duration, wmax);
            NoiseSpectrum spec =
                opt.spectrum == "powerlaw"
                    ? NoiseSpectrum::power_law(opt.amplitude, opt.exponent, wmin, wmax)
                : opt.spectrum == "lorentzian"
                    ? NoiseSpectrum::lorentzian(opt.amplitude, opt.cutoff, wmin, wmax)
                    : throw std::invalid_argument("ddfilter: unknown spectrum '" +
                                                  opt.spectrum + "'");
            CoherenceResult c = coherence_decay(m, order, opt.duration, spec);
            ranked.emplace_back(c.chi, nlohmann::json{{"index", m},
                                                      {"rank", rank(m)},
                                                      {"negligibility", negligibility(m)},
                                                      {"omega_min", wmin},
                                                      {"chi", c.chi},
                                                      {"coherence", c.coherence}});
        }
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [chi, e] : ranked) entries.push_back(std::move(e));
        nlohmann::json j{{"ranking", entries}, {"run", run}};
        result.ranking_path = opt.out_dir / "chi_ranking.json";
        write_json(*result.ranking_path, j);
    }
    return result;
}

}  // namespace walshrec::cmd
