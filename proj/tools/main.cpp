#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "walshrec/commands.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSaturation = 3;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Walsh-basis reconstruction of time-varying fields: transforms, "
                 "compression, simulated qubit acquisition, and decoupling filters"};
    app.require_subcommand(1);

    walshrec::cmd::TransformOptions topt;
    auto* transform = app.add_subcommand("transform", "Walsh spectrum of a profile");
    transform->add_option("--profile", topt.profile, "corpus name (f1..f5, exp, sin, const) or CSV path");
    transform->add_option("--order", topt.order, "transform the first 2^order coefficients");
    transform->add_option("--indices", topt.indices, "explicit Paley labels instead of --order");
    transform->add_option("--quad-points", topt.quad_points, "Gauss points per dyadic cell");
    transform->add_option("--out", topt.out_dir, "output directory");

    walshrec::cmd::CompressOptions copt;
    auto* compress = app.add_subcommand("compress", "compressed reconstruction and its error");
    compress->add_option("--profile", copt.profile, "corpus name or CSV path");
    compress->add_option("--method", copt.method, "cpmgpdd | threshold | subdegree")
        ->check(CLI::IsMember({"cpmgpdd", "threshold", "subdegree"}));
    compress->add_option("--terms", copt.terms, "cpmgpdd: number of terms per family");
    compress->add_option("--p0", copt.p0, "threshold: largest negligibility kept");
    compress->add_option("--order", copt.order, "subdegree: largest degree kept");
    compress->add_option("--quad-points", copt.quad_points, "Gauss points per dyadic cell");
    compress->add_option("--points", copt.reconstruction_points, "rows in reconstruction.csv");
    compress->add_option("--out", copt.out_dir, "output directory");

    walshrec::cmd::SenseOptions sopt;
    bool strict_saturation = false;
    auto* sense = app.add_subcommand("sense", "simulated shot-noise acquisition");
    sense->add_option("--profile", sopt.profile, "corpus name or CSV path");
    sense->add_option("--gamma", sopt.gamma, "coupling strength (rad per field unit per second)");
    sense->add_option("--duration", sopt.duration, "acquisition time; must match the profile");
    sense->add_option("--order", sopt.order, "acquire the first 2^order coefficients");
    sense->add_option("--indices", sopt.indices, "explicit Paley plan instead of --order");
    sense->add_option("--shots", sopt.shots, "repetitions per coefficient");
    sense->add_option("--seed", sopt.seed, "master RNG seed");
    sense->add_flag("--noiseless", sopt.noiseless, "skip sampling, invert exact probabilities");
    sense->add_option("--t2", sopt.t2, "visibility decay time (0 = no decay)");
    sense->add_option("--stretch", sopt.stretch, "visibility stretch exponent");
    sense->add_option("--pulse-exponent", sopt.pulse_exponent, "T2 scaling with pulse count");
    sense->add_option("--envelope-points", sopt.envelope_points, "rows in envelope.csv");
    sense->add_option("--quad-points", sopt.quad_points, "Gauss points per dyadic cell");
    sense->add_flag("--strict-saturation", strict_saturation,
                    "exit with status 3 when any estimate saturates");
    sense->add_option("--out", sopt.out_dir, "output directory");

    walshrec::cmd::DdFilterOptions dopt;
    auto* ddfilter = app.add_subcommand("ddfilter", "decoupling filter tables and coherence");
    ddfilter->add_option("--indices", dopt.indices, "Paley labels");
    ddfilter->add_option("--order", dopt.order, "filter order (0 = smallest valid)");
    ddfilter->add_option("--omega-t-max", dopt.omega_t_max, "grid upper end in omega*T");
    ddfilter->add_option("--grid-points", dopt.grid_points, "grid intervals");
    ddfilter->add_option("--duration", dopt.duration, "sequence duration T");
    ddfilter->add_option("--spectrum", dopt.spectrum, "powerlaw | lorentzian (enables ranking)")
        ->check(CLI::IsMember({"powerlaw", "lorentzian"}));
    ddfilter->add_option("--amplitude", dopt.amplitude, "spectrum amplitude");
    ddfilter->add_option("--exponent", dopt.exponent, "powerlaw exponent");
    ddfilter->add_option("--cutoff", dopt.cutoff, "lorentzian cutoff frequency");
    ddfilter->add_option("--omega-min", dopt.omega_min, "infrared cutoff (0 = automatic)");
    ddfilter->add_option("--omega-max", dopt.omega_max, "ultraviolet cutoff");
    ddfilter->add_option("--out", dopt.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*transform) {
            auto r = walshrec::cmd::cmd_transform(topt);
            std::printf("wrote %s\nwrote %s\n", r.spectrum_path.c_str(),
                        r.coefficients_path.c_str());
        } else if (*compress) {
            auto r = walshrec::cmd::cmd_compress(copt);
            std::printf("msqe = %.6g\nwrote %s\nwrote %s\n", r.msqe, r.report_path.c_str(),
                        r.reconstruction_path.c_str());
        } else if (*sense) {
            auto r = walshrec::cmd::cmd_sense(sopt);
            std::printf("envelope variance = %.6g\nclamp events = %u\nsaturated indices = %u\n",
                        r.envelope_variance, r.clamp_events, r.saturated_indices);
            std::printf("wrote %s\nwrote %s\n", r.acquisition_path.c_str(),
                        r.envelope_path.c_str());
            if (strict_saturation && r.saturated_indices > 0) {
                std::fprintf(stderr, "error: %u saturated estimate(s)\n", r.saturated_indices);
                return kExitSaturation;
            }
        } else if (*ddfilter) {
            auto r = walshrec::cmd::cmd_ddfilter(dopt);
            std::printf("wrote %s\n", r.filter_path.c_str());
            if (r.ranking_path) std::printf("wrote %s\n", r.ranking_path->c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return 0;
}
