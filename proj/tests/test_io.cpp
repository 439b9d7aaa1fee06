#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "walshrec/commands.hpp"
#include "walshrec/io.hpp"

using namespace walshrec;

namespace {

std::filesystem::path temp_dir(const char* tag) {
    auto dir = std::filesystem::temp_directory_path() /
               (std::string("walshrec_io_") + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("spectrum json round trip") {
    WalshSpectrum spec;
    spec.duration = 2.5;
    spec.provenance = Provenance::Estimated;
    spec.coefficients = {{0, 1.125}, {3, -0.0625}, {17, 1e-9}};
    auto dir = temp_dir("spectrum");
    auto path = dir / "s.json";
    write_spectrum_json(path, spec);
    auto back = read_spectrum_json(path);
    CHECK(back.duration == spec.duration);
    CHECK(back.provenance == Provenance::Estimated);
    CHECK(back.coefficients == spec.coefficients);

    auto j = read_json(path);
    CHECK(j.at("ordering") == "paley");
    j["ordering"] = "sequency";
    CHECK_THROWS_AS(spectrum_from_json(j), std::invalid_argument);
}

TEST_CASE("profile csv round trip") {
    auto f = FieldProfile::sampled_from(corpus_profile("f5"), 6);
    auto dir = temp_dir("profile");
    auto path = dir / "f5.csv";
    write_profile_csv(path, f, 6, "demo");
    auto back = read_profile_csv(path);
    CHECK(back.duration() == doctest::Approx(f.duration()));
    CHECK(back.convention() == SampleConvention::CellMidpoint);
    REQUIRE(back.samples().size() == f.samples().size());
    for (std::size_t i = 0; i < f.samples().size(); ++i)
        CHECK(back.samples()[i] == doctest::Approx(f.samples()[i]).epsilon(1e-15));
}

TEST_CASE("profile csv validation") {
    auto dir = temp_dir("bad");
    auto write_file = [&](const char* name, const char* body) {
        auto p = dir / name;
        std::ofstream out(p);
        out << body;
        return p;
    };
    CHECK_THROWS(read_profile_csv(write_file("h.csv", "x,y\n0,1\n0.5,2\n")));
    CHECK_THROWS(read_profile_csv(write_file("n.csv", "t,value\n0,1\n0.5,2\n0.75,3\n")));
    CHECK_THROWS(read_profile_csv(write_file("u.csv", "t,value\n0,1\n0.1,2\n0.5,3\n0.6,4\n")));
    CHECK_THROWS(read_profile_csv(write_file("o.csv", "t,value\n5.0,1\n5.5,2\n")));
    auto ok = read_profile_csv(write_file("ok.csv", "# comment\nt,value\n0,1\n0.5,2\n"));
    CHECK(ok.convention() == SampleConvention::LeftEdge);
    CHECK(ok.duration() == doctest::Approx(1.0));
}

TEST_CASE("transform command outputs") {
    auto dir = temp_dir("transform");
    cmd::TransformOptions opt;
    opt.profile = "sin";
    opt.order = 5;
    opt.out_dir = dir;
    auto res = cmd::cmd_transform(opt);
    auto spec = read_spectrum_json(res.spectrum_path);
    CHECK(spec.coefficients.size() == 32);
    // only these labels carry the sine
    for (const auto& [m, c] : spec.coefficients) {
        bool expected_nonzero =
            m == 1 || m == 7 || m == 11 || m == 13 || m == 19 || m == 21 || m == 25 || m == 31;
        CHECK((std::abs(c) > 1e-9) == expected_nonzero);
    }
    auto j = read_json(res.spectrum_path);
    CHECK(j.contains("run"));
    CHECK(slurp(res.coefficients_path).rfind("# ", 0) == 0);  // embedded run line
}

TEST_CASE("compress command report") {
    auto dir = temp_dir("compress");
    cmd::CompressOptions opt;
    opt.profile = "f4";
    opt.method = "threshold";
    opt.p0 = 6;
    opt.out_dir = dir;
    auto res = cmd::cmd_compress(opt);
    CHECK(res.msqe > 12.010);
    CHECK(res.msqe < 12.020);
    auto j = read_json(res.report_path);
    CHECK(j.at("method") == "threshold");
    CHECK(j.at("parameters").at("p0") == 6);
    CHECK(j.at("selected_indices") == nlohmann::json({0, 1, 2, 3, 4, 5, 8, 16}));
    CHECK(j.at("pulse_count").get<std::uint64_t>() > 0);
    CHECK(j.at("bounds").contains("truncation"));

    // threshold p0 = 0 reconstructs the mean value
    cmd::CompressOptions mean_opt;
    mean_opt.profile = "exp";
    mean_opt.method = "threshold";
    mean_opt.p0 = 0;
    mean_opt.out_dir = temp_dir("compress0");
    auto res0 = cmd::cmd_compress(mean_opt);
    auto j0 = read_json(res0.report_path);
    CHECK(j0.at("selected_indices") == nlohmann::json({0}));
}

TEST_CASE("subdegree compress carries its error bound") {
    cmd::CompressOptions opt;
    opt.profile = "sin";
    opt.method = "subdegree";
    opt.order = 5;
    opt.out_dir = temp_dir("compress_sd");
    auto res = cmd::cmd_compress(opt);
    auto j = read_json(res.report_path);
    CHECK(j.at("selected_indices").size() == 18);
    CHECK(j.at("bounds").contains("subdegree"));
}

TEST_CASE("sense command noiseless matches transform") {
    auto dir = temp_dir("sense");
    cmd::SenseOptions opt;
    opt.profile = "exp";
    opt.order = 4;
    opt.noiseless = true;
    opt.out_dir = dir;
    auto res = cmd::cmd_sense(opt);
    auto j = read_json(res.acquisition_path);
    auto spec = spectrum_from_json(j.at("spectrum"));
    auto f = corpus_profile("exp");
    for (const auto& [m, c] : spec.coefficients)
        CHECK(c == doctest::Approx(walsh_coefficient(f, paley(m))).epsilon(1e-12));
    CHECK(j.at("records").size() == 16);
    CHECK(res.envelope_variance ==
          doctest::Approx(16.0 / static_cast<double>(opt.shots)));
    // envelope csv has the four columns and the run line
    auto text = slurp(res.envelope_path);
    CHECK(text.find("t,mean,mean_minus_sigma,mean_plus_sigma") != std::string::npos);
}

TEST_CASE("sense command is byte-reproducible") {
    cmd::SenseOptions opt;
    opt.profile = "f1";
    opt.order = 3;
    opt.shots = 2000;
    opt.seed = 31337;
    opt.out_dir = temp_dir("sense_a");
    auto a = cmd::cmd_sense(opt);
    opt.out_dir = temp_dir("sense_b");
    auto b = cmd::cmd_sense(opt);
    CHECK(slurp(a.acquisition_path) == slurp(b.acquisition_path));
    CHECK(slurp(a.envelope_path) == slurp(b.envelope_path));
}

TEST_CASE("ddfilter command outputs") {
    cmd::DdFilterOptions opt;
    opt.indices = {0, 1, 2, 3};
    opt.omega_t_max = 10.0;
    opt.grid_points = 50;
    opt.spectrum = "powerlaw";
    opt.amplitude = 1.0;
    opt.exponent = 0.0;
    opt.omega_min = 1e-4;
    opt.omega_max = 5e-2;
    opt.out_dir = temp_dir("ddfilter");
    auto res = cmd::cmd_ddfilter(opt);
    auto text = slurp(res.filter_path);
    CHECK(text.find("omegaT,F_0,F_1,F_2,F_3") != std::string::npos);
    // first row is the zero-frequency point: every filter starts at 0
    auto header_end = text.find("omegaT");
    auto line_start = text.find('\n', header_end) + 1;
    auto line = text.substr(line_start, text.find('\n', line_start) - line_start);
    CHECK(line == "0,0,0,0,0");

    REQUIRE(res.ranking_path.has_value());
    auto j = read_json(*res.ranking_path);
    auto ranking = j.at("ranking");
    REQUIRE(ranking.size() == 4);
    // low-frequency-confined noise: chi ranking follows negligibility
    // (ascending chi = descending negligibility), with w0 unprotected at the top
    CHECK(ranking.front().at("index") == 3);
    CHECK(ranking.back().at("index") == 0);
    double prev = 0.0;
    for (const auto& e : ranking) {
        CHECK(e.at("chi").get<double>() >= prev);
        prev = e.at("chi").get<double>();
    }
}

TEST_CASE("command validation failures") {
    cmd::CompressOptions bad;
    bad.method = "nope";
    CHECK_THROWS_AS(cmd::cmd_compress(bad), std::invalid_argument);
    cmd::SenseOptions mismatched;
    mismatched.profile = "exp";
    mismatched.duration = 2.0;
    CHECK_THROWS_AS(cmd::cmd_sense(mismatched), std::invalid_argument);
    cmd::DdFilterOptions low_order;
    low_order.indices = {13};
    low_order.order = 2;
    CHECK_THROWS_AS(cmd::cmd_ddfilter(low_order), std::invalid_argument);
    CHECK_THROWS_AS(cmd::load_profile("not_a_profile"), std::out_of_range);
}
