#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <string>

namespace {

const std::string kCli = WALSHREC_CLI_PATH;

std::filesystem::path temp_dir(const char* tag) {
    auto dir = std::filesystem::temp_directory_path() / (std::string("walshrec_cli_") + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("transform and compress succeed") {
    auto dir = temp_dir("ok");
    CHECK(run("transform --profile exp --order 4 --out " + (dir / "t").string()) == 0);
    CHECK(std::filesystem::exists(dir / "t" / "spectrum.json"));
    CHECK(run("compress --profile f4 --method threshold --p0 6 --out " +
              (dir / "c").string()) == 0);
    CHECK(std::filesystem::exists(dir / "c" / "report.json"));
    CHECK(run("ddfilter --indices 0 1 3 --omega-t-max 5 --out " + (dir / "d").string()) == 0);
    CHECK(std::filesystem::exists(dir / "d" / "filter.csv"));
}

TEST_CASE("identical seeds give identical bytes") {
    auto dir = temp_dir("repro");
    std::string base = "sense --profile f1 --order 3 --shots 1000 --seed 99 --out ";
    CHECK(run(base + (dir / "a").string()) == 0);
    CHECK(run(base + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "acquisition.json") == slurp(dir / "b" / "acquisition.json"));
    CHECK(slurp(dir / "a" / "envelope.csv") == slurp(dir / "b" / "envelope.csv"));
}

TEST_CASE("validation errors exit with status 2") {
    auto dir = temp_dir("bad");
    CHECK(run("compress --profile nope --out " + dir.string()) == 2);
    CHECK(run("compress --profile exp --method bogus --out " + dir.string()) == 2);
    CHECK(run("sense --profile exp --duration 3.5 --out " + dir.string()) == 2);
    CHECK(run("nonsense") == 2);
}

TEST_CASE("saturation with the strict flag exits with status 3") {
    auto dir = temp_dir("sat");
    // constant profile at the edge of the dynamic range: gamma*T*b = pi/2
    std::ofstream csv(dir / "edge.csv");
    csv << "t,value\n" << std::setprecision(17);
    for (int i = 0; i < 4; ++i) csv << 0.25 * i << "," << std::numbers::pi / 2.0 << "\n";
    csv.close();
    std::string base = "sense --profile " + (dir / "edge.csv").string() +
                       " --indices 0 --noiseless --strict-saturation --out ";
    CHECK(run(base + (dir / "out").string()) == 3);
    // without the strict flag the run reports but succeeds
    std::string soft = "sense --profile " + (dir / "edge.csv").string() +
                       " --indices 0 --noiseless --out ";
    CHECK(run(soft + (dir / "out2").string()) == 0);
}
