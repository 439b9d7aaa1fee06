#include "walshrec/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace walshrec {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json spectrum_to_json(const WalshSpectrum& spectrum) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto& [m, v] : spectrum.coefficients) coeffs[std::to_string(m)] = v;
    return {{"T", spectrum.duration},
            {"ordering", "paley"},
            {"coefficients", coeffs},
            {"provenance", spectrum.provenance == Provenance::Exact ? "exact" : "estimated"}};
}

WalshSpectrum spectrum_from_json(const nlohmann::json& j) {
    WalshSpectrum spec;
    if (j.at("ordering").get<std::string>() != "paley")
        throw std::invalid_argument("spectrum: only paley-ordered files are supported");
    spec.duration = j.at("T").get<double>();
    if (!(spec.duration > 0.0)) throw std::invalid_argument("spectrum: T must be > 0");
    std::string prov = j.at("provenance").get<std::string>();
    if (prov == "exact")
        spec.provenance = Provenance::Exact;
    else if (prov == "estimated")
        spec.provenance = Provenance::Estimated;
    else
        throw std::invalid_argument("spectrum: unknown provenance '" + prov + "'");
    for (const auto& [key, value] : j.at("coefficients").items())
        spec.coefficients[std::stoull(key)] = value.get<double>();
    return spec;
}

void write_spectrum_json(const std::filesystem::path& path, const WalshSpectrum& spectrum,
                         const nlohmann::json* run_config) {
    nlohmann::json j = spectrum_to_json(spectrum);
    if (run_config) j["run"] = *run_config;
    write_json(path, j);
}

WalshSpectrum read_spectrum_json(const std::filesystem::path& path) {
    return spectrum_from_json(read_json(path));
}

FieldProfile read_profile_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile file " + path.string());
    std::string line;
    bool header_seen = false;
    std::vector<double> t, value;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            // tolerate whitespace in the header but require t,value columns
            std::string squeezed;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) squeezed += c;
            if (squeezed != "t,value")
                throw std::runtime_error("profile CSV must start with header 't,value'");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            throw std::runtime_error("malformed profile row: " + line);
        t.push_back(std::stod(a));
        value.push_back(std::stod(b));
    }
    if (t.size() < 2) throw std::runtime_error("profile CSV needs at least 2 rows");
    std::size_t n = t.size();
    if (n & (n - 1)) throw std::runtime_error("profile CSV row count must be a power of two");
    double dt = t[1] - t[0];
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(t[i] - t[i - 1] - dt) > 1e-9 * std::abs(dt))
            throw std::runtime_error("profile CSV grid must be uniform");
    // left-edge rows start at 0, midpoint rows at dt/2; either way T = n*dt
    double scale = dt * static_cast<double>(n);
    SampleConvention conv;
    if (std::abs(t[0]) <= 1e-12 * scale)
        conv = SampleConvention::LeftEdge;
    else if (std::abs(t[0] - 0.5 * dt) <= 1e-9 * scale)
        conv = SampleConvention::CellMidpoint;
    else
        throw std::runtime_error("profile CSV grid must start at 0 or at half a step");
    return FieldProfile::from_samples(std::move(value), scale, conv, path.stem().string());
}

void write_profile_csv(const std::filesystem::path& path, const FieldProfile& profile,
                       unsigned order, const std::string& comment) {
    FieldProfile grid = profile.is_sampled()
                            ? profile
                            : FieldProfile::sampled_from(profile, order);
    const auto& s = grid.samples();
    double T = grid.duration();
    double offset = grid.convention() == SampleConvention::CellMidpoint ? 0.5 : 0.0;
    std::vector<std::vector<double>> rows;
    rows.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        rows.push_back({(static_cast<double>(i) + offset) / static_cast<double>(s.size()) * T,
                        s[i]});
    write_csv(path, comment, {"t", "value"}, rows);
}

void write_csv(const std::filesystem::path& path, const std::string& comment,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    if (!comment.empty()) out << "# " << comment << "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return nlohmann::json::parse(in);
}

}  // namespace walshrec
