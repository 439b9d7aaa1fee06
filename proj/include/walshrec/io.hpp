#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "walshrec/profile.hpp"
#include "walshrec/walsh.hpp"

namespace walshrec {

/// Spectrum file: {"T":..., "ordering":"paley", "coefficients":{"m":value},
/// "provenance":"exact"|"estimated"}.
nlohmann::json spectrum_to_json(const WalshSpectrum& spectrum);
WalshSpectrum spectrum_from_json(const nlohmann::json& j);
void write_spectrum_json(const std::filesystem::path& path, const WalshSpectrum& spectrum,
                         const nlohmann::json* run_config = nullptr);
WalshSpectrum read_spectrum_json(const std::filesystem::path& path);

/// Sampled profile file: CSV with header `t,value`, uniformly spaced, 2^n
/// rows. Lines starting with '#' are skipped.
FieldProfile read_profile_csv(const std::filesystem::path& path);
void write_profile_csv(const std::filesystem::path& path, const FieldProfile& profile,
                       unsigned order, const std::string& comment = "");

/// Generic CSV writer: optional '#' comment line, then header, then rows
/// formatted with round-trip precision.
void write_csv(const std::filesystem::path& path, const std::string& comment,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace walshrec
