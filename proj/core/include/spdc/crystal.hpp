#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace spdc {

/// Three-term Sellmeier form with wavelength in micrometers:
///   n^2 = a + b / (lambda^2 - c) - d * lambda^2
struct SellmeierCoefficients {
  double a = 1.0;
  double b = 0.0;  // um^2
  double c = 0.0;  // um^2
  double d = 0.0;  // um^-2

  double index_squared(double lambda_um) const;
  /// d(n^2)/d(lambda) in um^-1.
  double index_squared_derivative(double lambda_um) const;
};

/// A negative uniaxial crystal cut for type-I (e -> o + o) interaction.
struct CrystalSpec {
  std::string name;
  SellmeierCoefficients sellmeier_o;
  SellmeierCoefficients sellmeier_e;
  double validity_min = 0.0;  // m
  double validity_max = 0.0;  // m
  double d11 = 0.0;           // pm/V
  double d31 = 0.0;           // pm/V
  double length = 0.0;        // m
  double cut_angle = 0.0;     // rad, crystal axis to pump propagation
  double azimuth = 0.0;       // rad
  std::vector<std::string> citations;

  bool in_window(double wavelength) const {
    return wavelength >= validity_min && wavelength <= validity_max;
  }
};

/// Throws PreconditionError if length/cut angle/window are unusable.
void validate(const CrystalSpec& crystal);

/// Parse a crystal-data document:
/// {name, sellmeier_o, sellmeier_e, validity_window_nm, d11_pm_per_V,
///  d31_pm_per_V, source_citations}. Geometry (length, cut angle) is left at zero.
CrystalSpec crystal_from_json(const nlohmann::json& doc);
nlohmann::json crystal_to_json(const CrystalSpec& crystal);

CrystalSpec load_crystal_file(const std::filesystem::path& path);

/// Directory searched for `<name>.json` crystal data. Honors the
/// SPDC_CRYSTAL_DATA_DIR environment variable, then the source tree, then the
/// installed data directory.
std::filesystem::path crystal_data_dir();
CrystalSpec load_crystal(const std::string& name);

}  // namespace spdc
