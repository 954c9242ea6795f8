#include "spdc/crystal.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "spdc/error.hpp"
#include "spdc/units.hpp"

#ifndef SPDC_DEFAULT_DATA_DIR
#define SPDC_DEFAULT_DATA_DIR "data"
#endif
#ifndef SPDC_INSTALL_DATA_DIR
#define SPDC_INSTALL_DATA_DIR SPDC_DEFAULT_DATA_DIR
#endif

namespace spdc {

double SellmeierCoefficients::index_squared(double lambda_um) const {
  const double l2 = lambda_um * lambda_um;
  return a + b / (l2 - c) - d * l2;
}

double SellmeierCoefficients::index_squared_derivative(double lambda_um) const {
  const double l2 = lambda_um * lambda_um;
  const double denom = l2 - c;
  return -2.0 * b * lambda_um / (denom * denom) - 2.0 * d * lambda_um;
}

void validate(const CrystalSpec& crystal) {
  if (!(crystal.length > 0.0)) {
    throw PreconditionError("crystal length must be positive");
  }
  if (!(crystal.cut_angle > 0.0 && crystal.cut_angle < kPi / 2.0)) {
    throw PreconditionError("crystal cut angle must lie in (0, pi/2)");
  }
  if (!(crystal.validity_min > 0.0 && crystal.validity_max > crystal.validity_min)) {
    throw PreconditionError("crystal '" + crystal.name + "' has an empty validity window");
  }
}

namespace {

SellmeierCoefficients sellmeier_from_json(const nlohmann::json& j, const char* field) {
  if (!j.is_array() || j.size() != 4) {
    throw PreconditionError(std::string("crystal data: '") + field +
                            "' must be an array [a, b, c, d]");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

}  // namespace

CrystalSpec crystal_from_json(const nlohmann::json& doc) {
  CrystalSpec c;
  try {
    c.name = doc.at("name").get<std::string>();
    c.sellmeier_o = sellmeier_from_json(doc.at("sellmeier_o"), "sellmeier_o");
    c.sellmeier_e = sellmeier_from_json(doc.at("sellmeier_e"), "sellmeier_e");
    const auto& window = doc.at("validity_window_nm");
    c.validity_min = units::nm(window.at(0).get<double>());
    c.validity_max = units::nm(window.at(1).get<double>());
    c.d11 = doc.at("d11_pm_per_V").get<double>();
    c.d31 = doc.at("d31_pm_per_V").get<double>();
    if (doc.contains("source_citations")) {
      c.citations = doc.at("source_citations").get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("crystal data: ") + e.what());
  }
  if (!(c.validity_max > c.validity_min)) {
    throw PreconditionError("crystal data: validity_window_nm must be increasing");
  }
  return c;
}

nlohmann::json crystal_to_json(const CrystalSpec& c) {
  auto coeffs = [](const SellmeierCoefficients& s) {
    return nlohmann::json::array({s.a, s.b, s.c, s.d});
  };
  return {
      {"name", c.name},
      {"sellmeier_o", coeffs(c.sellmeier_o)},
      {"sellmeier_e", coeffs(c.sellmeier_e)},
      {"validity_window_nm", {units::to_nm(c.validity_min), units::to_nm(c.validity_max)}},
      {"d11_pm_per_V", c.d11},
      {"d31_pm_per_V", c.d31},
      {"length_um", units::to_um(c.length)},
      {"cut_angle_deg", units::to_deg(c.cut_angle)},
      {"azimuth_deg", units::to_deg(c.azimuth)},
      {"source_citations", c.citations},
  };
}

CrystalSpec load_crystal_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw PreconditionError("cannot open crystal data file " + path.string());
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError("crystal data file " + path.string() + ": " + e.what());
  }
  return crystal_from_json(doc);
}

std::filesystem::path crystal_data_dir() {
  if (const char* env = std::getenv("SPDC_CRYSTAL_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  const std::filesystem::path source_tree = SPDC_DEFAULT_DATA_DIR;
  std::error_code ec;
  return std::filesystem::is_directory(source_tree, ec) ? source_tree : SPDC_INSTALL_DATA_DIR;
}

CrystalSpec load_crystal(const std::string& name) {
  return load_crystal_file(crystal_data_dir() / (name + ".json"));
}

}  // namespace spdc
