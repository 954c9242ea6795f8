#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <spdc/error.hpp>
#include <spdc/metrics.hpp>
#include <spdc/setup.hpp>
#include <spdc/sweep.hpp>
#include <spdc/units.hpp>

namespace spdc::app {

/// Schema violation in a run configuration; the message starts with the field path.
class ConfigError : public spdc::Error {
 public:
  ConfigError(const std::string& path, const std::string& what) : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSettings {
  double pump_waist_min = 50e-6;
  double pump_waist_max = 800e-6;
  std::size_t pump_steps = 76;
  WaistPolicy policy = WaistPolicy::purity_condition;
  AlphaConvention tie_alpha = AlphaConvention::consistent;
  double ratio_min = 0.3;
  double ratio_max = 1.2;
  std::size_t ratio_steps = 37;
  std::size_t scan_points = 121;
  std::size_t coarse_steps = 31;
};

struct RunConfig {
  std::string crystal_name;
  std::filesystem::path crystal_file;  // empty when resolved by name
  CrystalSpec crystal_data;
  SourceParameters source;
  bool degenerate = true;
  bool idler_derived = false;
  units::FrequencyConvention frequency_convention = units::FrequencyConvention::angular;
  AlphaConvention alpha_convention = AlphaConvention::consistent;
  MetricsOptions metrics;
  SweepSettings sweep;
  nlohmann::json resolved;  // fully defaulted configuration, echoed into every report
};

/// Parses and validates a configuration document. `base_dir` resolves a
/// relative crystal file path.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Rebuilds the echo after command-line overrides.
void refresh_resolved(RunConfig& config);

enum class Command { metrics, jsa, sweep_rate, sweep_ratio, optimize, dispersion_report };
std::optional<Command> parse_command(const std::string& name);
const char* to_string(Command command);

/// Runs a command and writes its outputs into `out_dir`. Returns the paths written.
std::vector<std::filesystem::path> run_command(Command command, const RunConfig& config,
                                               const std::filesystem::path& out_dir);

}  // namespace spdc::app
