#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "app.hpp"

namespace {

constexpr int kModuleError = 2;
constexpr int kIoError = 3;

int fail(int code, const char* type, const std::string& message, const std::filesystem::path& out_dir) {
  const nlohmann::json doc = {{"error", {{"type", type}, {"message", message}}}, {"exit_code", code}};
  std::cerr << doc.dump() << '\n';
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::ofstream f(out_dir / "error.json");
    if (f) f << doc.dump(2) << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace spdc;

  CLI::App cli{"Waist-tuned SPDC source modelling: pair rate, heralding efficiency, spectral purity"};
  std::string command;
  std::string config_path;
  std::string out_dir;
  std::optional<std::size_t> grid_resolution;
  bool walk_off = false;
  std::string alpha;
  std::optional<std::size_t> steps;

  cli.add_option("command", command, "metrics | jsa | sweep-rate | sweep-ratio | optimize | dispersion-report")
      ->required();
  cli.add_option("--config", config_path, "run configuration (JSON)")->required();
  cli.add_option("--out", out_dir, "output directory")->required();
  cli.add_option("--grid-resolution", grid_resolution, "samples per axis (>= 64)");
  cli.add_flag("--walk-off", walk_off, "include the walk-off integral");
  cli.add_option("--alpha-convention", alpha, "paper | consistent")
      ->check(CLI::IsMember({"paper", "paper_literal", "consistent"}));
  cli.add_option("--steps", steps, "number of rows for sweep-rate / sweep-ratio");
  CLI11_PARSE(cli, argc, argv);

  const auto cmd = app::parse_command(command);
  if (!cmd) return fail(kModuleError, "UsageError", "unknown command '" + command + "'", {});

  try {
    auto cfg = app::load_config(config_path);
    if (grid_resolution) {
      if (*grid_resolution < kMinGridResolution) {
        throw PreconditionError("--grid-resolution must be at least 64");
      }
      cfg.metrics.grid_resolution = *grid_resolution;
    }
    if (walk_off) cfg.metrics.jsa.walk_off = true;
    if (!alpha.empty()) {
      cfg.alpha_convention = alpha == "consistent" ? AlphaConvention::consistent : AlphaConvention::paper_literal;
    }
    if (steps) {
      cfg.sweep.pump_steps = *steps;
      cfg.sweep.ratio_steps = *steps;
    }
    app::refresh_resolved(cfg);

    const auto files = app::run_command(*cmd, cfg, out_dir);
    for (const auto& f : files) std::cout << f.string() << '\n';
    return 0;
  } catch (const app::IoError& e) {
    return fail(kIoError, "IoError", e.what(), out_dir);
  } catch (const app::ConfigError& e) {
    return fail(kModuleError, "ConfigError", e.what(), out_dir);
  } catch (const ConvergenceError& e) {
    return fail(kModuleError, "ConvergenceError", e.what(), out_dir);
  } catch (const DomainError& e) {
    return fail(kModuleError, "DomainError", e.what(), out_dir);
  } catch (const PreconditionError& e) {
    return fail(kModuleError, "PreconditionError", e.what(), out_dir);
  } catch (const ConsistencyError& e) {
    return fail(kModuleError, "ConsistencyError", e.what(), out_dir);
  } catch (const Error& e) {
    return fail(kModuleError, "Error", e.what(), out_dir);
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kIoError, "IoError", e.what(), out_dir);
  } catch (const std::exception& e) {
    return fail(kModuleError, "Error", e.what(), out_dir);
  }
}
