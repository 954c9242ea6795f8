#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include <spdc/io.hpp>

#include "app.hpp"

namespace spdc::app {

using nlohmann::json;

std::optional<Command> parse_command(const std::string& name) {
  if (name == "metrics") return Command::metrics;
  if (name == "jsa") return Command::jsa;
  if (name == "sweep-rate") return Command::sweep_rate;
  if (name == "sweep-ratio") return Command::sweep_ratio;
  if (name == "optimize") return Command::optimize;
  if (name == "dispersion-report") return Command::dispersion_report;
  return std::nullopt;
}

const char* to_string(Command command) {
  switch (command) {
    case Command::metrics: return "metrics";
    case Command::jsa: return "jsa";
    case Command::sweep_rate: return "sweep-rate";
    case Command::sweep_ratio: return "sweep-ratio";
    case Command::optimize: return "optimize";
    case Command::dispersion_report: return "dispersion-report";
  }
  return "?";
}

namespace {

class Writer {
 public:
  explicit Writer(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  template <class Fn>
  void text(const std::string& name, Fn&& fn) {
    const auto path = dir_ / name;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    fn(out);
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
    written_.push_back(path);
  }

  void json_file(const std::string& name, const json& doc) {
    text(name, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  }

  std::vector<std::filesystem::path> written() const { return written_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

json with_settings(json doc, const RunConfig& cfg, Command command, const Source& src) {
  doc["command"] = to_string(command);
  doc["settings"] = cfg.resolved;
  if (!src.warnings.empty()) doc["setup_warnings"] = src.warnings;
  return doc;
}

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions o;
  o.metrics = cfg.metrics;
  o.policy = cfg.sweep.policy;
  o.tie_alpha = cfg.sweep.tie_alpha;
  return o;
}

void run_dispersion_report(const RunConfig& cfg, const Source& src, Writer& out) {
  const auto& c = src.crystal;
  const auto& g = src.geometry;
  json modes = json::array();
  for (const auto* mode : {&g.pump, &g.signal, &g.idler}) {
    const double n = index_for(mode->polarization, mode->central_wavelength, c.cut_angle, c);
    const double N = inverse_group_velocity(*mode, c.cut_angle, c);
    modes.push_back({{"role", spdc::to_string(mode->role)},
                     {"polarization", spdc::to_string(mode->polarization)},
                     {"wavelength_nm", units::to_nm(mode->central_wavelength)},
                     {"index", n},
                     {"inverse_group_velocity_s_per_m", N},
                     {"group_index", N * kSpeedOfLight}});
  }
  const double ext_s = external_angle(g.theta_s, g.signal.central_wavelength, c);
  const double ext_i = external_angle(g.theta_i, g.idler.central_wavelength, c);
  const double rho_c = walk_off_angle(src.collinear_angle, g.pump.central_wavelength, c);
  const double rho = walk_off_angle(c.cut_angle, g.pump.central_wavelength, c);
  const auto f = geometry_factors(g);

  json eq32 = json::object();
  json deltas = json::object();
  for (auto conv : {AlphaConvention::consistent, AlphaConvention::paper_literal}) {
    const char* key = conv == AlphaConvention::consistent ? "consistent" : "paper_literal";
    const auto d = delta_coefficients(g, c, conv);
    json entry = {{"delta_s", d.delta_s}, {"delta_i", d.delta_i}, {"delta_si", d.delta_si}};
    try {
      entry["gaussian_model_purity"] = gaussian_model_purity(d);
    } catch (const DomainError& e) {
      entry["gaussian_model_purity"] = nullptr;
    }
    deltas[key] = entry;
    try {
      eq32[key] = units::to_um(purity_waist(g.waist_pump, g, c, conv));
    } catch (const DomainError& e) {
      eq32[key] = e.what();
    }
  }

  json doc = {
      {"schema_version", io::kSchemaVersion},
      {"crystal", c.name},
      {"citations", c.citations},
      {"modes", modes},
      {"collinear_cut_angle_deg", units::to_deg(src.collinear_angle)},
      {"cut_angle_deg", units::to_deg(c.cut_angle)},
      {"theta_s_internal_deg", units::to_deg(g.theta_s)},
      {"theta_i_internal_deg", units::to_deg(g.theta_i)},
      {"theta_s_external_deg", units::to_deg(ext_s)},
      {"theta_i_external_deg", units::to_deg(ext_i)},
      {"full_external_angle_deg", units::to_deg(ext_s + ext_i)},
      {"pump_walk_off_collinear_deg", units::to_deg(rho_c)},
      {"pump_walk_off_deg", units::to_deg(rho)},
      {"pump_walk_off_growth_deg", units::to_deg(rho - rho_c)},
      {"d_eff_pm_per_V", effective_nonlinearity(c.cut_angle, c.azimuth, c)},
      {"geometry_factors_per_m2", {{"A", f.A}, {"C", f.C}, {"D", f.D}, {"F", f.F}, {"H", f.H}}},
      {"delta_coefficients_s2", deltas},
      {"purity_waist_um", eq32},
  };
  out.json_file("dispersion.json", with_settings(doc, cfg, Command::dispersion_report, src));

  out.text("dispersion.csv", [&](std::ostream& os) {
    os << std::setprecision(12) << "wavelength_nm,n_o,n_e_principal,n_e_cut\n";
    const double lo = std::ceil(units::to_nm(c.validity_min) / 10.0) * 10.0;
    for (double nm = lo; units::nm(nm) <= c.validity_max; nm += 10.0) {
      const double lam = units::nm(nm);
      os << nm << ',' << index_ordinary(lam, c) << ',' << index_extraordinary_principal(lam, c) << ','
         << index_extraordinary(lam, c.cut_angle, c) << '\n';
    }
  });
}

}  // namespace

std::vector<std::filesystem::path> run_command(Command command, const RunConfig& cfg,
                                               const std::filesystem::path& out_dir) {
  const auto src = make_source(cfg.crystal_data, cfg.source);
  const auto& geom = src.geometry;
  const auto& crystal = src.crystal;
  Writer out(out_dir);

  switch (command) {
    case Command::metrics: {
      auto report = compute_metrics(geom, crystal, src.filters, cfg.metrics);
      report.settings = cfg.resolved;
      report.warnings.insert(report.warnings.begin(), src.warnings.begin(), src.warnings.end());
      // make_source and compute_metrics both validate the geometry
      std::sort(report.warnings.begin(), report.warnings.end());
      report.warnings.erase(std::unique(report.warnings.begin(), report.warnings.end()), report.warnings.end());
      auto doc = io::to_json(report);
      doc["command"] = to_string(command);
      out.json_file("metrics.json", doc);
      out.text("metrics.csv", [&](std::ostream& os) {
        io::write_metrics_csv_header(os);
        io::write_metrics_csv_row(os, report);
      });
      break;
    }
    case Command::jsa: {
      auto grid = jsa_grid(filter_grid(src.filters, geom, cfg.metrics.grid_resolution), geom, crystal,
                           cfg.metrics.jsa);
      apply_filters(grid, src.filters);
      const auto spectrum = schmidt_purity(grid, cfg.metrics.decompose);
      out.text("jsa.csv", [&](std::ostream& os) { io::write_jsa_csv(os, grid); });
      out.json_file("jsa.json", with_settings(io::jsa_to_json(grid), cfg, command, src));
      out.text("schmidt.csv", [&](std::ostream& os) { io::write_schmidt_csv(os, spectrum); });
      break;
    }
    case Command::sweep_rate: {
      const auto table = rate_vs_pump_waist(cfg.sweep.pump_waist_min, cfg.sweep.pump_waist_max,
                                            cfg.sweep.pump_steps, geom, crystal, src.filters,
                                            sweep_options(cfg));
      out.text("sweep_rate.csv", [&](std::ostream& os) { io::write_sweep_csv(os, table); });
      out.json_file("sweep_rate.json", with_settings(io::to_json(table), cfg, command, src));
      break;
    }
    case Command::sweep_ratio: {
      const auto table = metrics_vs_waist_ratio(cfg.sweep.ratio_min, cfg.sweep.ratio_max,
                                                cfg.sweep.ratio_steps, geom.waist_pump, geom, crystal,
                                                src.filters, sweep_options(cfg));
      out.text("sweep_ratio.csv", [&](std::ostream& os) { io::write_sweep_csv(os, table); });
      out.json_file("sweep_ratio.json", with_settings(io::to_json(table), cfg, command, src));
      break;
    }
    case Command::optimize: {
      OptimizeOptions o;
      o.sweep = sweep_options(cfg);
      o.pump_min = cfg.sweep.pump_waist_min;
      o.pump_max = cfg.sweep.pump_waist_max;
      o.coarse_steps = cfg.sweep.coarse_steps;
      o.scan_points = cfg.sweep.scan_points;
      o.eq32_alpha = cfg.alpha_convention;
      const auto result = optimize(geom, crystal, src.filters, o);
      out.json_file("optimize.json", with_settings(io::to_json(result), cfg, command, src));
      out.text("optimize_scan.csv", [&](std::ostream& os) { io::write_sweep_csv(os, result.scan); });
      break;
    }
    case Command::dispersion_report:
      run_dispersion_report(cfg, src, out);
      break;
  }
  return out.written();
}

}  // namespace spdc::app
