#include "spdc/io.hpp"

#include <iomanip>

namespace spdc::io {

namespace {

struct PrecisionGuard {
  explicit PrecisionGuard(std::ostream& os) : os_(os), flags_(os.flags()), precision_(os.precision()) {
    os_ << std::setprecision(12);
  }
  ~PrecisionGuard() {
    os_.flags(flags_);
    os_.precision(precision_);
  }
  std::ostream& os_;
  std::ios::fmtflags flags_;
  std::streamsize precision_;
};

nlohmann::json row_json(const SweepRow& r) {
  return {{"swept_value", r.swept_value}, {"R", r.R}, {"eta", r.eta}, {"purity", r.purity}};
}

}  // namespace

void write_jsa_csv(std::ostream& os, const JsaGrid& grid) {
  PrecisionGuard guard(os);
  os << "omega_s_detuning,omega_i_detuning,re,im,abs2\n";
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const auto v = grid.at(r, c) * grid.normalization;
      os << grid.detuning_s[r] << ',' << grid.detuning_i[c] << ',' << v.real() << ',' << v.imag()
         << ',' << std::norm(v) << '\n';
    }
  }
}

nlohmann::json jsa_to_json(const JsaGrid& grid) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ri = nlohmann::json::array();
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const auto v = grid.at(r, c) * grid.normalization;
      rr.push_back(v.real());
      ri.push_back(v.imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"schema_version", kSchemaVersion},
          {"center_omega_s", grid.center_s},
          {"center_omega_i", grid.center_i},
          {"detuning_s", grid.detuning_s},
          {"detuning_i", grid.detuning_i},
          {"normalization", grid.normalization},
          {"real", std::move(re)},
          {"imag", std::move(im)}};
}

void write_schmidt_csv(std::ostream& os, const SchmidtSpectrum& spectrum) {
  PrecisionGuard guard(os);
  os << "n,lambda_n\n";
  for (std::size_t n = 0; n < spectrum.lambdas.size(); ++n) {
    os << n << ',' << spectrum.lambdas[n] << '\n';
  }
  os << "# purity=" << spectrum.purity << ", schmidt_number=" << spectrum.schmidt_number << '\n';
}

nlohmann::json to_json(const MetricsReport& report) {
  return {{"schema_version", kSchemaVersion},
          {"pair_rate", report.pair_rate},
          {"singles_signal", report.singles_signal},
          {"singles_idler", report.singles_idler},
          {"heralding_efficiency", report.heralding},
          {"purity", report.purity},
          {"schmidt_number", report.schmidt_number},
          {"mode_sum",
           {{"signal", {{"n_max_used", report.n_max_signal}, {"tail_estimate", report.tail_signal}}},
            {"idler", {{"n_max_used", report.n_max_idler}, {"tail_estimate", report.tail_idler}}}}},
          {"warnings", report.warnings},
          {"settings", report.settings}};
}

void write_metrics_csv_header(std::ostream& os) {
  os << "pair_rate,singles_signal,singles_idler,eta,purity,schmidt_number\n";
}

void write_metrics_csv_row(std::ostream& os, const MetricsReport& report) {
  PrecisionGuard guard(os);
  os << report.pair_rate << ',' << report.singles_signal << ',' << report.singles_idler << ','
     << report.heralding << ',' << report.purity << ',' << report.schmidt_number << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  PrecisionGuard guard(os);
  os << "swept_value,R,eta,purity\n";
  for (const auto& r : rows) {
    os << r.swept_value << ',' << r.R << ',' << r.eta << ',' << r.purity << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) { write_sweep_csv(os, table.rows); }

nlohmann::json to_json(const SweepTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) rows.push_back(row_json(r));
  nlohmann::json out = {{"schema_version", kSchemaVersion}, {"rows", rows}, {"skipped", table.skipped}};
  if (!table.rows.empty()) out["argmax"] = row_json(table.rows[table.argmax]);
  return out;
}

nlohmann::json to_json(const OptimizationResult& result) {
  nlohmann::json scan = nlohmann::json::array();
  for (const auto& r : result.scan) scan.push_back(row_json(r));
  auto strip = [](const MetricsReport& m) {
    auto j = to_json(m);
    j.erase("settings");
    j.erase("schema_version");
    return j;
  };
  nlohmann::json out = {{"schema_version", kSchemaVersion},
                        {"W0p_star_um", result.W0p_star * 1e6},
                        {"rate_at_W0p_star", result.rate_at_W0p_star},
                        {"W0s_eq32_um", result.W0s_eq32 * 1e6},
                        {"W0s_purity_star_um", result.W0s_purity_star * 1e6},
                        {"intersection_found", result.intersection_found},
                        {"metrics_at_eq32", strip(result.at_eq32)},
                        {"metrics_at_purity_star", strip(result.at_purity_star)},
                        {"scan", scan}};
  if (result.W0s_intersection) {
    out["W0s_intersection_um"] = *result.W0s_intersection * 1e6;
    out["metrics_at_intersection"] = strip(*result.at_intersection);
  } else {
    out["W0s_intersection_um"] = nullptr;
  }
  return out;
}

}  // namespace spdc::io
