#pragma once

#include <ostream>

#include <json.hpp>

#include "spdc/jsa.hpp"
#include "spdc/metrics.hpp"
#include "spdc/schmidt.hpp"
#include "spdc/sweep.hpp"

namespace spdc::io {

inline constexpr int kSchemaVersion = 1;

// CSV columns: omega_s_detuning, omega_i_detuning (rad/s), re, im, abs2.
void write_jsa_csv(std::ostream& os, const JsaGrid& grid);
nlohmann::json jsa_to_json(const JsaGrid& grid);

// CSV columns: n, lambda_n; followed by a "# purity=..., schmidt_number=..." line.
void write_schmidt_csv(std::ostream& os, const SchmidtSpectrum& spectrum);

nlohmann::json to_json(const MetricsReport& report);
void write_metrics_csv_header(std::ostream& os);
void write_metrics_csv_row(std::ostream& os, const MetricsReport& report);

// CSV columns: swept_value, R, eta, purity.
void write_sweep_csv(std::ostream& os, const SweepTable& table);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
nlohmann::json to_json(const SweepTable& table);

nlohmann::json to_json(const OptimizationResult& result);

}  // namespace spdc::io
