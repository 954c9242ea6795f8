#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spdc/metrics.hpp"

namespace spdc {

struct SweepRow {
  double swept_value = 0.0;  // meters for waist sweeps, dimensionless for ratios
  double R = 0.0;
  double eta = 0.0;
  double purity = 0.0;
};

/// How the collection waists follow the pump waist in a pump-waist sweep.
enum class WaistPolicy {
  fixed,             ///< keep the template collection waist
  co_scale,          ///< keep W0s / W0p at the template ratio
  purity_condition,  ///< W0s from the purity condition at each W0p
};

struct SweepOptions {
  MetricsOptions metrics;
  WaistPolicy policy = WaistPolicy::fixed;
  AlphaConvention tie_alpha = AlphaConvention::consistent;  // for purity_condition
  bool rate_only = false;  // skip singles and purity (eta, purity left at zero)
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::size_t argmax = 0;  // row of largest R; ties go to the smallest swept value
  std::vector<std::string> skipped;  // swept values whose evaluation was impossible
};

/// Index of the largest R; ties go to the earliest (smallest swept value) row.
std::size_t argmax_index(const std::vector<SweepRow>& rows);

/// Collection waist the policy assigns to pump waist `w0p`; throws DomainError
/// if the purity condition cannot be met there.
double collection_waist_for(double w0p, const BeamGeometry& base, const CrystalSpec& crystal,
                            const SweepOptions& options);

SweepTable rate_vs_pump_waist(double w_min, double w_max, std::size_t steps, const BeamGeometry& base,
                              const CrystalSpec& crystal, const FilterSet& filters,
                              const SweepOptions& options = {});

SweepTable metrics_vs_waist_ratio(double ratio_min, double ratio_max, std::size_t steps, double w0p,
                                  const BeamGeometry& base, const CrystalSpec& crystal,
                                  const FilterSet& filters, const SweepOptions& options = {});

struct OptimizeOptions {
  SweepOptions sweep;
  double pump_min = 50e-6;
  double pump_max = 800e-6;
  std::size_t coarse_steps = 31;
  double pump_tolerance = 0.5e-6;        // golden-section bracket width, m
  std::optional<double> pump_waist;      // skip stage 1 when set
  AlphaConvention eq32_alpha = AlphaConvention::consistent;
  std::size_t scan_points = 121;
  double scan_min = 0.5;  // multiples of the purity-condition waist
  double scan_max = 1.2;
};

struct OptimizationResult {
  double W0p_star = 0.0;
  double rate_at_W0p_star = 0.0;
  double W0s_eq32 = 0.0;
  double W0s_purity_star = 0.0;
  std::optional<double> W0s_intersection;
  bool intersection_found = false;
  MetricsReport at_eq32;
  MetricsReport at_purity_star;
  std::optional<MetricsReport> at_intersection;
  std::vector<SweepRow> scan;  // swept_value = W0s in meters
};

OptimizationResult optimize(const BeamGeometry& base, const CrystalSpec& crystal,
                            const FilterSet& filters, const OptimizeOptions& options = {});

}  // namespace spdc
