#include "spdc/sweep.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "spdc/error.hpp"
#include "spdc/units.hpp"

namespace spdc {

double collection_waist_for(double w0p, const BeamGeometry& base, const CrystalSpec& crystal,
                            const SweepOptions& options) {
  switch (options.policy) {
    case WaistPolicy::fixed:
      return base.waist_signal;
    case WaistPolicy::co_scale:
      return base.waist_signal * w0p / base.waist_pump;
    case WaistPolicy::purity_condition:
      return purity_waist(w0p, base, crystal, options.tie_alpha);
  }
  return base.waist_signal;
}

namespace {

SweepRow evaluate(double swept, const BeamGeometry& geom, const CrystalSpec& crystal,
                  const FilterSet& filters, const SweepOptions& options) {
  SweepRow row;
  row.swept_value = swept;
  if (options.rate_only) {
    row.R = pair_rate(geom, crystal, filters, options.metrics);
    return row;
  }
  const auto report = compute_metrics(geom, crystal, filters, options.metrics);
  row.R = report.pair_rate;
  row.eta = report.heralding;
  row.purity = report.purity;
  return row;
}

void check_steps(std::size_t steps, double lo, double hi) {
  if (steps < 1) throw PreconditionError("sweep needs at least one step");
  if (!(lo > 0.0 && hi >= lo)) throw PreconditionError("sweep range must be positive and ordered");
}

void find_argmax(SweepTable& table) { table.argmax = argmax_index(table.rows); }

}  // namespace

std::size_t argmax_index(const std::vector<SweepRow>& rows) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].R > rows[best].R) best = k;
  }
  return best;
}

SweepTable rate_vs_pump_waist(double w_min, double w_max, std::size_t steps, const BeamGeometry& base,
                              const CrystalSpec& crystal, const FilterSet& filters,
                              const SweepOptions& options) {
  check_steps(steps, w_min, w_max);
  SweepTable table;
  const auto waists = steps == 1 ? std::vector<double>{w_min} : linspace(w_min, w_max, steps);
  for (double w : waists) {
    double ws = 0.0;
    try {
      ws = collection_waist_for(w, base, crystal, options);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << units::to_um(w) << " um: " << e.what();
      table.skipped.push_back(os.str());
      continue;
    }
    const auto geom = base.with_pump_waist(w).with_collection_waist(ws);
    table.rows.push_back(evaluate(w, geom, crystal, filters, options));
  }
  if (table.rows.empty()) throw DomainError("no pump waist in the sweep range could be evaluated");
  find_argmax(table);
  return table;
}

SweepTable metrics_vs_waist_ratio(double ratio_min, double ratio_max, std::size_t steps, double w0p,
                                  const BeamGeometry& base, const CrystalSpec& crystal,
                                  const FilterSet& filters, const SweepOptions& options) {
  check_steps(steps, ratio_min, ratio_max);
  if (!(w0p > 0.0)) throw PreconditionError("pump waist must be positive");
  SweepTable table;
  const auto ratios = steps == 1 ? std::vector<double>{ratio_min} : linspace(ratio_min, ratio_max, steps);
  for (double r : ratios) {
    const auto geom = base.with_pump_waist(w0p).with_collection_waist(r * w0p);
    table.rows.push_back(evaluate(r, geom, crystal, filters, options));
  }
  find_argmax(table);
  return table;
}

namespace {

// Rate at a pump waist under the sweep policy; -inf where the policy fails.
double rate_at(double w, const BeamGeometry& base, const CrystalSpec& crystal, const FilterSet& filters,
               const SweepOptions& options) {
  double ws = 0.0;
  try {
    ws = collection_waist_for(w, base, crystal, options);
  } catch (const DomainError&) {
    return -std::numeric_limits<double>::infinity();
  }
  return pair_rate(base.with_pump_waist(w).with_collection_waist(ws), crystal, filters, options.metrics);
}

double golden_section_max(double lo, double hi, double tol, const std::function<double(double)>& f) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 >= f2 ? x1 : x2;
}

}  // namespace

OptimizationResult optimize(const BeamGeometry& base, const CrystalSpec& crystal,
                            const FilterSet& filters, const OptimizeOptions& options) {
  OptimizationResult result;
  auto rate = [&](double w) { return rate_at(w, base, crystal, filters, options.sweep); };

  // Stage 1: pump waist maximizing the pair rate.
  if (options.pump_waist) {
    result.W0p_star = *options.pump_waist;
  } else {
    if (options.coarse_steps < 3) throw PreconditionError("coarse pump scan needs at least 3 points");
    const auto grid = linspace(options.pump_min, options.pump_max, options.coarse_steps);
    std::vector<double> values(grid.size());
    std::size_t best = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      values[k] = rate(grid[k]);
      if (values[k] > values[best]) best = k;
    }
    if (!std::isfinite(values[best])) {
      throw DomainError("purity condition unsatisfiable over the whole pump-waist range");
    }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    result.W0p_star = golden_section_max(lo, hi, options.pump_tolerance, rate);
  }
  result.rate_at_W0p_star = rate(result.W0p_star);

  // Stage 2: purity-condition waist.
  result.W0s_eq32 = purity_waist(result.W0p_star, base, crystal, options.eq32_alpha);
  const auto geom_at = [&](double ws) {
    return base.with_pump_waist(result.W0p_star).with_collection_waist(ws);
  };
  const auto& mopts = options.sweep.metrics;
  result.at_eq32 = compute_metrics(geom_at(result.W0s_eq32), crystal, filters, mopts);

  // Stage 3: scan W0s for the purity maximum and the eta = purity crossing.
  if (options.scan_points < 3) throw PreconditionError("waist scan needs at least 3 points");
  const auto waists = linspace(options.scan_min * result.W0s_eq32, options.scan_max * result.W0s_eq32,
                               options.scan_points);
  std::vector<MetricsReport> reports;
  reports.reserve(waists.size());
  std::size_t best = 0;
  for (std::size_t k = 0; k < waists.size(); ++k) {
    reports.push_back(compute_metrics(geom_at(waists[k]), crystal, filters, mopts));
    result.scan.push_back({waists[k], reports[k].pair_rate, reports[k].heralding, reports[k].purity});
    if (reports[k].purity > reports[best].purity) best = k;
  }

  result.W0s_purity_star = waists[best];
  result.at_purity_star = reports[best];
  if (best > 0 && best + 1 < waists.size()) {
    const double p0 = reports[best - 1].purity;
    const double p1 = reports[best].purity;
    const double p2 = reports[best + 1].purity;
    const double curvature = p0 - 2.0 * p1 + p2;
    if (curvature < 0.0) {
      const double h = waists[1] - waists[0];
      const double x = waists[best] + 0.5 * h * (p0 - p2) / curvature;
      const auto refined = compute_metrics(geom_at(x), crystal, filters, mopts);
      if (refined.purity >= p1) {
        result.W0s_purity_star = x;
        result.at_purity_star = refined;
      }
    }
  }

  for (std::size_t k = 0; k + 1 < waists.size(); ++k) {
    const double d0 = reports[k].heralding - reports[k].purity;
    const double d1 = reports[k + 1].heralding - reports[k + 1].purity;
    if (d0 == 0.0) {
      result.W0s_intersection = waists[k];
      result.at_intersection = reports[k];
      break;
    }
    if ((d0 < 0.0) != (d1 < 0.0)) {
      double lo = waists[k];
      double hi = waists[k + 1];
      double dlo = d0;
      MetricsReport mid_report = reports[k];
      double mid = lo;
      for (int it = 0; it < 60; ++it) {
        mid = 0.5 * (lo + hi);
        mid_report = compute_metrics(geom_at(mid), crystal, filters, mopts);
        const double d = mid_report.heralding - mid_report.purity;
        if (std::abs(d) < 1e-5 || hi - lo < 1e-10) break;
        if ((d < 0.0) == (dlo < 0.0)) {
          lo = mid;
          dlo = d;
        } else {
          hi = mid;
        }
      }
      result.W0s_intersection = mid;
      result.at_intersection = mid_report;
      break;
    }
  }
  result.intersection_found = result.W0s_intersection.has_value();
  return result;
}

}  // namespace spdc
