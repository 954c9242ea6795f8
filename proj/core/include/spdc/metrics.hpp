#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "spdc/filters.hpp"
#include "spdc/jsa.hpp"
#include "spdc/schmidt.hpp"
#include "spdc/units.hpp"

namespace spdc {

enum class Photon { signal, idler };
const char* to_string(Photon photon);

/// Constant in front of the pair-rate integral (SI, pairs/s per (rad/s)^2 of |Phi|^2).
struct RatePrefactor {
  double value = 0.0;
  double eta_s = 1.0;
  double eta_i = 1.0;
  double power = 0.0;  // W
  double d_eff = 0.0;  // m/V
  double alpha_s = 0.0;
  double alpha_i = 0.0;
  double alpha_p = 0.0;  // 1/m, sqrt(2 / (pi W^2))
  double omega_s = 0.0;
  double omega_i = 0.0;
  double n_s = 0.0;
  double n_i = 0.0;
  double n_p = 0.0;
  double pump_bandwidth = 0.0;
  double epsilon_0 = kVacuumPermittivity;
  double c = kSpeedOfLight;
};

RatePrefactor rate_prefactor(const BeamGeometry& geom, const CrystalSpec& crystal, double eta_s = 1.0,
                             double eta_i = 1.0);

/// Which frequencies the partner of a heralding photon may take in the
/// singles integral.
enum class SinglesDomain {
  partner_filtered,  ///< partner restricted to its own filter
  pump_window,       ///< partner limited only by the pump window
};

struct Truncation {
  int n_max = 20;           // per-axis ceiling
  double tolerance = 1e-4;  // shell contribution relative to the running sum
};

struct MetricsOptions {
  std::size_t grid_resolution = 201;
  JsaOptions jsa;
  Decompose decompose = Decompose::amplitude;
  SinglesDomain singles_domain = SinglesDomain::partner_filtered;
  Truncation truncation;
  double eta_s = 1.0;
  double eta_i = 1.0;
  bool check_convergence = true;
  double convergence_tolerance = 5e-3;  // relative change under grid doubling
};

/// Pump detuning window: pump filter intersected with +-4 B_p about omega_p0.
std::pair<double, double> pump_window(const BeamGeometry& geom, const FilterSet& filters);

/// Coincidence rate in pairs/(s mW), integrating over (omega_s, omega_p).
double pair_rate(const BeamGeometry& geom, const CrystalSpec& crystal, const FilterSet& filters,
                 const MetricsOptions& options = {});

/// Overlap amplitude with the `which` collection mode replaced by the
/// Hermite-Gauss mode U_{n,m} and the partner left in the fundamental. The
/// mode normalization 1/sqrt(2^(n+m) n! m!) is included, so (0,0) equals
/// mode_function.
std::complex<double> mode_function_nm(int n, int m, double detuning_s, double detuning_i,
                                      const BeamGeometry& geom, const CrystalSpec& crystal,
                                      Photon which, JsaOptions options = {});

struct SinglesResult {
  double rate = 0.0;        // counts/(s mW)
  int n_max_used = 0;       // last shell n + m included
  double tail_estimate = 0.0;
  std::vector<double> shells;  // per-shell contributions, all computed shells
};

SinglesResult singles_rate(Photon which, const BeamGeometry& geom, const CrystalSpec& crystal,
                           const FilterSet& filters, const MetricsOptions& options = {});

/// R / sqrt(R_s R_i); throws ConsistencyError above 1 + 1e-9.
double heralding_efficiency(double R, double Rs, double Ri);

struct MetricsReport {
  double pair_rate = 0.0;
  double singles_signal = 0.0;
  double singles_idler = 0.0;
  double heralding = 0.0;
  double purity = 0.0;
  double schmidt_number = 0.0;
  int n_max_signal = 0;
  int n_max_idler = 0;
  double tail_signal = 0.0;
  double tail_idler = 0.0;
  std::vector<std::string> warnings;
  nlohmann::json settings;  // resolved configuration echo, filled by callers
};

/// Purity of the filtered JSA on the options' grid.
double spectral_purity(const BeamGeometry& geom, const CrystalSpec& crystal, const FilterSet& filters,
                       const MetricsOptions& options = {});

MetricsReport compute_metrics(const BeamGeometry& geom, const CrystalSpec& crystal,
                              const FilterSet& filters, const MetricsOptions& options = {});

}  // namespace spdc
