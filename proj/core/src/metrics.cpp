#include "spdc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "spdc/error.hpp"
#include "spdc/parallel.hpp"
#include "spdc/units.hpp"

namespace spdc {

const char* to_string(Photon photon) { return photon == Photon::signal ? "signal" : "idler"; }

RatePrefactor rate_prefactor(const BeamGeometry& geom, const CrystalSpec& crystal, double eta_s,
                             double eta_i) {
  RatePrefactor p;
  p.eta_s = eta_s;
  p.eta_i = eta_i;
  p.power = geom.pump_power_mW * 1e-3;
  p.d_eff = units::pm_per_V(effective_nonlinearity(crystal.cut_angle, crystal.azimuth, crystal));
  auto alpha = [](double w) { return std::sqrt(2.0 / (kPi * w * w)); };
  p.alpha_s = alpha(geom.waist_signal);
  p.alpha_i = alpha(geom.waist_idler);
  p.alpha_p = alpha(geom.waist_pump);
  p.omega_s = geom.signal.central_omega;
  p.omega_i = geom.idler.central_omega;
  p.n_s = index_for(geom.signal.polarization, geom.signal.central_wavelength, crystal.cut_angle, crystal);
  p.n_i = index_for(geom.idler.polarization, geom.idler.central_wavelength, crystal.cut_angle, crystal);
  p.n_p = index_for(geom.pump.polarization, geom.pump.central_wavelength, crystal.cut_angle, crystal);
  p.pump_bandwidth = geom.pump_bandwidth;

  const double a2 = p.alpha_s * p.alpha_s * p.alpha_i * p.alpha_i * p.alpha_p * p.alpha_p;
  p.value = p.eta_s * p.eta_i * p.power * p.d_eff * p.d_eff * a2 * p.omega_s * p.omega_i /
            (std::sqrt(2.0) * std::pow(kPi, 1.5) * p.epsilon_0 * std::pow(p.c, 3) * p.n_s * p.n_i *
             p.n_p * p.pump_bandwidth);
  return p;
}

std::pair<double, double> pump_window(const BeamGeometry& geom, const FilterSet& filters) {
  const double lo = std::max(filters.pump.lower() - geom.pump.central_omega, -4.0 * geom.pump_bandwidth);
  const double hi = std::min(filters.pump.upper() - geom.pump.central_omega, 4.0 * geom.pump_bandwidth);
  return {lo, hi};
}

namespace {

// Trapezoid weights on n uniform samples of [lo, hi].
double trapezoid_weight(std::size_t k, std::size_t n, double step) {
  return (k == 0 || k + 1 == n) ? 0.5 * step : step;
}

// Integrates a vector-valued integrand over the herald detuning (rows, within
// `herald`) and the pump detuning (inner, within the pump window and, when
// `partner` is set, such that the partner detuning stays inside it).
struct Domain {
  std::pair<double, double> herald;
  std::pair<double, double> pump;
  bool partner_limited = true;
  std::pair<double, double> partner;
};

template <class Integrand>
std::vector<double> integrate(const Domain& dom, std::size_t n, std::size_t width, Integrand&& f) {
  const auto herald = linspace(dom.herald.first, dom.herald.second, n);
  const double hstep = (dom.herald.second - dom.herald.first) / static_cast<double>(n - 1);
  std::vector<std::vector<double>> rows(n, std::vector<double>(width, 0.0));

  detail::parallel_for(n, [&](std::size_t r) {
    const double oh = herald[r];
    double lo = dom.pump.first;
    double hi = dom.pump.second;
    if (dom.partner_limited) {
      lo = std::max(lo, oh + dom.partner.first);
      hi = std::min(hi, oh + dom.partner.second);
    }
    if (!(hi > lo)) return;
    const double pstep = (hi - lo) / static_cast<double>(n - 1);
    std::vector<double> values(width);
    auto& acc = rows[r];
    for (std::size_t k = 0; k < n; ++k) {
      const double op = lo + pstep * static_cast<double>(k);
      std::fill(values.begin(), values.end(), 0.0);
      f(oh, op - oh, values);
      const double w = trapezoid_weight(k, n, pstep);
      for (std::size_t j = 0; j < width; ++j) acc[j] += w * values[j];
    }
  });

  std::vector<double> total(width, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const double w = trapezoid_weight(r, n, hstep);
    for (std::size_t j = 0; j < width; ++j) total[j] += w * rows[r][j];
  }
  return total;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

template <class Integrand>
std::vector<double> integrate_converged(const Domain& dom, const MetricsOptions& options,
                                        std::size_t width, const char* what, Integrand&& f) {
  if (options.grid_resolution < 3) throw PreconditionError("integration grid needs at least 3 points");
  const auto coarse = integrate(dom, options.grid_resolution, width, f);
  if (!options.check_convergence) return coarse;
  const auto fine = integrate(dom, 2 * options.grid_resolution - 1, width, f);
  const double a = sum(coarse);
  const double b = sum(fine);
  if (b != 0.0 && std::abs(a - b) > options.convergence_tolerance * std::abs(b)) {
    std::ostringstream os;
    os << what << " integral not converged under grid doubling: " << a << " vs " << b;
    throw ConvergenceError(os.str(), a, b);
  }
  return fine;
}

std::pair<double, double> detuning_band(const FilterSpec& f, double center) {
  return {f.lower() - center, f.upper() - center};
}

// Overlap of a Hermite-Gauss collection mode with the pump and the partner's
// fundamental mode. The x-integral is frequency independent; the y (and z,
// with walk-off) parts are evaluated for all orders m at once through the
// normalized recurrence
//   Q_{m+1} = w sqrt(2/(m+1)) Q_m - s sqrt(m/(m+1)) Q_{m-1}.
class HermiteOverlap {
 public:
  HermiteOverlap(const BeamGeometry& geom, const CrystalSpec& crystal, Photon which, JsaOptions options)
      : phi_(geom, crystal, options), which_(which) {
    const auto& f = phi_.factors();
    const double w = which == Photon::signal ? geom.waist_signal : geom.waist_idler;
    const double theta = which == Photon::signal ? geom.theta_s : geom.theta_i;
    beta_ = std::sqrt(2.0) / w;
    a_ = beta_ * std::cos(theta);
    b_ = (which == Photon::signal ? 1.0 : -1.0) * std::sqrt(2.0) * std::sin(theta) / w;
    s_ = 1.0 - a_ * a_ / f.C;
    q_ = beta_ * beta_ / f.A - 1.0;
  }

  /// sqrt(pi/A) * normalized x-overlap for orders 0..n_max (odd orders vanish).
  std::vector<double> x_part(int n_max) const {
    std::vector<double> x(static_cast<std::size_t>(n_max) + 1, 0.0);
    double v = std::sqrt(kPi / phi_.factors().A);
    for (int k = 0; 2 * k <= n_max; ++k) {
      x[2 * k] = v;
      v *= q_ * std::sqrt((2.0 * k + 1.0) * (2.0 * k + 2.0)) / (2.0 * (k + 1.0));
    }
    return x;
  }

  /// y/z overlap times pump envelope for orders 0..m_max, written into `out`.
  void yz_part(double detuning_s, double detuning_i, int m_max, std::complex<double>* out) const {
    const auto& f = phi_.factors();
    const auto dk = phi_.mismatch(detuning_s, detuning_i);
    const double L = phi_.crystal().length;
    const double common = std::sqrt(kPi / f.C) * std::exp(-dk.dk_y * dk.dk_y / (4.0 * f.C)) *
                          phi_.pump_envelope(detuning_s, detuning_i);
    const std::complex<double> y0(0.0, dk.dk_y / (2.0 * f.C));

    if (!phi_.options().walk_off) {
      const double longitudinal = phi_.longitudinal(dk.dk_z);
      recurrence(a_ * y0, m_max, out);
      for (int m = 0; m <= m_max; ++m) out[m] *= common * longitudinal;
      return;
    }

    const double kappa = dk.dk_z - f.D * dk.dk_y / (2.0 * f.C);
    std::fill(out, out + m_max + 1, std::complex<double>{});
    std::vector<std::complex<double>> q(static_cast<std::size_t>(m_max) + 1);
    const auto& nodes = quadrature_nodes();
    for (const auto& [t, weight] : nodes) {
      const double z = 0.5 * L * t;
      const std::complex<double> w = a_ * (y0 - f.D * z / (2.0 * f.C)) + b_ * z;
      recurrence(w, m_max, q.data());
      const std::complex<double> kernel =
          std::exp(std::complex<double>(-f.H * z * z, kappa * z)) * (0.5 * L * weight);
      for (int m = 0; m <= m_max; ++m) out[m] += kernel * q[m];
    }
    for (int m = 0; m <= m_max; ++m) out[m] *= common;
  }

 private:
  void recurrence(std::complex<double> w, int m_max, std::complex<double>* q) const {
    q[0] = 1.0;
    if (m_max >= 1) q[1] = std::sqrt(2.0) * w;
    for (int m = 1; m < m_max; ++m) {
      q[m + 1] = w * std::sqrt(2.0 / (m + 1.0)) * q[m] - s_ * std::sqrt(m / (m + 1.0)) * q[m - 1];
    }
  }

  // Gauss-Legendre nodes on [-1, 1].
  static const std::vector<std::pair<double, double>>& quadrature_nodes() {
    static const std::vector<std::pair<double, double>> nodes = [] {
      using rule = boost::math::quadrature::gauss<double, 48>;
      std::vector<std::pair<double, double>> v;
      const auto& x = rule::abscissa();
      const auto& w = rule::weights();
      for (std::size_t k = 0; k < x.size(); ++k) {
        v.emplace_back(x[k], w[k]);
        if (x[k] != 0.0) v.emplace_back(-x[k], w[k]);
      }
      return v;
    }();
    return nodes;
  }

  JointAmplitude phi_;
  Photon which_;
  double beta_ = 0.0, a_ = 0.0, b_ = 0.0, s_ = 0.0, q_ = 0.0;
};

}  // namespace

double pair_rate(const BeamGeometry& geom, const CrystalSpec& crystal, const FilterSet& filters,
                 const MetricsOptions& options) {
  validate(filters.signal);
  validate(filters.idler);
  validate(filters.pump);
  const double transmission =
      filters.signal.transmission * filters.idler.transmission * filters.pump.transmission;
  const auto pref = rate_prefactor(geom, crystal, options.eta_s, options.eta_i);
  if (transmission == 0.0) return 0.0;

  Domain dom;
  dom.herald = detuning_band(filters.signal, geom.signal.central_omega);
  dom.pump = pump_window(geom, filters);
  dom.partner = detuning_band(filters.idler, geom.idler.central_omega);
  const JointAmplitude phi(geom, crystal, options.jsa);
  const auto total = integrate_converged(dom, options, 1, "pair-rate",
                                         [&](double os, double oi, std::vector<double>& out) {
                                           out[0] = std::norm(phi(os, oi));
                                         });
  return pref.value * transmission * total[0] / geom.pump_power_mW;
}

std::complex<double> mode_function_nm(int n, int m, double detuning_s, double detuning_i,
                                      const BeamGeometry& geom, const CrystalSpec& crystal,
                                      Photon which, JsaOptions options) {
  if (n < 0 || m < 0) throw PreconditionError("Hermite-Gauss orders must be non-negative");
  const HermiteOverlap overlap(geom, crystal, which, options);
  const auto x = overlap.x_part(n);
  std::vector<std::complex<double>> yz(static_cast<std::size_t>(m) + 1);
  overlap.yz_part(detuning_s, detuning_i, m, yz.data());
  return x[n] * yz[m];
}

SinglesResult singles_rate(Photon which, const BeamGeometry& geom, const CrystalSpec& crystal,
                           const FilterSet& filters, const MetricsOptions& options) {
  const auto& tr = options.truncation;
  if (tr.n_max < 4 || tr.n_max > 60) {
    throw PreconditionError("mode-sum truncation N_max must lie in [4, 60]");
  }
  validate(filters.signal);
  validate(filters.idler);
  validate(filters.pump);

  const bool is_signal = which == Photon::signal;
  const FilterSpec& own = is_signal ? filters.signal : filters.idler;
  const FilterSpec& partner = is_signal ? filters.idler : filters.signal;
  const double own_center = is_signal ? geom.signal.central_omega : geom.idler.central_omega;
  const double partner_center = is_signal ? geom.idler.central_omega : geom.signal.central_omega;
  const bool limited = options.singles_domain == SinglesDomain::partner_filtered;

  double transmission = own.transmission * filters.pump.transmission;
  if (limited) transmission *= partner.transmission;
  const auto pref = rate_prefactor(geom, crystal, options.eta_s, options.eta_i);

  SinglesResult result;
  if (transmission == 0.0) return result;

  Domain dom;
  dom.herald = detuning_band(own, own_center);
  dom.pump = pump_window(geom, filters);
  dom.partner_limited = limited;
  dom.partner = detuning_band(partner, partner_center);

  const int order = tr.n_max;
  const HermiteOverlap overlap(geom, crystal, which, options.jsa);
  const auto y_integrals = integrate_converged(
      dom, options, static_cast<std::size_t>(order) + 1, "singles",
      [&](double oh, double op, std::vector<double>& out) {
        std::array<std::complex<double>, 64> yz{};
        const double os = is_signal ? oh : op;
        const double oi = is_signal ? op : oh;
        overlap.yz_part(os, oi, order, yz.data());
        for (int m = 0; m <= order; ++m) out[m] = std::norm(yz[m]);
      });
  const auto x = overlap.x_part(order);

  // Shell sums over n + m; shells above n_max are only partially populated.
  result.shells.assign(2 * static_cast<std::size_t>(order) + 1, 0.0);
  for (int n = 0; n <= order; ++n) {
    for (int m = 0; m <= order; ++m) {
      result.shells[n + m] += x[n] * x[n] * y_integrals[m];
    }
  }
  const double scale = pref.value * transmission / geom.pump_power_mW;
  for (auto& s : result.shells) s *= scale;

  double running = 0.0;
  int stop = -1;
  for (int k = 0; k <= order; ++k) {
    running += result.shells[k];
    if (k >= 4 && result.shells[k] < tr.tolerance * running) {
      stop = k;
      break;
    }
  }
  if (stop < 0) {
    std::ostringstream os;
    os << to_string(which) << " mode sum did not converge within N_max = " << order
       << " (partial sum " << running << ")";
    throw ConvergenceError(os.str(), running, running);
  }
  result.rate = running;
  result.n_max_used = stop;
  for (std::size_t k = static_cast<std::size_t>(stop) + 1; k < result.shells.size(); ++k) {
    result.tail_estimate += result.shells[k];
  }
  return result;
}

double heralding_efficiency(double R, double Rs, double Ri) {
  if (!(Rs > 0.0 && Ri > 0.0)) throw PreconditionError("singles rates must be positive");
  const double eta = R / std::sqrt(Rs * Ri);
  if (eta > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "mode-sum truncation inconsistency: eta = " << eta;
    throw ConsistencyError(os.str());
  }
  return eta;
}

double spectral_purity(const BeamGeometry& geom, const CrystalSpec& crystal, const FilterSet& filters,
                       const MetricsOptions& options) {
  auto grid = jsa_grid(filter_grid(filters, geom, options.grid_resolution), geom, crystal, options.jsa);
  apply_filters(grid, filters);
  return schmidt_purity(grid, options.decompose).purity;
}

MetricsReport compute_metrics(const BeamGeometry& geom, const CrystalSpec& crystal,
                              const FilterSet& filters, const MetricsOptions& options) {
  MetricsReport report;
  report.warnings = validate(geom, crystal.length);
  report.pair_rate = pair_rate(geom, crystal, filters, options);
  const auto s = singles_rate(Photon::signal, geom, crystal, filters, options);
  const auto i = singles_rate(Photon::idler, geom, crystal, filters, options);
  report.singles_signal = s.rate;
  report.singles_idler = i.rate;
  report.n_max_signal = s.n_max_used;
  report.n_max_idler = i.n_max_used;
  report.tail_signal = s.tail_estimate;
  report.tail_idler = i.tail_estimate;
  report.heralding = heralding_efficiency(report.pair_rate, s.rate, i.rate);

  auto grid = jsa_grid(filter_grid(filters, geom, options.grid_resolution), geom, crystal, options.jsa);
  apply_filters(grid, filters);
  const auto spectrum = schmidt_purity(grid, options.decompose);
  report.purity = spectrum.purity;
  report.schmidt_number = spectrum.schmidt_number;
  return report;
}

}  // namespace spdc
