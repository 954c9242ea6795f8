#include "spdc/jsa.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "spdc/error.hpp"
#include "spdc/parallel.hpp"
#include "spdc/units.hpp"

namespace spdc {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double sinc_gaussian(double x) { return std::exp(-kSincGaussianAlpha * x * x); }

InverseGroupVelocities inverse_group_velocities(const BeamGeometry& geom, const CrystalSpec& crystal) {
  return {inverse_group_velocity(geom.pump, crystal.cut_angle, crystal),
          inverse_group_velocity(geom.signal, crystal.cut_angle, crystal),
          inverse_group_velocity(geom.idler, crystal.cut_angle, crystal)};
}

PhaseMismatch phase_mismatch_exact(double detuning_s, double detuning_i, const BeamGeometry& geom,
                                   const CrystalSpec& crystal) {
  const double ws = geom.signal.central_omega + detuning_s;
  const double wi = geom.idler.central_omega + detuning_i;
  if (!(ws > 0.0 && wi > 0.0)) {
    throw PreconditionError("detuned signal/idler frequencies must stay positive");
  }
  const double theta = crystal.cut_angle;
  const double kp = wave_number(ws + wi, geom.pump, theta, crystal);
  const double ks = wave_number(ws, geom.signal, theta, crystal);
  const double ki = wave_number(wi, geom.idler, theta, crystal);
  return {ks * std::sin(geom.theta_s) - ki * std::sin(geom.theta_i),
          kp - ks * std::cos(geom.theta_s) - ki * std::cos(geom.theta_i)};
}

PhaseMismatch phase_mismatch_linear(double detuning_s, double detuning_i,
                                    const InverseGroupVelocities& n, double theta_s, double theta_i) {
  const double detuning_p = detuning_s + detuning_i;
  return {n.signal * detuning_s * std::sin(theta_s) - n.idler * detuning_i * std::sin(theta_i),
          n.pump * detuning_p - n.signal * detuning_s * std::cos(theta_s) -
              n.idler * detuning_i * std::cos(theta_i)};
}

std::complex<double> walk_off_integral(double dk_z, double H, double length) {
  if (H < 0.0) {
    throw PreconditionError("walk-off factor H must be non-negative");
  }
  if (H == 0.0) {
    return {length * sinc(0.5 * dk_z * length), 0.0};
  }
  // The odd (sine) part cancels over the symmetric interval. Composite
  // Gauss-Legendre with panel doubling until successive estimates agree.
  auto integrand = [&](double z) { return std::exp(-H * z * z) * std::cos(dk_z * z); };
  using rule = boost::math::quadrature::gauss<double, 20>;
  auto composite = [&](int panels) {
    const double h = 0.5 * length / panels;
    double acc = 0.0;
    for (int k = 0; k < panels; ++k) acc += rule::integrate(integrand, k * h, (k + 1) * h);
    return acc;
  };
  double half = composite(1);
  for (int panels = 2; panels <= 4096; panels *= 2) {
    const double refined = composite(panels);
    const bool done = std::abs(refined - half) <= 1e-12 * std::abs(refined) + 1e-300;
    half = refined;
    if (done) break;
  }
  return {2.0 * half, 0.0};
}

JointAmplitude::JointAmplitude(const BeamGeometry& geom, const CrystalSpec& crystal, JsaOptions options)
    : geom_(geom),
      crystal_(crystal),
      options_(options),
      factors_(geometry_factors(geom)),
      group_(inverse_group_velocities(geom, crystal)) {
  if (options_.walk_off && options_.gaussian_phase_matching) {
    throw PreconditionError("walk-off is only defined for the sinc phase-matching function");
  }
}

double JointAmplitude::longitudinal(double dk_z) const {
  const double x = 0.5 * dk_z * crystal_.length;
  return crystal_.length * (options_.gaussian_phase_matching ? sinc_gaussian(x) : sinc(x));
}

PhaseMismatch JointAmplitude::mismatch(double detuning_s, double detuning_i) const {
  if (options_.dispersion == DispersionMode::linear) {
    return phase_mismatch_linear(detuning_s, detuning_i, group_, geom_.theta_s, geom_.theta_i);
  }
  return phase_mismatch_exact(detuning_s, detuning_i, geom_, crystal_);
}

double JointAmplitude::pump_envelope(double detuning_s, double detuning_i) const {
  const double sum = detuning_s + detuning_i;
  return std::exp(-sum * sum / (4.0 * geom_.pump_bandwidth * geom_.pump_bandwidth));
}

std::complex<double> JointAmplitude::operator()(double detuning_s, double detuning_i) const {
  const auto dk = mismatch(detuning_s, detuning_i);
  const double L = crystal_.length;
  const double A = factors_.A;
  const double C = factors_.C;
  const double transverse = std::exp(-dk.dk_y * dk.dk_y / (4.0 * C));
  const double prefactor = kPi / std::sqrt(A * C) * transverse * pump_envelope(detuning_s, detuning_i);
  if (!options_.walk_off) {
    return {prefactor * longitudinal(dk.dk_z), 0.0};
  }
  const double dkz_eff = dk.dk_z - factors_.D * dk.dk_y / (2.0 * C);
  return prefactor * walk_off_integral(dkz_eff, factors_.H, L);
}

std::complex<double> mode_function(double detuning_s, double detuning_i, const BeamGeometry& geom,
                                   const CrystalSpec& crystal, JsaOptions options) {
  return JointAmplitude(geom, crystal, options)(detuning_s, detuning_i);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = 0.5 * (lo + hi);
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) out[k] = lo + step * static_cast<double>(k);
  out.back() = hi;
  return out;
}

JsaGrid jsa_grid(const GridSpec& spec, const BeamGeometry& geom, const CrystalSpec& crystal,
                 JsaOptions options) {
  if (spec.resolution < kMinGridResolution) {
    std::ostringstream os;
    os << "JSA grid resolution " << spec.resolution << " below the minimum of " << kMinGridResolution;
    throw PreconditionError(os.str());
  }
  if (!(spec.signal_max > spec.signal_min && spec.idler_max > spec.idler_min)) {
    throw PreconditionError("JSA grid window is empty");
  }
  const JointAmplitude phi(geom, crystal, options);

  JsaGrid grid;
  grid.detuning_s = linspace(spec.signal_min, spec.signal_max, spec.resolution);
  grid.detuning_i = linspace(spec.idler_min, spec.idler_max, spec.resolution);
  grid.center_s = geom.signal.central_omega;
  grid.center_i = geom.idler.central_omega;
  grid.amplitude.resize(grid.rows() * grid.cols());

  detail::parallel_for(grid.rows(), [&](std::size_t r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      grid.at(r, c) = phi(grid.detuning_s[r], grid.detuning_i[c]);
    }
  });

  const double cell = (grid.detuning_s[1] - grid.detuning_s[0]) * (grid.detuning_i[1] - grid.detuning_i[0]);
  double norm = 0.0;
  for (const auto& a : grid.amplitude) norm += std::norm(a);
  grid.normalization = norm > 0.0 ? 1.0 / std::sqrt(norm * cell) : 0.0;
  return grid;
}

double alpha_value(AlphaConvention convention) {
  return convention == AlphaConvention::consistent ? kSincGaussianAlpha
                                                   : kSincGaussianAlpha * kSincGaussianAlpha;
}

namespace {

struct GaussianTerms {
  double transverse_s;    // N_s sin(theta_s)
  double transverse_i;    // N_i sin(theta_i)
  double longitudinal_s;  // N_p - N_s cos(theta_s)
  double longitudinal_i;  // N_p - N_i cos(theta_i)
};

GaussianTerms gaussian_terms(const BeamGeometry& geom, const CrystalSpec& crystal) {
  const auto n = inverse_group_velocities(geom, crystal);
  return {n.signal * std::sin(geom.theta_s), n.idler * std::sin(geom.theta_i),
          n.pump - n.signal * std::cos(geom.theta_s), n.pump - n.idler * std::cos(geom.theta_i)};
}

}  // namespace

DeltaCoefficients delta_coefficients(const BeamGeometry& geom, const CrystalSpec& crystal,
                                     AlphaConvention convention) {
  const auto t = gaussian_terms(geom, crystal);
  const double C = geometry_factors(geom).C;
  const double a = alpha_value(convention);
  const double L2 = crystal.length * crystal.length;
  const double pump = 1.0 / (geom.pump_bandwidth * geom.pump_bandwidth);

  DeltaCoefficients d;
  d.delta_s = t.transverse_s * t.transverse_s / (4.0 * C) +
              a * t.longitudinal_s * t.longitudinal_s * L2 / 4.0 + pump / 4.0;
  d.delta_i = t.transverse_i * t.transverse_i / (4.0 * C) +
              a * t.longitudinal_i * t.longitudinal_i * L2 / 4.0 + pump / 4.0;
  // Cross term of exp(-a dk_z^2 L^2/4): the longitudinal product enters with
  // a positive sign, as required for the waist formula below to zero it.
  d.delta_si = a * t.longitudinal_s * t.longitudinal_i * L2 / 2.0 + pump / 2.0 -
               t.transverse_s * t.transverse_i / (2.0 * C);
  return d;
}

double gaussian_model_purity(const DeltaCoefficients& d) {
  const double r = 1.0 - d.delta_si * d.delta_si / (4.0 * d.delta_s * d.delta_i);
  if (!(r > 0.0)) {
    throw DomainError("Gaussian model is not normalizable for these coefficients");
  }
  return std::sqrt(r);
}

double purity_waist(double waist_pump, const BeamGeometry& geom, const CrystalSpec& crystal,
                    AlphaConvention convention) {
  if (!(waist_pump > 0.0)) {
    throw PreconditionError("pump waist must be positive");
  }
  const auto t = gaussian_terms(geom, crystal);
  const double a = alpha_value(convention);
  const double L2 = crystal.length * crystal.length;
  const double denom = 1.0 / (geom.pump_bandwidth * geom.pump_bandwidth) +
                       a * L2 * t.longitudinal_i * t.longitudinal_s;
  const double bracket = t.transverse_i * t.transverse_s / denom - 1.0 / (waist_pump * waist_pump);
  if (!(bracket > 0.0) || !std::isfinite(bracket)) {
    throw DomainError(
        "purity condition unsatisfiable; increase B_p, cut detuning, or W0p");
  }
  const double cs = std::cos(geom.theta_s);
  const double ci = std::cos(geom.theta_i);
  return std::sqrt(cs * cs + ci * ci) / std::sqrt(bracket);
}

}  // namespace spdc
