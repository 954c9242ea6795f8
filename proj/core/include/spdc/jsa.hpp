#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "spdc/crystal.hpp"
#include "spdc/geometry.hpp"

namespace spdc {

enum class DispersionMode {
  exact,   ///< full Sellmeier at the detuned frequencies
  linear,  ///< first-order expansion with inverse group velocities
};

/// How the sinc -> Gaussian constant enters the delta coefficients.
enum class AlphaConvention {
  consistent,     ///< alpha to the first power (square of the amplitude-level fit)
  paper_literal,  ///< alpha squared, as the purity-condition formula is usually quoted
};

/// sinc(x) ~ exp(-alpha x^2) with this constant.
inline constexpr double kSincGaussianAlpha = 0.455;

double sinc(double x);
double sinc_gaussian(double x);

struct PhaseMismatch {
  double dk_y = 0.0;  // rad/m
  double dk_z = 0.0;  // rad/m
};

struct InverseGroupVelocities {
  double pump = 0.0;    // s/m
  double signal = 0.0;  // s/m
  double idler = 0.0;   // s/m
};

InverseGroupVelocities inverse_group_velocities(const BeamGeometry& geom, const CrystalSpec& crystal);

/// Transverse and longitudinal mismatch at omega_j = omega_j0 + Omega_j with
/// the pump at omega_s + omega_i, every wave number from full dispersion.
PhaseMismatch phase_mismatch_exact(double detuning_s, double detuning_i, const BeamGeometry& geom,
                                   const CrystalSpec& crystal);

/// First-order mismatch; zero-order terms cancel at the phase-matched center.
PhaseMismatch phase_mismatch_linear(double detuning_s, double detuning_i,
                                    const InverseGroupVelocities& n, double theta_s, double theta_i);

/// Longitudinal overlap integral of exp(-H z^2 - i dk_z z) over the crystal,
/// by adaptive quadrature. Reduces to L sinc(dk_z L / 2) at H = 0.
std::complex<double> walk_off_integral(double dk_z, double H, double length);

struct JsaOptions {
  DispersionMode dispersion = DispersionMode::exact;
  bool walk_off = false;
  /// Replace sinc(dk_z L/2) by its Gaussian fit (analysis of the delta model).
  bool gaussian_phase_matching = false;
};

/// Biphoton mode function with the geometry-dependent quantities cached.
///
/// Without walk-off:
///   Phi = pi L / sqrt(A C) * sinc(dk_z L / 2) * exp(-dk_y^2 / 4C - (Os + Oi)^2 / 4 B_p^2)
/// With walk-off the sinc is replaced by the longitudinal integral with
/// H = F - D^2/4C; the D-dependent linear phase shifts dk_z by -D dk_y / 2C.
class JointAmplitude {
 public:
  JointAmplitude(const BeamGeometry& geom, const CrystalSpec& crystal, JsaOptions options = {});

  PhaseMismatch mismatch(double detuning_s, double detuning_i) const;
  double pump_envelope(double detuning_s, double detuning_i) const;
  std::complex<double> operator()(double detuning_s, double detuning_i) const;
  /// L sinc(dk_z L/2), or its Gaussian fit.
  double longitudinal(double dk_z) const;

  const BeamGeometry& geometry() const { return geom_; }
  const CrystalSpec& crystal() const { return crystal_; }
  const GeometryFactors& factors() const { return factors_; }
  const InverseGroupVelocities& group() const { return group_; }
  const JsaOptions& options() const { return options_; }

 private:
  BeamGeometry geom_;
  CrystalSpec crystal_;
  JsaOptions options_;
  GeometryFactors factors_;
  InverseGroupVelocities group_;
};

std::complex<double> mode_function(double detuning_s, double detuning_i, const BeamGeometry& geom,
                                   const CrystalSpec& crystal, JsaOptions options = {});

/// Detuning window (rad/s) and sampling of a JSA grid.
struct GridSpec {
  double signal_min = 0.0;
  double signal_max = 0.0;
  double idler_min = 0.0;
  double idler_max = 0.0;
  std::size_t resolution = 201;
};

inline constexpr std::size_t kMinGridResolution = 64;

/// Sampled joint spectral amplitude. Rows follow signal detuning, columns idler.
struct JsaGrid {
  std::vector<double> detuning_s;  // rad/s
  std::vector<double> detuning_i;  // rad/s
  double center_s = 0.0;           // omega_s0, rad/s
  double center_i = 0.0;           // omega_i0, rad/s
  std::vector<std::complex<double>> amplitude;
  /// 1/sqrt(sum |Phi|^2 dOs dOi): scales the samples to a unit-norm state.
  double normalization = 0.0;

  std::size_t rows() const { return detuning_s.size(); }
  std::size_t cols() const { return detuning_i.size(); }
  std::complex<double>& at(std::size_t r, std::size_t c) { return amplitude[r * cols() + c]; }
  const std::complex<double>& at(std::size_t r, std::size_t c) const {
    return amplitude[r * cols() + c];
  }
};

std::vector<double> linspace(double lo, double hi, std::size_t n);

JsaGrid jsa_grid(const GridSpec& spec, const BeamGeometry& geom, const CrystalSpec& crystal,
                 JsaOptions options = {});

/// Coefficients of the Gaussian model exp(-d_s Os^2 - d_i Oi^2 - d_si Os Oi)
/// of the amplitude, with the sinc replaced by its Gaussian fit.
struct DeltaCoefficients {
  double delta_s = 0.0;   // s^2
  double delta_i = 0.0;   // s^2
  double delta_si = 0.0;  // s^2
};

double alpha_value(AlphaConvention convention);

DeltaCoefficients delta_coefficients(const BeamGeometry& geom, const CrystalSpec& crystal,
                                     AlphaConvention convention = AlphaConvention::consistent);

/// Purity of the unfiltered Gaussian model: sqrt(1 - d_si^2 / (4 d_s d_i)).
double gaussian_model_purity(const DeltaCoefficients& d);

/// Collection waist (W0s = W0i) that zeroes d_si for the given pump waist.
/// Throws DomainError when the condition cannot be met.
double purity_waist(double waist_pump, const BeamGeometry& geom, const CrystalSpec& crystal,
                    AlphaConvention convention = AlphaConvention::consistent);

}  // namespace spdc
