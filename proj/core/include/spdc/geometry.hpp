#pragma once

#include <string>
#include <vector>

#include "spdc/dispersion.hpp"

namespace spdc {

/// Focal geometry of the pump and the two collection modes, plus the pump
/// spectrum. Waists are 1/e field radii located at the crystal center.
struct BeamGeometry {
  double waist_pump = 0.0;    // m
  double waist_signal = 0.0;  // m
  double waist_idler = 0.0;   // m
  double theta_s = 0.0;       // internal emission angle, rad
  double theta_i = 0.0;       // internal emission angle, rad
  double pump_bandwidth = 0.0;  // B_p, rad/s
  double pump_power_mW = 1.0;
  OpticalMode pump;
  OpticalMode signal;
  OpticalMode idler;

  /// Copy with both collection waists set to `w`.
  BeamGeometry with_collection_waist(double w) const;
  BeamGeometry with_pump_waist(double w) const;
};

/// Upper bound on the emission angles accepted by the small-angle model.
inline constexpr double kMaxEmissionAngle = 0.1;

/// Throws PreconditionError on hard violations; returns advisory warnings
/// (Rayleigh range not well above 10 L).
std::vector<std::string> validate(const BeamGeometry& geom, double crystal_length);

/// Gaussian overlap coefficients of the transverse integrals (all 1/m^2).
struct GeometryFactors {
  double A = 0.0;
  double C = 0.0;
  double D = 0.0;
  double F = 0.0;
  double H = 0.0;
};

GeometryFactors geometry_factors(const BeamGeometry& geom);

}  // namespace spdc
