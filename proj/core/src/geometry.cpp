#include "spdc/geometry.hpp"

#include <cmath>
#include <sstream>

#include "spdc/error.hpp"
#include "spdc/units.hpp"

namespace spdc {

BeamGeometry BeamGeometry::with_collection_waist(double w) const {
  BeamGeometry g = *this;
  g.waist_signal = w;
  g.waist_idler = w;
  return g;
}

BeamGeometry BeamGeometry::with_pump_waist(double w) const {
  BeamGeometry g = *this;
  g.waist_pump = w;
  return g;
}

std::vector<std::string> validate(const BeamGeometry& geom, double crystal_length) {
  if (!(geom.waist_pump > 0.0 && geom.waist_signal > 0.0 && geom.waist_idler > 0.0)) {
    throw PreconditionError("beam waists must be positive");
  }
  if (!(geom.theta_s >= 0.0 && geom.theta_s < kMaxEmissionAngle && geom.theta_i >= 0.0 &&
        geom.theta_i < kMaxEmissionAngle)) {
    throw PreconditionError("emission angles must lie in [0, 0.1) rad");
  }
  if (!(geom.pump_bandwidth > 0.0)) {
    throw PreconditionError("pump bandwidth must be positive");
  }
  if (!(geom.pump_power_mW > 0.0)) {
    throw PreconditionError("pump power must be positive");
  }

  std::vector<std::string> warnings;
  const std::pair<const OpticalMode*, double> modes[] = {
      {&geom.pump, geom.waist_pump}, {&geom.signal, geom.waist_signal}, {&geom.idler, geom.waist_idler}};
  for (const auto& [mode, waist] : modes) {
    const double zr = kPi * waist * waist / mode->central_wavelength;
    if (zr <= 10.0 * crystal_length) {
      std::ostringstream os;
      os << to_string(mode->role) << " Rayleigh range " << units::to_um(zr)
         << " um is not above 10 L; thin-crystal model is marginal";
      warnings.push_back(os.str());
    }
  }
  return warnings;
}

GeometryFactors geometry_factors(const BeamGeometry& geom) {
  const double ip = 1.0 / (geom.waist_pump * geom.waist_pump);
  const double is = 1.0 / (geom.waist_signal * geom.waist_signal);
  const double ii = 1.0 / (geom.waist_idler * geom.waist_idler);
  const double cs = std::cos(geom.theta_s);
  const double ci = std::cos(geom.theta_i);
  const double ss = std::sin(geom.theta_s);
  const double si = std::sin(geom.theta_i);

  GeometryFactors f;
  f.A = ip + is + ii;
  f.C = ip + cs * cs * is + ci * ci * ii;
  f.D = std::sin(2.0 * geom.theta_s) * is - std::sin(2.0 * geom.theta_i) * ii;
  f.F = ss * ss * is + si * si * ii;
  // F - D^2/4C is non-negative by Cauchy-Schwarz; clamp rounding noise.
  f.H = std::max(0.0, f.F - f.D * f.D / (4.0 * f.C));
  return f;
}

}  // namespace spdc
