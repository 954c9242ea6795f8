#include "spdc/setup.hpp"

#include <cmath>
#include <sstream>

#include "spdc/error.hpp"

namespace spdc {

double idler_wavelength(double lambda_p, double lambda_s) {
  if (!(lambda_p > 0.0 && lambda_s > lambda_p)) {
    throw PreconditionError("signal wavelength must exceed the pump wavelength");
  }
  return 1.0 / (1.0 / lambda_p - 1.0 / lambda_s);
}

Source make_source(const CrystalSpec& data, const SourceParameters& p) {
  const double mismatch = std::abs(1.0 / p.lambda_p - 1.0 / p.lambda_s - 1.0 / p.lambda_i) * p.lambda_p;
  if (mismatch > kEnergyConservationTolerance) {
    std::ostringstream os;
    os << "energy conservation violated; the idler for this pump and signal is "
       << idler_wavelength(p.lambda_p, p.lambda_s) * 1e9 << " nm";
    throw PreconditionError(os.str());
  }

  Source src;
  src.crystal = data;
  src.crystal.length = p.length;
  src.crystal.azimuth = p.azimuth;
  src.collinear_angle = collinear_cut_angle(p.lambda_p, p.lambda_s, p.lambda_i, data);
  const auto angles = emission_angles(p.cut_detuning, p.lambda_s, p.lambda_i, data);
  src.crystal.cut_angle = angles.cut_angle;
  validate(src.crystal);
  if (angles.warning) src.warnings.push_back(*angles.warning);

  auto& g = src.geometry;
  g.waist_pump = p.waist_pump;
  g.waist_signal = p.waist_signal;
  g.waist_idler = p.waist_idler;
  g.theta_s = angles.theta_s;
  g.theta_i = angles.theta_i;
  g.pump_bandwidth = p.pump_bandwidth;
  g.pump_power_mW = p.pump_power_mW;
  g.pump = OpticalMode::type_one(ModeRole::pump, p.lambda_p);
  g.signal = OpticalMode::type_one(ModeRole::signal, p.lambda_s);
  g.idler = OpticalMode::type_one(ModeRole::idler, p.lambda_i);
  for (auto& w : validate(g, p.length)) src.warnings.push_back(std::move(w));

  src.filters = centered_filters(g, p.filter_half_width);
  src.filters.pump.half_width = p.pump_filter_half_width;
  src.filters.signal.transmission = p.signal_transmission;
  src.filters.idler.transmission = p.idler_transmission;
  src.filters.pump.transmission = p.pump_transmission;
  validate(src.filters.signal);
  validate(src.filters.idler);
  validate(src.filters.pump);
  return src;
}

}  // namespace spdc
