#pragma once

#include <string>
#include <vector>

#include "spdc/filters.hpp"

namespace spdc {

/// Energy-conserving partner wavelength: 1/lambda_i = 1/lambda_p - 1/lambda_s.
double idler_wavelength(double lambda_p, double lambda_s);

/// Physical description of a type-I source, SI units throughout.
struct SourceParameters {
  double lambda_p = 405e-9;
  double lambda_s = 810e-9;
  double lambda_i = 810e-9;
  double length = 450e-6;
  double cut_detuning = 0.0;  // rad beyond the collinear cut angle
  double azimuth = 0.0;
  double waist_pump = 310e-6;
  double waist_signal = 145.4e-6;
  double waist_idler = 145.4e-6;
  double pump_bandwidth = 30e12;       // rad/s
  double pump_power_mW = 1.0;
  double filter_half_width = 5e12;     // rad/s, signal and idler
  double pump_filter_half_width = 10e12;
  double signal_transmission = 1.0;
  double idler_transmission = 1.0;
  double pump_transmission = 1.0;
};

struct Source {
  CrystalSpec crystal;  // with length, cut angle and azimuth set
  BeamGeometry geometry;
  FilterSet filters;
  double collinear_angle = 0.0;
  std::vector<std::string> warnings;
};

/// Solves for the cut and emission angles and assembles a consistent source.
Source make_source(const CrystalSpec& data, const SourceParameters& params);

}  // namespace spdc
