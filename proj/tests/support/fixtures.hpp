#pragma once

#include <spdc/setup.hpp>
#include <spdc/units.hpp>

namespace fixtures {

inline const spdc::CrystalSpec& bbo() {
  static const spdc::CrystalSpec data = spdc::load_crystal("bbo");
  return data;
}

inline spdc::SourceParameters degenerate_parameters() {
  spdc::SourceParameters p;
  p.cut_detuning = spdc::units::deg(1.5);
  return p;
}

inline spdc::SourceParameters nondegenerate_parameters() {
  auto p = degenerate_parameters();
  p.lambda_s = 850e-9;
  p.lambda_i = spdc::idler_wavelength(p.lambda_p, p.lambda_s);
  return p;
}

inline const spdc::Source& degenerate() {
  static const spdc::Source src = spdc::make_source(bbo(), degenerate_parameters());
  return src;
}

inline const spdc::Source& nondegenerate() {
  static const spdc::Source src = spdc::make_source(bbo(), nondegenerate_parameters());
  return src;
}

/// Dispersionless, non-birefringent crystal with index n.
inline spdc::CrystalSpec flat_crystal(double n) {
  spdc::CrystalSpec c;
  c.name = "flat";
  c.sellmeier_o = {n * n, 0.0, 0.0, 0.0};
  c.sellmeier_e = {n * n, 0.0, 0.0, 0.0};
  c.validity_min = 200e-9;
  c.validity_max = 2000e-9;
  c.length = 1e-3;
  c.cut_angle = 0.5;
  return c;
}

}  // namespace fixtures
