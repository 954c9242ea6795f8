#pragma once

#include "spdc/geometry.hpp"
#include "spdc/jsa.hpp"

namespace spdc {

/// Flat-top bandpass: `transmission` on [center - half_width, center + half_width].
struct FilterSpec {
  double center = 0.0;      // rad/s
  double half_width = 0.0;  // rad/s
  double transmission = 1.0;

  double lower() const { return center - half_width; }
  double upper() const { return center + half_width; }
};

/// Closed interval: the edges transmit.
double filter_transmission(double omega, const FilterSpec& filter);

void validate(const FilterSpec& filter);

struct FilterSet {
  FilterSpec pump;
  FilterSpec signal;
  FilterSpec idler;
};

/// Filters centered on the geometry's central frequencies; the pump filter
/// is `pump_factor` times wider than the down-conversion filters.
FilterSet centered_filters(const BeamGeometry& geom, double half_width, double pump_factor = 2.0);

/// Detuning window spanning exactly the signal and idler passbands.
GridSpec filter_grid(const FilterSet& filters, const BeamGeometry& geom, std::size_t resolution);

/// Multiplies each sample by T_s T_i T_p (pump at omega_s + omega_i).
void apply_filters(JsaGrid& grid, const FilterSet& filters);

}  // namespace spdc
