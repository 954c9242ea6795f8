#include "spdc/filters.hpp"

#include <cmath>

#include "spdc/error.hpp"

namespace spdc {

double filter_transmission(double omega, const FilterSpec& filter) {
  return (omega >= filter.lower() && omega <= filter.upper()) ? filter.transmission : 0.0;
}

void validate(const FilterSpec& filter) {
  if (!(filter.half_width > 0.0)) throw PreconditionError("filter half-width must be positive");
  if (!(filter.center > 0.0)) throw PreconditionError("filter center must be positive");
  if (!(filter.transmission >= 0.0 && filter.transmission <= 1.0)) {
    throw PreconditionError("filter transmission must lie in [0, 1]");
  }
}

FilterSet centered_filters(const BeamGeometry& geom, double half_width, double pump_factor) {
  FilterSet f;
  f.signal = {geom.signal.central_omega, half_width, 1.0};
  f.idler = {geom.idler.central_omega, half_width, 1.0};
  f.pump = {geom.pump.central_omega, pump_factor * half_width, 1.0};
  return f;
}

GridSpec filter_grid(const FilterSet& filters, const BeamGeometry& geom, std::size_t resolution) {
  GridSpec spec;
  spec.signal_min = filters.signal.lower() - geom.signal.central_omega;
  spec.signal_max = filters.signal.upper() - geom.signal.central_omega;
  spec.idler_min = filters.idler.lower() - geom.idler.central_omega;
  spec.idler_max = filters.idler.upper() - geom.idler.central_omega;
  spec.resolution = resolution;
  return spec;
}

void apply_filters(JsaGrid& grid, const FilterSet& filters) {
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    const double ws = grid.center_s + grid.detuning_s[r];
    const double ts = filter_transmission(ws, filters.signal);
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const double wi = grid.center_i + grid.detuning_i[c];
      grid.at(r, c) *= ts * filter_transmission(wi, filters.idler) *
                       filter_transmission(ws + wi, filters.pump);
    }
  }
}

}  // namespace spdc
