#pragma once

#include <numbers>

// Physical constants and unit conversions. Everything inside the library is SI
// (meters, seconds, rad/s, rad/m); the helpers below are for the boundaries.

namespace spdc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;         // m/s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

namespace units {

constexpr double nm(double v) { return v * 1e-9; }
constexpr double um(double v) { return v * 1e-6; }
constexpr double mm(double v) { return v * 1e-3; }
constexpr double deg(double v) { return v * kPi / 180.0; }
constexpr double pm_per_V(double v) { return v * 1e-12; }

constexpr double to_nm(double meters) { return meters * 1e9; }
constexpr double to_um(double meters) { return meters * 1e6; }
constexpr double to_deg(double radians) { return radians * 180.0 / kPi; }

/// Wavelength (m) to angular frequency (rad/s).
constexpr double angular_frequency(double wavelength) {
  return 2.0 * kPi * kSpeedOfLight / wavelength;
}

/// Angular frequency (rad/s) to vacuum wavelength (m).
constexpr double wavelength(double angular_frequency) {
  return 2.0 * kPi * kSpeedOfLight / angular_frequency;
}

/// How "THz" at the configuration boundary maps to rad/s.
enum class FrequencyConvention {
  angular,   ///< 1 THz == 1e12 rad/s
  ordinary,  ///< 1 THz == 2*pi*1e12 rad/s
};

constexpr double thz(double v, FrequencyConvention convention = FrequencyConvention::angular) {
  return convention == FrequencyConvention::angular ? v * 1e12 : v * 2.0 * kPi * 1e12;
}

constexpr double to_thz(double rad_per_s,
                        FrequencyConvention convention = FrequencyConvention::angular) {
  return convention == FrequencyConvention::angular ? rad_per_s * 1e-12
                                                    : rad_per_s * 1e-12 / (2.0 * kPi);
}

}  // namespace units
}  // namespace spdc
