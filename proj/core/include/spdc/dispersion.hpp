#pragma once

#include <optional>
#include <string>

#include "spdc/crystal.hpp"

namespace spdc {

enum class ModeRole { pump, signal, idler };
enum class Polarization { ordinary, extraordinary };

struct OpticalMode {
  ModeRole role = ModeRole::pump;
  Polarization polarization = Polarization::ordinary;
  double central_wavelength = 0.0;  // m
  double central_omega = 0.0;       // rad/s

  /// Type-I assignment for a negative uniaxial crystal: extraordinary pump,
  /// ordinary signal and idler.
  static OpticalMode type_one(ModeRole role, double wavelength);
};

const char* to_string(ModeRole role);
const char* to_string(Polarization polarization);

// ---- refractive indices ----------------------------------------------------

/// n_o(lambda). Throws DomainError outside the crystal's validity window.
double index_ordinary(double wavelength, const CrystalSpec& crystal);

/// Principal extraordinary index n_e(lambda) (theta = pi/2).
double index_extraordinary_principal(double wavelength, const CrystalSpec& crystal);

/// n_e(theta, lambda) from 1/n^2 = cos^2/n_o^2 + sin^2/n_e^2.
double index_extraordinary(double wavelength, double theta, const CrystalSpec& crystal);

/// Index seen by a wave of the given polarization; theta only matters for
/// extraordinary waves.
double index_for(Polarization polarization, double wavelength, double theta,
                 const CrystalSpec& crystal);

// ---- wave numbers and group velocities ---------------------------------------

/// k = n(omega, theta) * omega / c.
double wave_number(double omega, Polarization polarization, double theta,
                   const CrystalSpec& crystal);
double wave_number(double omega, const OpticalMode& mode, double theta, const CrystalSpec& crystal);

/// dk/domega at the mode's central frequency, from the analytic derivative of
/// the Sellmeier formula: N = (n - lambda dn/dlambda) / c.
double inverse_group_velocity(const OpticalMode& mode, double theta, const CrystalSpec& crystal);

// ---- nonlinearity ------------------------------------------------------------

/// d_eff = d11 cos(3 phi) cos(theta) - d31 sin(theta), in pm/V.
double effective_nonlinearity(double theta, double phi, const CrystalSpec& crystal);

// ---- phase matching geometry -------------------------------------------------

/// Relative tolerance on 1/lambda_p = 1/lambda_s + 1/lambda_i.
inline constexpr double kEnergyConservationTolerance = 1e-6;

/// Longitudinal mismatch k_p(theta) - k_s - k_i for collinear emission at the
/// central wavelengths.
double collinear_mismatch(double theta, double lambda_p, double lambda_s, double lambda_i,
                          const CrystalSpec& crystal);

/// Cut angle giving collinear type-I phase matching, to 1e-10 rad.
double collinear_cut_angle(double lambda_p, double lambda_s, double lambda_i,
                           const CrystalSpec& crystal);

struct EmissionAngles {
  double theta_s = 0.0;  // internal, rad
  double theta_i = 0.0;  // internal, rad
  double cut_angle = 0.0;  // total cut angle used (collinear angle + detuning)
  std::optional<std::string> warning;
};

/// Internal signal/idler emission angles for a crystal cut `cut_detuning`
/// beyond the collinear angle. Solves dk_y = 0 and dk_z = 0 at the central
/// frequencies; the signal and idler sit on opposite sides of the pump.
EmissionAngles emission_angles(double cut_detuning, double lambda_s, double lambda_i,
                               const CrystalSpec& crystal);

/// Refraction through the exit face: sin(theta_ext) = n sin(theta_int).
double external_angle(double theta_internal, double index);
double external_angle(double theta_internal, double wavelength, const CrystalSpec& crystal);

/// Poynting walk-off of an extraordinary wave, atan((n_o^2/n_e^2) tan theta) - theta.
double walk_off_angle(double theta, double wavelength, const CrystalSpec& crystal);

}  // namespace spdc
