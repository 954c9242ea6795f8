#include "spdc/dispersion.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "spdc/error.hpp"
#include "spdc/units.hpp"

namespace spdc {

OpticalMode OpticalMode::type_one(ModeRole role, double wavelength) {
  OpticalMode m;
  m.role = role;
  m.polarization = role == ModeRole::pump ? Polarization::extraordinary : Polarization::ordinary;
  m.central_wavelength = wavelength;
  m.central_omega = units::angular_frequency(wavelength);
  return m;
}

const char* to_string(ModeRole role) {
  switch (role) {
    case ModeRole::pump: return "pump";
    case ModeRole::signal: return "signal";
    case ModeRole::idler: return "idler";
  }
  return "?";
}

const char* to_string(Polarization polarization) {
  return polarization == Polarization::ordinary ? "ordinary" : "extraordinary";
}

namespace {

void require_window(double wavelength, const CrystalSpec& crystal) {
  if (!crystal.in_window(wavelength)) {
    std::ostringstream os;
    os << "wavelength " << units::to_nm(wavelength) << " nm outside the " << crystal.name
       << " Sellmeier validity window [" << units::to_nm(crystal.validity_min) << ", "
       << units::to_nm(crystal.validity_max) << "] nm";
    throw DomainError(os.str());
  }
}

double checked_index(const SellmeierCoefficients& s, double wavelength) {
  const double n2 = s.index_squared(units::to_um(wavelength));
  if (!(n2 > 1.0)) {
    throw DomainError("Sellmeier evaluation gave n <= 1");
  }
  return std::sqrt(n2);
}

// dn/dlambda in um^-1 for a principal index.
double principal_slope(const SellmeierCoefficients& s, double wavelength, double n) {
  return s.index_squared_derivative(units::to_um(wavelength)) / (2.0 * n);
}

}  // namespace

double index_ordinary(double wavelength, const CrystalSpec& crystal) {
  require_window(wavelength, crystal);
  return checked_index(crystal.sellmeier_o, wavelength);
}

double index_extraordinary_principal(double wavelength, const CrystalSpec& crystal) {
  require_window(wavelength, crystal);
  return checked_index(crystal.sellmeier_e, wavelength);
}

double index_extraordinary(double wavelength, double theta, const CrystalSpec& crystal) {
  const double no = index_ordinary(wavelength, crystal);
  const double ne = index_extraordinary_principal(wavelength, crystal);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return 1.0 / std::sqrt(c * c / (no * no) + s * s / (ne * ne));
}

double index_for(Polarization polarization, double wavelength, double theta,
                 const CrystalSpec& crystal) {
  return polarization == Polarization::ordinary ? index_ordinary(wavelength, crystal)
                                                : index_extraordinary(wavelength, theta, crystal);
}

double wave_number(double omega, Polarization polarization, double theta,
                   const CrystalSpec& crystal) {
  if (!(omega > 0.0)) {
    throw PreconditionError("wave_number: angular frequency must be positive");
  }
  const double n = index_for(polarization, units::wavelength(omega), theta, crystal);
  return n * omega / kSpeedOfLight;
}

double wave_number(double omega, const OpticalMode& mode, double theta, const CrystalSpec& crystal) {
  return wave_number(omega, mode.polarization, theta, crystal);
}

double inverse_group_velocity(const OpticalMode& mode, double theta, const CrystalSpec& crystal) {
  const double lambda = mode.central_wavelength;
  const double lambda_um = units::to_um(lambda);
  const double no = index_ordinary(lambda, crystal);
  const double dno = principal_slope(crystal.sellmeier_o, lambda, no);

  double n = no;
  double dn = dno;
  if (mode.polarization == Polarization::extraordinary) {
    const double ne = index_extraordinary_principal(lambda, crystal);
    const double dne = principal_slope(crystal.sellmeier_e, lambda, ne);
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    n = index_extraordinary(lambda, theta, crystal);
    // d(1/n^2) = -2 dn / n^3 summed over the two principal contributions.
    dn = n * n * n * (c2 * dno / (no * no * no) + s2 * dne / (ne * ne * ne));
  }
  return (n - lambda_um * dn) / kSpeedOfLight;
}

double effective_nonlinearity(double theta, double phi, const CrystalSpec& crystal) {
  return crystal.d11 * std::cos(3.0 * phi) * std::cos(theta) - crystal.d31 * std::sin(theta);
}

namespace {

void require_energy_conservation(double lambda_p, double lambda_s, double lambda_i) {
  if (!(lambda_p > 0.0 && lambda_s > 0.0 && lambda_i > 0.0)) {
    throw PreconditionError("wavelengths must be positive");
  }
  const double residual = 1.0 / lambda_p - 1.0 / lambda_s - 1.0 / lambda_i;
  if (std::abs(residual) > kEnergyConservationTolerance / lambda_p) {
    const double suggested = 1.0 / (1.0 / lambda_p - 1.0 / lambda_s);
    std::ostringstream os;
    os << "energy conservation violated: 1/lambda_p != 1/lambda_s + 1/lambda_i"
       << " (idler for this pump/signal would be " << units::to_nm(suggested) << " nm)";
    throw PreconditionError(os.str());
  }
}

struct AngleTolerance {
  double tol;
  bool operator()(double a, double b) const { return std::abs(b - a) <= tol; }
};

template <class F>
double bracketed_root(F f, double lo, double hi, double flo, double fhi, double tol) {
  std::uintmax_t max_iter = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, AngleTolerance{tol}, max_iter);
  if (max_iter >= 200) {
    throw ConvergenceError("bracketed root finder did not converge");
  }
  return 0.5 * (a + b);
}

constexpr double kAngleTolerance = 1e-10;

}  // namespace

double collinear_mismatch(double theta, double lambda_p, double lambda_s, double lambda_i,
                          const CrystalSpec& crystal) {
  const double kp = wave_number(units::angular_frequency(lambda_p), Polarization::extraordinary,
                                theta, crystal);
  const double ks = wave_number(units::angular_frequency(lambda_s), Polarization::ordinary, 0.0, crystal);
  const double ki = wave_number(units::angular_frequency(lambda_i), Polarization::ordinary, 0.0, crystal);
  return kp - ks - ki;
}

double collinear_cut_angle(double lambda_p, double lambda_s, double lambda_i,
                           const CrystalSpec& crystal) {
  require_energy_conservation(lambda_p, lambda_s, lambda_i);
  auto f = [&](double t) { return collinear_mismatch(t, lambda_p, lambda_s, lambda_i, crystal); };
  const double lo = 0.0;
  const double hi = kPi / 2.0;
  const double flo = f(lo);
  const double fhi = f(hi);
  const double kp = wave_number(units::angular_frequency(lambda_p), Polarization::ordinary, 0.0, crystal);
  if (std::abs(flo) <= 1e-12 * kp && std::abs(fhi) <= 1e-12 * kp) {
    throw DomainError("no unique solution: mismatch vanishes for every cut angle");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw DomainError("no phase-matching solution for the cut angle in (0, pi/2)");
  }
  return bracketed_root(f, lo, hi, flo, fhi, kAngleTolerance);
}

EmissionAngles emission_angles(double cut_detuning, double lambda_s, double lambda_i,
                               const CrystalSpec& crystal) {
  if (cut_detuning < 0.0) {
    throw PreconditionError("cut detuning must be non-negative");
  }
  const double lambda_p = 1.0 / (1.0 / lambda_s + 1.0 / lambda_i);
  EmissionAngles out;
  out.cut_angle = collinear_cut_angle(lambda_p, lambda_s, lambda_i, crystal) + cut_detuning;

  const double kp = wave_number(units::angular_frequency(lambda_p), Polarization::extraordinary,
                                out.cut_angle, crystal);
  const double ks = wave_number(units::angular_frequency(lambda_s), Polarization::ordinary, 0.0, crystal);
  const double ki = wave_number(units::angular_frequency(lambda_i), Polarization::ordinary, 0.0, crystal);

  // dk_y = 0 fixes theta_i(theta_s); what remains is a 1-D root in theta_s.
  auto idler_angle = [&](double ts) { return std::asin(std::min(1.0, ks * std::sin(ts) / ki)); };
  auto dkz = [&](double ts) { return kp - ks * std::cos(ts) - ki * std::cos(idler_angle(ts)); };

  const double f0 = dkz(0.0);
  if (f0 >= -1e-9 * kp) {
    if (cut_detuning > 0.0) {
      out.warning = "cut detuning below the phase-matching threshold; returning collinear emission";
    }
    return out;
  }
  const double ts_max = std::asin(std::min(1.0, ki / ks));
  const double fmax = dkz(ts_max);
  if (fmax <= 0.0) {
    throw ConvergenceError("emission angle solver: no bracket for the longitudinal mismatch");
  }
  out.theta_s = bracketed_root(dkz, 0.0, ts_max, f0, fmax, kAngleTolerance * 1e-2);
  out.theta_i = idler_angle(out.theta_s);
  return out;
}

double external_angle(double theta_internal, double index) {
  const double s = index * std::sin(theta_internal);
  if (std::abs(s) > 1.0) {
    throw DomainError("total internal reflection at the exit face");
  }
  return std::asin(s);
}

double external_angle(double theta_internal, double wavelength, const CrystalSpec& crystal) {
  return external_angle(theta_internal, index_ordinary(wavelength, crystal));
}

double walk_off_angle(double theta, double wavelength, const CrystalSpec& crystal) {
  const double no = index_ordinary(wavelength, crystal);
  const double ne = index_extraordinary_principal(wavelength, crystal);
  const double ratio = (no * no) / (ne * ne);
  return std::atan2(ratio * std::sin(theta), std::cos(theta)) - theta;
}

}  // namespace spdc
