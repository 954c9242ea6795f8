#include <cmath>

#include <doctest.h>

#include <spdc/dispersion.hpp>
#include <spdc/error.hpp>
#include <spdc/units.hpp>

#include "fixtures.hpp"

using namespace spdc;
using doctest::Approx;

TEST_CASE("ordinary index of BBO") {
  const auto& c = fixtures::bbo();
  CHECK(index_ordinary(810e-9, c) == Approx(1.66025831731717).epsilon(1e-12));
  CHECK(index_ordinary(405e-9, c) == Approx(1.69188689597686).epsilon(1e-12));
  CHECK_THROWS_AS(index_ordinary(150e-9, c), DomainError);
  CHECK_THROWS_AS(index_ordinary(1500e-9, c), DomainError);
}

TEST_CASE("dispersionless crystal gives constant index") {
  const auto c = fixtures::flat_crystal(1.5);
  for (double lam : {300e-9, 800e-9, 1500e-9}) {
    CHECK(index_ordinary(lam, c) == Approx(1.5).epsilon(1e-15));
    CHECK(index_extraordinary(lam, 0.7, c) == Approx(1.5).epsilon(1e-15));
  }
}

TEST_CASE("extraordinary index limits and monotonicity") {
  const auto& c = fixtures::bbo();
  const double lam = 405e-9;
  CHECK(index_extraordinary(lam, 0.0, c) == Approx(index_ordinary(lam, c)).epsilon(1e-15));
  CHECK(index_extraordinary(lam, kPi / 2, c) ==
        Approx(index_extraordinary_principal(lam, c)).epsilon(1e-15));
  double prev = index_extraordinary(lam, 0.0, c);
  for (int k = 1; k <= 90; ++k) {
    const double n = index_extraordinary(lam, units::deg(k), c);
    CHECK(n < prev);
    prev = n;
  }
  // At the collinear cut angle the pump index matches the ordinary signal index.
  const double thc = collinear_cut_angle(405e-9, 810e-9, 810e-9, c);
  CHECK(index_extraordinary(lam, thc, c) == Approx(1.66025831731717).epsilon(1e-11));
}

TEST_CASE("negative uniaxial ordering over the validity window") {
  const auto& c = fixtures::bbo();
  for (double nm = 220; nm <= 1060; nm += 20) {
    const double lam = units::nm(nm);
    CHECK(index_extraordinary_principal(lam, c) < index_ordinary(lam, c));
    CHECK(index_extraordinary_principal(lam, c) > 1.0);
  }
}

TEST_CASE("wave number") {
  const auto flat = fixtures::flat_crystal(1.5);
  const double w = units::angular_frequency(800e-9);
  CHECK(wave_number(w, Polarization::ordinary, 0.0, flat) == Approx(1.5 * w / kSpeedOfLight).epsilon(1e-15));
  CHECK_THROWS_AS(wave_number(w, Polarization::ordinary, 0.0, fixtures::flat_crystal(1.0)), DomainError);
  const auto c = fixtures::flat_crystal(1.7);
  CHECK(wave_number(2 * w, Polarization::ordinary, 0.0, c) ==
        Approx(2 * wave_number(w, Polarization::ordinary, 0.0, c)).epsilon(1e-15));
  const auto& b = fixtures::bbo();
  CHECK(wave_number(w * 800.0 / 810.0, Polarization::ordinary, 0.0, b) ==
        Approx(1.66025831731717 * w * 800.0 / 810.0 / kSpeedOfLight).epsilon(1e-12));
}

TEST_CASE("inverse group velocity: analytic against finite differences") {
  const auto& c = fixtures::bbo();
  const auto& src = fixtures::degenerate();
  const double theta = src.crystal.cut_angle;
  const auto flat = fixtures::flat_crystal(1.4);
  const auto m810 = OpticalMode::type_one(ModeRole::signal, 810e-9);
  CHECK(inverse_group_velocity(m810, 0.3, flat) == Approx(1.4 / kSpeedOfLight).epsilon(1e-14));

  const auto pump = OpticalMode::type_one(ModeRole::pump, 405e-9);
  CHECK(inverse_group_velocity(m810, theta, c) == Approx(5.61671403987242e-9).epsilon(1e-11));
  CHECK(inverse_group_velocity(pump, theta, c) == Approx(5.79219458758748e-9).epsilon(1e-11));

  for (const auto& mode : {m810, pump, OpticalMode::type_one(ModeRole::idler, 773.6e-9)}) {
    const double analytic = inverse_group_velocity(mode, theta, c);
    for (double rel : {1e-3, 1e-4, 1e-5}) {
      const double h = rel * mode.central_omega;
      const double fd = (wave_number(mode.central_omega + h, mode, theta, c) -
                         wave_number(mode.central_omega - h, mode, theta, c)) /
                        (2 * h);
      CHECK(fd == Approx(analytic).epsilon(1e-6));
    }
  }
}

TEST_CASE("effective nonlinearity") {
  const auto& c = fixtures::bbo();
  CHECK(effective_nonlinearity(0.0, 0.0, c) == Approx(c.d11));
  CHECK(effective_nonlinearity(kPi / 2, 0.0, c) == Approx(-c.d31));
  CHECK(std::abs(effective_nonlinearity(0.0, kPi / 6, c)) < 1e-15);
  for (double phi : {0.1, 0.4, 1.0}) {
    CHECK(effective_nonlinearity(0.5, phi + 2 * kPi / 3, c) == Approx(effective_nonlinearity(0.5, phi, c)));
  }
  // The d31 term is odd in theta, the d11 term even.
  const double th = 0.4;
  const double even = c.d11 * std::cos(th);
  CHECK(effective_nonlinearity(th, 0.0, c) - even == Approx(-(effective_nonlinearity(-th, 0.0, c) - even)));
}

TEST_CASE("collinear cut angle") {
  const auto& c = fixtures::bbo();
  const double thc = collinear_cut_angle(405e-9, 810e-9, 810e-9, c);
  CHECK(units::to_deg(thc) == Approx(28.815857436885).epsilon(1e-9));
  CHECK(std::abs(collinear_mismatch(thc, 405e-9, 810e-9, 810e-9, c)) < 1.0);

  CHECK_THROWS_WITH_AS(collinear_cut_angle(405e-9, 810e-9, 810e-9, fixtures::flat_crystal(1.5)),
                       doctest::Contains("no unique solution"), DomainError);
  CHECK_THROWS_AS(collinear_cut_angle(405e-9, 810e-9, 800e-9, c), PreconditionError);
  // A positive uniaxial crystal cannot phase match e -> o + o.
  auto positive = c;
  positive.sellmeier_e = positive.sellmeier_o;
  positive.sellmeier_e.a += 0.3;
  CHECK_THROWS_WITH_AS(collinear_cut_angle(405e-9, 810e-9, 810e-9, positive),
                       doctest::Contains("no phase-matching solution"), DomainError);
}

TEST_CASE("emission angles") {
  const auto& c = fixtures::bbo();
  const auto zero = emission_angles(0.0, 810e-9, 810e-9, c);
  CHECK(zero.theta_s == Approx(0.0));
  CHECK(zero.theta_i == Approx(0.0));

  const auto deg = emission_angles(units::deg(1.5), 810e-9, 810e-9, c);
  CHECK(deg.theta_s == Approx(deg.theta_i).epsilon(1e-12));
  CHECK(units::to_deg(deg.theta_s) == Approx(3.42517402992505).epsilon(1e-8));

  for (const auto* src : {&fixtures::degenerate(), &fixtures::nondegenerate()}) {
    const auto& g = src->geometry;
    const double ws = g.signal.central_omega;
    const double wi = g.idler.central_omega;
    const double kp = wave_number(ws + wi, g.pump, src->crystal.cut_angle, c);
    const double ks = wave_number(ws, g.signal, src->crystal.cut_angle, c);
    const double ki = wave_number(wi, g.idler, src->crystal.cut_angle, c);
    CHECK(std::abs(ks * std::sin(g.theta_s) - ki * std::sin(g.theta_i)) < 1.0);
    CHECK(std::abs(kp - ks * std::cos(g.theta_s) - ki * std::cos(g.theta_i)) < 1.0);
  }
  CHECK_THROWS_AS(emission_angles(-0.01, 810e-9, 810e-9, c), PreconditionError);
}

TEST_CASE("external angle") {
  const auto& c = fixtures::bbo();
  CHECK(external_angle(0.0, 1.66) == 0.0);
  CHECK(external_angle(0.05, 1.0) == Approx(0.05));
  CHECK(units::to_deg(external_angle(units::deg(3.6), 1.66)) == Approx(5.98293572695843).epsilon(1e-12));
  CHECK_THROWS_AS(external_angle(units::deg(50), 1.66), DomainError);
  CHECK(external_angle(0.06, 810e-9, c) == Approx(std::asin(index_ordinary(810e-9, c) * std::sin(0.06))));
}

TEST_CASE("pump walk-off angle") {
  const auto& c = fixtures::bbo();
  CHECK(walk_off_angle(0.0, 405e-9, c) == Approx(0.0));
  CHECK(std::abs(walk_off_angle(kPi / 2, 405e-9, c)) < 1e-12);
  CHECK(walk_off_angle(0.5, 405e-9, c) > 0.0);
}
