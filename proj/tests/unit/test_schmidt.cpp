#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include <spdc/error.hpp>
#include <spdc/filters.hpp>
#include <spdc/schmidt.hpp>

#include "fixtures.hpp"

using namespace spdc;
using doctest::Approx;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> gaussian(std::size_t n, double a, double b, double g, double span = 6.0) {
  std::vector<cplx> m(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const double x = -span + 2 * span * r / (n - 1);
    for (std::size_t c = 0; c < n; ++c) {
      const double y = -span + 2 * span * c / (n - 1);
      m[r * n + c] = std::exp(-a * x * x - b * y * y - g * x * y) * std::polar(1.0, 0.3 * x - 0.2 * y);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("separable grid has unit purity") {
  const std::size_t n = 128;
  std::vector<cplx> m(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double x = r / 20.0 - 3.0;
      const double y = c / 25.0 - 2.5;
      m[r * n + c] = cplx(std::exp(-x * x), 0.3 * x) * (1.0 / (1.0 + y * y));
    }
  }
  const auto s = schmidt_purity(m, n, n);
  CHECK(1.0 - s.purity < 1e-10);
  CHECK(s.schmidt_number == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("correlated Gaussian against the fine-grid SVD oracle") {
  const auto s = schmidt_purity(gaussian(201, 1.0, 1.5, 1.2), 201, 201);
  CHECK(std::abs(s.purity - 0.8717797887081349) < 1e-4);

  double sum = 0.0;
  for (std::size_t k = 0; k < s.lambdas.size(); ++k) {
    CHECK(s.lambdas[k] >= 0.0);
    if (k > 0) CHECK(s.lambdas[k] <= s.lambdas[k - 1]);
    sum += s.lambdas[k];
  }
  CHECK(sum == Approx(1.0).epsilon(1e-12));
  CHECK(s.schmidt_number == Approx(1.0 / s.purity));
}

TEST_CASE("purity invariances") {
  const std::size_t n = 96;
  const auto m = gaussian(n, 0.8, 1.1, 0.9);
  const double p = schmidt_purity(m, n, n).purity;

  auto scaled = m;
  for (auto& v : scaled) v *= cplx(-3.7, 12.5);
  CHECK(schmidt_purity(scaled, n, n).purity == Approx(p).epsilon(1e-12));

  std::vector<cplx> t(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) t[c * n + r] = m[r * n + c];
  CHECK(schmidt_purity(t, n, n).purity == Approx(p).epsilon(1e-12));
}

TEST_CASE("two-level spectra") {
  const std::size_t n = 64;
  for (double p : {0.5, 0.7, 0.9, 0.99}) {
    // orthonormal discrete vectors: two distinct sine modes per axis
    std::vector<cplx> m(n * n);
    auto mode = [&](int k, std::size_t i) {
      return std::sqrt(2.0 / (n + 1)) * std::sin(kPi * k * (i + 1.0) / (n + 1));
    };
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        m[r * n + c] = std::sqrt(p) * mode(1, r) * mode(2, c) + std::sqrt(1 - p) * mode(3, r) * mode(5, c);
    CHECK(schmidt_purity(m, n, n).purity == Approx(p * p + (1 - p) * (1 - p)).epsilon(1e-12));
  }
}

TEST_CASE("degenerate input") {
  std::vector<cplx> zero(16, 0.0);
  CHECK_THROWS_WITH_AS(schmidt_purity(zero, 4, 4), doctest::Contains("vanishing joint amplitude"), DomainError);
  std::vector<cplx> one(1, 1.0);
  CHECK_THROWS_AS(schmidt_purity(one, 1, 1), PreconditionError);
  std::vector<cplx> bad(4, 1.0);
  bad[2] = cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(schmidt_purity(bad, 2, 2), PreconditionError);
}

TEST_CASE("intensity decomposition") {
  const std::size_t n = 101;
  const auto m = gaussian(n, 1.0, 1.5, 1.2);
  const auto s = schmidt_purity(m, n, n, Decompose::intensity);
  CHECK(s.purity > 0.0);
  CHECK(s.purity <= 1.0);
  // |Phi|^2 of a Gaussian is Gaussian with the same correlation ratio.
  CHECK(s.purity == Approx(0.8717797887081349).epsilon(1e-3));
}

TEST_CASE("purity converges monotonically under grid refinement") {
  const auto& src = fixtures::degenerate();
  auto purity = [&](std::size_t n) {
    auto grid = jsa_grid(filter_grid(src.filters, src.geometry, n), src.geometry, src.crystal);
    apply_filters(grid, src.filters);
    return schmidt_purity(grid).purity;
  };
  const double p64 = purity(64), p128 = purity(128), p256 = purity(256);
  CHECK(std::abs(p256 - p128) <= std::abs(p128 - p64));
}
