#include "spdc/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "spdc/error.hpp"

namespace spdc {

SchmidtSpectrum schmidt_purity(const std::vector<std::complex<double>>& matrix, std::size_t rows,
                               std::size_t cols, Decompose decompose) {
  if (rows < 2 || cols < 2 || matrix.size() != rows * cols) {
    throw PreconditionError("Schmidt decomposition needs at least a 2x2 grid");
  }
  Eigen::MatrixXcd m(rows, cols);
  double norm = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = matrix[r * cols + c];
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw PreconditionError("joint amplitude contains non-finite entries");
      }
      m(r, c) = decompose == Decompose::amplitude ? v : std::complex<double>(std::norm(v), 0.0);
      norm = std::max(norm, std::abs(m(r, c)));
    }
  }
  if (norm == 0.0) throw DomainError("vanishing joint amplitude");
  m /= norm;

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  std::vector<double> sigma2(svd.singularValues().size());
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const double s = svd.singularValues()(k);
    sigma2[k] = s * s;
  }
  std::sort(sigma2.begin(), sigma2.end(), std::greater<>());

  double total = 0.0;
  for (double s : sigma2) total += s;
  SchmidtSpectrum out;
  out.lambdas.reserve(sigma2.size());
  for (double s : sigma2) out.lambdas.push_back(s / total);
  for (double l : out.lambdas) out.purity += l * l;
  out.schmidt_number = 1.0 / out.purity;
  return out;
}

SchmidtSpectrum schmidt_purity(const JsaGrid& grid, Decompose decompose) {
  return schmidt_purity(grid.amplitude, grid.rows(), grid.cols(), decompose);
}

}  // namespace spdc
