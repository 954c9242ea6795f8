#pragma once

#include <vector>

#include "spdc/jsa.hpp"

namespace spdc {

enum class Decompose {
  amplitude,  ///< SVD of Phi
  intensity,  ///< SVD of |Phi|^2
};

struct SchmidtSpectrum {
  std::vector<double> lambdas;  // descending, sum to one
  double purity = 0.0;
  double schmidt_number = 0.0;
};

SchmidtSpectrum schmidt_purity(const JsaGrid& grid, Decompose decompose = Decompose::amplitude);

/// Same, on a raw row-major matrix.
SchmidtSpectrum schmidt_purity(const std::vector<std::complex<double>>& matrix, std::size_t rows,
                               std::size_t cols, Decompose decompose = Decompose::amplitude);

}  // namespace spdc
