#pragma once

#include <random>

#include "dissgeo/qcore.hpp"

namespace dissgeo::test {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

inline ComplexVector random_vector(std::mt19937_64& rng, int n) {
  return random_matrix(rng, n, 1).col(0);
}

/// Random density matrix: A A^dag normalized.
inline ComplexMatrix random_density(std::mt19937_64& rng, int n) {
  const ComplexMatrix a = random_matrix(rng, n, n);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace dissgeo::test
