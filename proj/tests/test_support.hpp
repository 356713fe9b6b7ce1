#pragma once

// Shared helpers for the unit tests: seeded random matrix generators.

#include <cstddef>
#include <random>

#include "qbec/complex_matrix.hpp"

namespace testutil {

inline qbec::ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  qbec::ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = qbec::Complex(gauss(rng), gauss(rng));
  return m;
}

inline qbec::ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const qbec::ComplexMatrix a = random_matrix(n, n, rng);
  qbec::ComplexMatrix h = a + a.adjoint();
  h *= qbec::Complex(0.5, 0.0);
  return h;
}

inline qbec::ComplexMatrix random_psd(std::size_t n, std::size_t rank, std::mt19937_64& rng) {
  const qbec::ComplexMatrix g = random_matrix(n, rank, rng);
  return g * g.adjoint();
}

}  // namespace testutil
