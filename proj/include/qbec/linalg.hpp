#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "qbec/complex_matrix.hpp"
#include "qbec/errors.hpp"

namespace qbec {

/// Relative tolerance for Hermiticity checks.
inline constexpr double kDefaultHermTol = 1e-10;
/// Relative tolerance below which a negative eigenvalue is treated as noise.
inline constexpr double kDefaultPsdTol = 1e-10;
/// Eigenvalues below cutoff * lambda_max count as zero (kernel directions).
inline constexpr double kDefaultSupportCutoff = 1e-10;

struct EigResult {
  std::vector<double> values;  ///< ascending
  ComplexMatrix vectors;       ///< orthonormal columns, column i pairs with values[i]
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Every sweep visits each off-diagonal pair (p,q) once and applies the
/// complex Givens rotation that annihilates entry (p,q) of the working copy;
/// the accumulated rotations form the eigenvector matrix. Convergence is
/// quadratic once the off-diagonal mass is small, and the method is
/// backward-stable without any balancing or shifting, which is all that is
/// needed at the dimensions this toolkit handles (<= 64).
///
/// The returned basis is deterministic: eigenvalues ascend (stable order for
/// ties) and each eigenvector is rescaled so that its first component of
/// non-negligible magnitude is real and positive. Downstream code relies on
/// this when it expresses filtered states in a reduction eigenbasis.
///
/// Throws NotHermitian if max|M - M^dag| exceeds tol * max|M|, and
/// NoConvergence if the sweep budget runs out.
inline EigResult eig_hermitian(const ComplexMatrix& m, double tol = kDefaultHermTol) {
  if (!m.square()) throw NotHermitian("eig_hermitian: matrix is not square");
  if (!m.is_hermitian(tol)) throw NotHermitian("eig_hermitian: matrix is not Hermitian within tolerance");

  const std::size_t n = m.rows();
  // Work on the Hermitian average so tolerance-level asymmetry cannot linger.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  EigResult result;
  result.values.assign(n, 0.0);
  result.vectors = v;
  if (n == 0 || scale == 0.0) return result;

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
  };

  constexpr int kMaxSweeps = 64;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= 5e-15 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex beta = a(p, q);
        const double babs = std::abs(beta);
        if (babs == 0.0) continue;

        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        const double theta = (gamma - alpha) / (2.0 * babs);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double sigma = t * c;
        const Complex phase = beta / babs;
        const Complex s = sigma * phase;  // rotation: cols p,q mix via [[c, s], [-conj(s), c]]

        for (std::size_t j = 0; j < n; ++j) {
          if (j == p || j == q) continue;
          const Complex apj = a(p, j);
          const Complex aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = std::conj(s) * apj + c * aqj;
          a(j, p) = std::conj(a(p, j));
          a(j, q) = std::conj(a(q, j));
        }
        a(p, p) = c * c * alpha - 2.0 * c * sigma * babs + sigma * sigma * gamma;
        a(q, q) = sigma * sigma * alpha + 2.0 * c * sigma * babs + c * c * gamma;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (std::size_t j = 0; j < n; ++j) {
          const Complex vjp = v(j, p);
          const Complex vjq = v(j, q);
          v(j, p) = c * vjp - std::conj(s) * vjq;
          v(j, q) = s * vjp + c * vjq;
        }
      }
    }
  }
  if (!converged && off_norm() > 1e-11 * scale)
    throw NoConvergence("eig_hermitian: Jacobi sweeps exhausted before convergence");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  result.vectors = ComplexMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    result.values[col] = a(src, src).real();
    // Fix the global phase: first component with non-negligible magnitude
    // becomes real and positive.
    Complex phase = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex vj = v(j, src);
      if (std::abs(vj) > 1e-12) {
        phase = std::conj(vj) / std::abs(vj);
        break;
      }
    }
    for (std::size_t j = 0; j < n; ++j) result.vectors(j, col) = v(j, src) * phase;
  }
  return result;
}

/// M^{-1/2} on the support of a positive-semidefinite matrix, zero on the
/// kernel. Eigenvalues at or below cutoff * lambda_max belong to the kernel.
/// Throws NegativeEigenvalue if M has an eigenvalue below
/// -kDefaultPsdTol * lambda_max.
inline ComplexMatrix pinv_sqrt(const ComplexMatrix& m, double cutoff = kDefaultSupportCutoff) {
  EigResult eig = eig_hermitian(m);
  const std::size_t n = m.rows();
  const double lmax = eig.values.empty() ? 0.0 : std::max(eig.values.back(), 0.0);
  if (!eig.values.empty() && eig.values.front() < -kDefaultPsdTol * std::max(lmax, 1e-300))
    throw NegativeEigenvalue("pinv_sqrt: matrix has a negative eigenvalue");

  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] <= cutoff * lmax) continue;
    const double w = 1.0 / std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += w * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out;
}

/// Kronecker product. The first factor is the leading subsystem, which fixes
/// the global index convention row = i * cols(B-side) + k used by every
/// bipartite object in the toolkit.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// Sum of singular values. Diagonalizes the Hermitian embedding
/// [[0, M], [M^dag, 0]], whose spectrum is {+sigma_i, -sigma_i}; unlike the
/// M^dag M route this keeps absolute accuracy near machine precision even for
/// singular values close to zero (no square root of rounding noise).
inline double trace_norm(const ComplexMatrix& m) {
  if (!m.square()) throw DimensionMismatch("trace_norm: matrix is not square");
  const std::size_t n = m.rows();
  ComplexMatrix embed(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      embed(i, n + j) = m(i, j);
      embed(n + j, i) = std::conj(m(i, j));
    }
  EigResult eig = eig_hermitian(embed);
  double s = 0.0;
  for (double w : eig.values) s += std::abs(w);
  return 0.5 * s;
}

}  // namespace qbec
