#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qbec/complex_matrix.hpp"
#include "qbec/errors.hpp"
#include "qbec/linalg.hpp"

namespace qbec {

/// Subsystem selector for bipartite operations. A is the leading factor in
/// the global index row = i * dim_b + k.
enum class Side { A, B };

/// Density operator on a dim_a x dim_b bipartite system, stored as the full
/// (dim_a * dim_b) x (dim_a * dim_b) matrix. Basis labels are 0-based.
struct BipartiteState {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  ComplexMatrix rho;
};

inline BipartiteState make_state(std::size_t dim_a, std::size_t dim_b, ComplexMatrix rho) {
  if (dim_a == 0 || dim_b == 0) throw InvalidDimension("make_state: subsystem dimensions must be positive");
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
    throw DimensionMismatch("make_state: matrix size does not match dim_a * dim_b");
  return BipartiteState{dim_a, dim_b, std::move(rho)};
}

/// Maximally entangled state (1/m) sum_{ij} |ii><jj| on an m x m system.
inline BipartiteState max_entangled(std::size_t m) {
  if (m < 2) throw InvalidDimension("max_entangled: dimension must be at least 2");
  ComplexMatrix rho(m * m, m * m);
  const double w = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rho(i * m + i, j * m + j) = w;
  return BipartiteState{m, m, std::move(rho)};
}

/// Partial trace: reduce(s, Side::A) traces out B and returns the dim_a x
/// dim_a reduction, and vice versa.
inline ComplexMatrix reduce(const BipartiteState& s, Side side) {
  const std::size_t m = s.dim_a, n = s.dim_b;
  if (side == Side::A) {
    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += s.rho(i * n + k, j * n + k);
        out(i, j) = acc;
      }
    return out;
  }
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) acc += s.rho(i * n + k, i * n + l);
      out(k, l) = acc;
    }
  return out;
}

/// Transpose one subsystem in place of the identity on the other.
inline BipartiteState partial_transpose(const BipartiteState& s, Side side = Side::B) {
  const std::size_t m = s.dim_a, n = s.dim_b;
  ComplexMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          if (side == Side::B)
            out(i * n + k, j * n + l) = s.rho(i * n + l, j * n + k);
          else
            out(i * n + k, j * n + l) = s.rho(j * n + k, i * n + l);
        }
  return BipartiteState{m, n, std::move(out)};
}

/// Exchange the two subsystems: the result lives on dim_b x dim_a.
inline BipartiteState swap_subsystems(const BipartiteState& s) {
  const std::size_t m = s.dim_a, n = s.dim_b;
  ComplexMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < n; ++l) out(k * m + i, l * m + j) = s.rho(i * n + k, j * n + l);
  return BipartiteState{n, m, std::move(out)};
}

/// (trace norm of the partial transpose - 1) / 2, which for a unit-trace
/// state is the absolute sum of the negative partial-transpose eigenvalues.
/// Zero exactly when the state is PPT; clamped so numerical noise cannot make
/// it negative.
inline double negativity(const BipartiteState& s, double tol = kDefaultHermTol) {
  EigResult eig = eig_hermitian(partial_transpose(s).rho, tol);
  double sum_abs = 0.0;
  for (double w : eig.values) sum_abs += std::abs(w);
  return std::max(0.0, 0.5 * (sum_abs - 1.0));
}

/// Sum of singular values of the realigned matrix R[(i,j),(k,l)] = rho[(i,k),(j,l)].
/// Values above 1 certify entanglement; the check is defined here only for
/// dim_a == dim_b.
inline double realignment_value(const BipartiteState& s) {
  if (s.dim_a != s.dim_b)
    throw UnsupportedDimensions("realignment_value: defined only for dim_a == dim_b");
  const std::size_t m = s.dim_a;
  ComplexMatrix r(m * m, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) r(i * m + j, k * m + l) = s.rho(i * m + k, j * m + l);
  return trace_norm(r);
}

/// Orthogonal projector onto the span of eigenvectors with eigenvalue above
/// cutoff * lambda_max. Throws NegativeEigenvalue on genuinely indefinite
/// input, like pinv_sqrt.
inline ComplexMatrix support_projector(const ComplexMatrix& m, double cutoff = kDefaultSupportCutoff) {
  EigResult eig = eig_hermitian(m);
  const std::size_t n = m.rows();
  const double lmax = eig.values.empty() ? 0.0 : std::max(eig.values.back(), 0.0);
  if (!eig.values.empty() && eig.values.front() < -kDefaultPsdTol * std::max(lmax, 1e-300))
    throw NegativeEigenvalue("support_projector: matrix has a negative eigenvalue");
  ComplexMatrix p(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] <= cutoff * lmax) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) += eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return p;
}

/// Equality tolerance for the support-inclusion check.
inline constexpr double kSupportInclusionTol = 1e-9;

/// Whether the support of rho is contained in the tensor product of the
/// supports of its reductions: with P = P_A x P_B built from the reduction
/// support projectors, the check is P rho P = rho entrywise within 1e-9.
/// Every density operator satisfies this, so a failure flags either
/// numerical trouble or an input that is not a state.
inline bool support_inclusion_holds(const BipartiteState& s, double cutoff = kDefaultSupportCutoff) {
  const ComplexMatrix p = tensor(support_projector(reduce(s, Side::A), cutoff),
                                 support_projector(reduce(s, Side::B), cutoff));
  return max_abs_diff(p * s.rho * p, s.rho) <= kSupportInclusionTol;
}

/// Random rank-r density operator rho = G G^dag / tr(G G^dag) with G a
/// (dim_a * dim_b) x rank matrix of i.i.d. standard complex Gaussian entries.
/// Deterministic for a given seed; rank = dim_a * dim_b gives a full-rank
/// state with overwhelming likelihood.
inline BipartiteState random_state(std::size_t dim_a, std::size_t dim_b, std::size_t rank,
                                   std::uint64_t seed = 42) {
  if (dim_a == 0 || dim_b == 0) throw InvalidDimension("random_state: dimensions must be positive");
  const std::size_t d = dim_a * dim_b;
  if (rank == 0 || rank > d) throw InvalidDimension("random_state: rank must lie in [1, dim_a * dim_b]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(d, rank);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  ComplexMatrix h = g * g.adjoint();
  const double tr = h.trace().real();
  h *= Complex(1.0 / tr, 0.0);
  return BipartiteState{dim_a, dim_b, std::move(h)};
}

/// Random convex mixture of product states sum_t p_t (A_t tensor B_t).
/// Separable by construction, so it must pass every entanglement test;
/// useful as a negative control.
inline BipartiteState random_product_mixture(std::size_t dim_a, std::size_t dim_b,
                                             std::size_t terms, std::uint64_t seed = 42) {
  if (dim_a == 0 || dim_b == 0) throw InvalidDimension("random_product_mixture: dimensions must be positive");
  if (terms == 0) throw InvalidDimension("random_product_mixture: need at least one term");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.1, 1.0);

  auto random_density = [&](std::size_t d) {
    ComplexMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    ComplexMatrix h = g * g.adjoint();
    h *= Complex(1.0 / h.trace().real(), 0.0);
    return h;
  };

  std::vector<double> weights(terms);
  double total = 0.0;
  for (double& w : weights) {
    w = uni(rng);
    total += w;
  }
  ComplexMatrix rho(dim_a * dim_b, dim_a * dim_b);
  for (std::size_t t = 0; t < terms; ++t) {
    ComplexMatrix part = tensor(random_density(dim_a), random_density(dim_b));
    part *= Complex(weights[t] / total, 0.0);
    rho += part;
  }
  return BipartiteState{dim_a, dim_b, std::move(rho)};
}

/// Outcome of the entanglement tests in analyze(). NPT states are entangled
/// but carry no hidden surprises; PPT states are further split by whether the
/// realignment test certifies entanglement.
enum class Verdict { NPT, PPT_REALIGNMENT_POSITIVE, PPT_INCONCLUSIVE };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NPT: return "NPT";
    case Verdict::PPT_REALIGNMENT_POSITIVE: return "PPT_REALIGNMENT_POSITIVE";
    default: return "PPT_INCONCLUSIVE";
  }
}

struct AnalysisReport {
  double trace = 0.0;
  double min_eigenvalue = 0.0;
  ComplexMatrix reduction_a;
  ComplexMatrix reduction_b;
  double pt_min_eigenvalue = 0.0;
  double negativity = 0.0;
  /// NaN when dim_a != dim_b (the test is not defined there).
  double realignment_value = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::PPT_INCONCLUSIVE;
};

/// Full diagnostic pass over a state: spectrum edge, reductions, partial
/// transpose spectrum, negativity, realignment. The verdict reads NPT when
/// the partial transpose dips below -tol; otherwise the realignment value
/// (when defined) decides between a positive certificate and inconclusive.
inline AnalysisReport analyze(const BipartiteState& s, double tol = kDefaultHermTol) {
  AnalysisReport report;
  report.trace = s.rho.trace().real();

  EigResult eig = eig_hermitian(s.rho, tol);
  report.min_eigenvalue = eig.values.empty() ? 0.0 : eig.values.front();

  report.reduction_a = reduce(s, Side::A);
  report.reduction_b = reduce(s, Side::B);

  EigResult pt_eig = eig_hermitian(partial_transpose(s).rho, tol);
  report.pt_min_eigenvalue = pt_eig.values.empty() ? 0.0 : pt_eig.values.front();
  double sum_abs = 0.0;
  for (double w : pt_eig.values) sum_abs += std::abs(w);
  report.negativity = std::max(0.0, 0.5 * (sum_abs - 1.0));

  if (s.dim_a == s.dim_b) report.realignment_value = realignment_value(s);

  if (report.pt_min_eigenvalue < -tol)
    report.verdict = Verdict::NPT;
  else if (std::isfinite(report.realignment_value) && report.realignment_value > 1.0 + tol)
    report.verdict = Verdict::PPT_REALIGNMENT_POSITIVE;
  else
    report.verdict = Verdict::PPT_INCONCLUSIVE;
  return report;
}

}  // namespace qbec
