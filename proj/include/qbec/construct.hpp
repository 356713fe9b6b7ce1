#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qbec/channels.hpp"
#include "qbec/complex_matrix.hpp"
#include "qbec/errors.hpp"
#include "qbec/linalg.hpp"
#include "qbec/states.hpp"

namespace qbec {

/// Outcome of filter_to_maximally_mixed.
struct FilterResult {
  BipartiteState sigma;    ///< filtered state; the chosen side reduces to I/rank
  std::size_t rank = 0;    ///< rank of the original reduction on the chosen side
  ComplexMatrix reduction; ///< that original reduction
  ComplexMatrix filter;    ///< local filter G: sigma = (G x I) rho (G x I)^dag (side A)
};

namespace detail {

/// Eigen-data of a reduction restricted to its support: kept eigenvalues
/// (ascending) and the matching eigenvector columns.
struct Support {
  std::vector<double> values;
  ComplexMatrix vectors;  // d x rank
};

inline Support reduction_support(const ComplexMatrix& reduction, double cutoff) {
  EigResult eig = eig_hermitian(reduction);
  const double lmax = eig.values.empty() ? 0.0 : std::max(eig.values.back(), 0.0);
  if (!eig.values.empty() && eig.values.front() < -kDefaultPsdTol * std::max(lmax, 1e-300))
    throw NegativeEigenvalue("reduction has a negative eigenvalue");
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < eig.values.size(); ++t)
    if (eig.values[t] > cutoff * lmax) kept.push_back(t);
  if (kept.empty()) throw RankZero("reduction has no support");

  Support out;
  out.vectors = ComplexMatrix(reduction.rows(), kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    out.values.push_back(eig.values[kept[c]]);
    for (std::size_t i = 0; i < reduction.rows(); ++i) out.vectors(i, c) = eig.vectors(i, kept[c]);
  }
  return out;
}

/// Conjugate rho by a local operator on one side: (G x I) rho (G x I)^dag or
/// (I x G) rho (I x G)^dag.
inline BipartiteState conjugate_side(const BipartiteState& s, const ComplexMatrix& g, Side side) {
  if (side == Side::A) {
    const ComplexMatrix op = tensor(g, ComplexMatrix::identity(s.dim_b));
    return BipartiteState{g.rows(), s.dim_b, op * s.rho * op.adjoint()};
  }
  const ComplexMatrix op = tensor(ComplexMatrix::identity(s.dim_a), g);
  return BipartiteState{s.dim_a, g.rows(), op * s.rho * op.adjoint()};
}

}  // namespace detail

/// Apply the invertible-on-support local filter that turns the chosen
/// reduction into I/rank. With reduction eigenpairs (w_t, u_t) above the
/// support cutoff, the filter is (rank * reduction)^{-1/2} when the reduction
/// has full rank (so the output keeps the original basis and dimensions), and
/// otherwise the rank x d compression with rows u_t^dag / sqrt(rank * w_t),
/// which also projects the state onto its support. Either way the filtered
/// state has unit trace and the chosen side maximally mixed, and local
/// filtering preserves both entanglement and the positivity of the partial
/// transpose.
inline FilterResult filter_to_maximally_mixed(const BipartiteState& s, Side side = Side::A,
                                              double cutoff = kDefaultSupportCutoff) {
  FilterResult out;
  out.reduction = reduce(s, side);
  const std::size_t d = out.reduction.rows();
  detail::Support supp = detail::reduction_support(out.reduction, cutoff);
  const std::size_t r = supp.values.size();
  out.rank = r;

  if (r == d) {
    ComplexMatrix scaled = out.reduction;
    scaled *= Complex(static_cast<double>(r), 0.0);
    out.filter = pinv_sqrt(scaled, cutoff);
  } else {
    out.filter = ComplexMatrix(r, d);
    for (std::size_t t = 0; t < r; ++t) {
      const double w = 1.0 / std::sqrt(static_cast<double>(r) * supp.values[t]);
      for (std::size_t i = 0; i < d; ++i) out.filter(t, i) = w * std::conj(supp.vectors(i, t));
    }
  }
  out.sigma = detail::conjugate_side(s, out.filter, side);
  return out;
}

namespace detail {

/// Restrict a state to the support of its reduction on one side, expressed in
/// the reduction eigenbasis. Identity (no basis change) when already full rank.
inline BipartiteState compress_to_support(const BipartiteState& s, Side side, double cutoff) {
  const ComplexMatrix reduction = reduce(s, side);
  Support supp = reduction_support(reduction, cutoff);
  if (supp.values.size() == reduction.rows()) return s;
  return conjugate_side(s, supp.vectors.adjoint(), side);
}

}  // namespace detail

/// Channel on subsystem A whose Choi state is the A-filtered version of rho.
///
/// The state is first restricted to the support of its A reduction (rank r),
/// giving a valid Choi state of a completely positive map raw: r -> dim_b
/// that is generally far from trace preserving. Composing raw with the
/// transpose of the single-Kraus filter map gamma = (r * rho_A)^{-1/2}
/// cancels the trace defect exactly: the composite is trace preserving and
/// its Choi state equals filter_to_maximally_mixed(rho, Side::A).sigma.
/// When rho is PPT, so is that Choi state, and a channel with a PPT Choi
/// state can never distribute distillable entanglement.
inline KrausChannel be_channel_a(const BipartiteState& s, double cutoff = kDefaultSupportCutoff) {
  const BipartiteState compressed = detail::compress_to_support(s, Side::A, cutoff);
  const std::size_t r = compressed.dim_a;
  const KrausChannel raw = channel_from_choi(ChoiState{r, compressed.dim_b, compressed.rho});

  ComplexMatrix scaled = reduce(compressed, Side::A);
  scaled *= Complex(static_cast<double>(r), 0.0);
  const KrausChannel gamma{r, r, {pinv_sqrt(scaled, cutoff)}};

  return compose(raw, transpose_map(gamma));
}

/// Mirror construction on subsystem B. The same raw map is read against the
/// other tensor factor, which swaps the roles of its input and output: both
/// factors of the composite appear transposed, and the resulting channel maps
/// the B support (rank r) back to dim_a. Its Choi state equals the B-filtered
/// state with the two subsystems exchanged.
inline KrausChannel be_channel_b(const BipartiteState& s, double cutoff = kDefaultSupportCutoff) {
  const BipartiteState compressed = detail::compress_to_support(s, Side::B, cutoff);
  const std::size_t m = compressed.dim_a;
  const std::size_t r = compressed.dim_b;
  const KrausChannel raw = channel_from_choi(ChoiState{m, r, compressed.rho});

  ComplexMatrix scaled = reduce(compressed, Side::B);
  scaled *= Complex(static_cast<double>(m), 0.0);
  const KrausChannel gamma{r, r, {pinv_sqrt(scaled, cutoff)}};

  return compose(transpose_map(raw), transpose_map(gamma));
}

}  // namespace qbec
