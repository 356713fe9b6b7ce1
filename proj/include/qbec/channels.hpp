#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qbec/complex_matrix.hpp"
#include "qbec/errors.hpp"
#include "qbec/linalg.hpp"
#include "qbec/states.hpp"

namespace qbec {

/// Eigenvalues of a Choi matrix below this fraction of the largest one are
/// dropped when extracting Kraus operators.
inline constexpr double kDefaultKrausCutoff = 1e-12;

/// Completely positive map from dim_in x dim_in to dim_out x dim_out
/// matrices, held as a list of Kraus operators (each dim_out x dim_in):
/// rho |-> sum_s V_s rho V_s^dag.
struct KrausChannel {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  std::vector<ComplexMatrix> kraus;
};

/// State on input-copy x output obtained by sending half of a maximally
/// entangled pair through a channel, normalized to unit trace. Channels and
/// Choi states carry the same information; every map-level identity in this
/// toolkit is checked at this level because Kraus lists are not unique.
struct ChoiState {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  ComplexMatrix rho;
};

inline BipartiteState as_bipartite(const ChoiState& c) {
  return BipartiteState{c.dim_in, c.dim_out, c.rho};
}

inline KrausChannel make_channel(std::size_t dim_in, std::size_t dim_out,
                                 std::vector<ComplexMatrix> kraus) {
  if (dim_in == 0 || dim_out == 0) throw InvalidDimension("make_channel: dimensions must be positive");
  if (kraus.empty()) throw ValidationError("make_channel: need at least one Kraus operator");
  for (const ComplexMatrix& v : kraus)
    if (v.rows() != dim_out || v.cols() != dim_in)
      throw DimensionMismatch("make_channel: Kraus operator is not dim_out x dim_in");
  return KrausChannel{dim_in, dim_out, std::move(kraus)};
}

inline KrausChannel identity_channel(std::size_t dim) {
  return KrausChannel{dim, dim, {ComplexMatrix::identity(dim)}};
}

/// Apply the channel to a dim_in x dim_in matrix.
inline ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.dim_in || rho.cols() != ch.dim_in)
    throw DimensionMismatch("apply: input matrix does not match dim_in");
  ComplexMatrix out(ch.dim_out, ch.dim_out);
  for (const ComplexMatrix& v : ch.kraus) out += v * rho * v.adjoint();
  return out;
}

/// Choi state of a channel. With m = dim_in and n = dim_out,
/// rho[(i n + k), (j n + l)] = (1/m) sum_s (V_s)_{k i} conj((V_s)_{l j}),
/// i.e. each Kraus operator contributes the rank-one term built from the
/// row-major flattening of its transpose.
inline ChoiState choi(const KrausChannel& ch) {
  const std::size_t m = ch.dim_in, n = ch.dim_out;
  ComplexMatrix rho(m * n, m * n);
  std::vector<Complex> w(m * n);
  for (const ComplexMatrix& v : ch.kraus) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < n; ++k) w[i * n + k] = v(k, i);
    for (std::size_t r = 0; r < m * n; ++r)
      for (std::size_t c = 0; c < m * n; ++c) rho(r, c) += w[r] * std::conj(w[c]);
  }
  rho *= Complex(1.0 / static_cast<double>(m), 0.0);
  return ChoiState{m, n, std::move(rho)};
}

/// Invert the Choi construction: eigendecompose the Choi matrix and turn each
/// retained eigenpair into one Kraus operator, (V_s)_{k j} =
/// sqrt(m p_s) psi_s[j n + k]. Eigenvalues at or below cutoff * lambda_max
/// are treated as zero; an eigenvalue below -tol * lambda_max means the
/// matrix is not a valid Choi state and raises NegativeEigenvalue.
inline KrausChannel channel_from_choi(const ChoiState& c, double cutoff = kDefaultKrausCutoff) {
  const std::size_t m = c.dim_in, n = c.dim_out;
  if (c.rho.rows() != m * n || c.rho.cols() != m * n)
    throw DimensionMismatch("channel_from_choi: matrix size does not match dim_in * dim_out");
  EigResult eig = eig_hermitian(c.rho);
  const double lmax = eig.values.empty() ? 0.0 : std::max(eig.values.back(), 0.0);
  if (!eig.values.empty() && eig.values.front() < -kDefaultPsdTol * std::max(lmax, 1e-300))
    throw NotPSD("channel_from_choi: Choi matrix has a negative eigenvalue");

  std::vector<ComplexMatrix> kraus;
  for (std::size_t s = 0; s < eig.values.size(); ++s) {
    if (eig.values[s] <= cutoff * lmax) continue;
    const double scale = std::sqrt(static_cast<double>(m) * eig.values[s]);
    ComplexMatrix v(n, m);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k) v(k, j) = scale * eig.vectors(j * n + k, s);
    kraus.push_back(std::move(v));
  }
  if (kraus.empty()) throw RankZero("channel_from_choi: Choi matrix has no support");
  return KrausChannel{m, n, std::move(kraus)};
}

/// The map rho |-> sum_s V_s^T rho conj(V_s). Composing a map with the
/// transpose of another is how the final construction cancels the filtering
/// distortion, so this deserves a named operation.
inline KrausChannel transpose_map(const KrausChannel& ch) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(ch.kraus.size());
  for (const ComplexMatrix& v : ch.kraus) kraus.push_back(v.transpose());
  return KrausChannel{ch.dim_out, ch.dim_in, std::move(kraus)};
}

/// Composition after . before, with Kraus list {W_i V_j}.
inline KrausChannel compose(const KrausChannel& after, const KrausChannel& before) {
  if (before.dim_out != after.dim_in)
    throw DimensionMismatch("compose: inner dimensions do not match");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(after.kraus.size() * before.kraus.size());
  for (const ComplexMatrix& w : after.kraus)
    for (const ComplexMatrix& v : before.kraus) kraus.push_back(w * v);
  return KrausChannel{before.dim_in, after.dim_out, std::move(kraus)};
}

/// Trace preservation as a yes/no flag: sum_s V_s^dag V_s = I within tol.
inline bool trace_preserving(const KrausChannel& ch, double tol = kDefaultHermTol) {
  ComplexMatrix acc(ch.dim_in, ch.dim_in);
  for (const ComplexMatrix& v : ch.kraus) acc += v.adjoint() * v;
  return max_abs_diff(acc, ComplexMatrix::identity(ch.dim_in)) <= tol;
}

struct ChannelVerification {
  bool cp = false;          ///< Choi matrix positive within tolerance
  bool tp = false;          ///< sum_s V_s^dag V_s equals the identity within tolerance
  double tp_defect = 0.0;   ///< max|sum_s V_s^dag V_s - I|
  double choi_min_eig = 0.0;
};

/// Check complete positivity and trace preservation. A Kraus-presented map is
/// CP by construction up to rounding, so cp failing here means the channel
/// was assembled from corrupted data.
inline ChannelVerification verify(const KrausChannel& ch, double tol = kDefaultHermTol) {
  ChannelVerification out;
  ComplexMatrix acc(ch.dim_in, ch.dim_in);
  for (const ComplexMatrix& v : ch.kraus) acc += v.adjoint() * v;
  out.tp_defect = max_abs_diff(acc, ComplexMatrix::identity(ch.dim_in));
  out.tp = out.tp_defect <= tol;
  EigResult eig = eig_hermitian(choi(ch).rho);
  out.choi_min_eig = eig.values.empty() ? 0.0 : eig.values.front();
  out.cp = out.choi_min_eig >= -tol;
  return out;
}

/// Random channel: Gaussian matrices G_s are whitened by S^{-1/2} with
/// S = sum_s G_s^dag G_s, which enforces trace preservation exactly (up to
/// rounding). Needs kraus_count * dim_out >= dim_in so S can have full rank.
inline KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out,
                                   std::size_t kraus_count, std::uint64_t seed = 42) {
  if (dim_in == 0 || dim_out == 0) throw InvalidDimension("random_channel: dimensions must be positive");
  if (kraus_count == 0) throw InvalidDimension("random_channel: need at least one Kraus operator");
  if (kraus_count * dim_out < dim_in)
    throw InvalidDimension("random_channel: kraus_count * dim_out must be at least dim_in");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<ComplexMatrix> raw;
  raw.reserve(kraus_count);
  ComplexMatrix s(dim_in, dim_in);
  for (std::size_t t = 0; t < kraus_count; ++t) {
    ComplexMatrix g(dim_out, dim_in);
    for (std::size_t i = 0; i < dim_out; ++i)
      for (std::size_t j = 0; j < dim_in; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    s += g.adjoint() * g;
    raw.push_back(std::move(g));
  }
  const ComplexMatrix white = pinv_sqrt(s);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(kraus_count);
  for (const ComplexMatrix& g : raw) kraus.push_back(g * white);
  return KrausChannel{dim_in, dim_out, std::move(kraus)};
}

}  // namespace qbec
