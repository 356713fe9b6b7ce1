#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qbec/channels.hpp"
#include "qbec/complex_matrix.hpp"
#include "qbec/errors.hpp"
#include "qbec/states.hpp"

namespace qbec {

/// One-parameter family of 3 x 3 states, defined for 2 <= alpha <= 5:
///
///   sigma_alpha = (2/7) P_+ + (alpha/7) s_+ + ((5 - alpha)/7) s_-
///
/// where P_+ is the maximally entangled state, s_+ mixes |01>, |12>, |20>
/// uniformly and s_- mixes |10>, |21>, |02>. Both reductions are I/3 for
/// every alpha. The family walks through all three entanglement classes:
/// separable for alpha in [2, 3], entangled but PPT for alpha in (3, 4]
/// (detectable by realignment), and NPT for alpha in (4, 5]. Exchanging the
/// subsystems maps sigma_alpha to sigma_{5-alpha}.
inline BipartiteState sigma_alpha(double alpha) {
  if (!(alpha >= 2.0 && alpha <= 5.0)) throw OutOfRange("sigma_alpha: alpha must lie in [2, 5]");
  ComplexMatrix rho(9, 9);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) rho(i * 3 + i, j * 3 + j) = 2.0 / 21.0;  // P_+ part
    const std::size_t up = (i + 1) % 3, dn = (i + 2) % 3;
    rho(i * 3 + up, i * 3 + up) += alpha / 21.0;          // s_+ part
    rho(i * 3 + dn, i * 3 + dn) += (5.0 - alpha) / 21.0;  // s_- part
  }
  return BipartiteState{3, 3, std::move(rho)};
}

/// Channel whose Choi state is exactly sigma_alpha. The Kraus list mixes the
/// identity with the two cyclic-shift families of raising and lowering
/// operators |k+1><k| and |k-1><k| (indices mod 3); the three branch weights
/// 2/7, alpha/7 and (5 - alpha)/7 sum to one, so the channel is trace
/// preserving for every alpha in [2, 5].
inline KrausChannel channel_alpha(double alpha) {
  if (!(alpha >= 2.0 && alpha <= 5.0)) throw OutOfRange("channel_alpha: alpha must lie in [2, 5]");
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix id = ComplexMatrix::identity(3);
  id *= Complex(std::sqrt(2.0 / 7.0), 0.0);
  kraus.push_back(std::move(id));
  for (std::size_t k = 0; k < 3; ++k) {
    if (alpha > 0.0) {
      ComplexMatrix up(3, 3);
      up((k + 1) % 3, k) = std::sqrt(alpha / 7.0);
      kraus.push_back(std::move(up));
    }
    if (alpha < 5.0) {
      ComplexMatrix dn(3, 3);
      dn((k + 2) % 3, k) = std::sqrt((5.0 - alpha) / 7.0);
      kraus.push_back(std::move(dn));
    }
  }
  return KrausChannel{3, 3, std::move(kraus)};
}

/// One-parameter family of 3 x 3 states, defined for 0 < a < 1. Each state is
/// PPT yet entangled (the realignment value exceeds 1 on the whole range), and
/// its A reduction diag(3a, 3a, 1 + 2a) / (8a + 1) is deliberately not
/// maximally mixed, which makes the family a good stress test for the
/// filtering step of the channel construction.
inline BipartiteState rho_a(double a) {
  if (!(a > 0.0 && a < 1.0)) throw OutOfRange("rho_a: a must lie in (0, 1)");
  const double norm = 1.0 / (8.0 * a + 1.0);
  const double edge = 0.5 * (1.0 + a);
  const double root = 0.5 * std::sqrt(1.0 - a * a);
  ComplexMatrix rho(9, 9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) rho(i * 3 + k, i * 3 + k) = a;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) rho(i * 3 + i, j * 3 + j) = a;
  rho(6, 6) = edge;
  rho(8, 8) = edge;
  rho(6, 8) = root;
  rho(8, 6) = root;
  rho *= Complex(norm, 0.0);
  return BipartiteState{3, 3, std::move(rho)};
}

/// Hand-derived Kraus presentation of be_channel_a(rho_a(a)). The first
/// operator keeps each basis state in place with amplitude 1/sqrt(3) on |0>
/// and |1> and sqrt(a / (2a + 1)) on |2>; five single-entry operators scatter
/// the basis states across the remaining levels with matching weights; the
/// last operator sends |2> coherently to (sqrt(1 + a) |0> + sqrt(1 - a) |2>)
/// / sqrt(2 (2a + 1)). The branch weights sum to one per column, so the map
/// is trace preserving by construction; its Choi state reproduces the
/// A-filtered rho_a. Useful as an independent cross-check of the numerical
/// pipeline.
inline KrausChannel channel_a_closed_form(double a) {
  if (!(a > 0.0 && a < 1.0)) throw OutOfRange("channel_a_closed_form: a must lie in (0, 1)");
  const double third = 1.0 / std::sqrt(3.0);
  const double keep2 = std::sqrt(a / (2.0 * a + 1.0));
  std::vector<ComplexMatrix> kraus;

  ComplexMatrix stay(3, 3);
  stay(0, 0) = third;
  stay(1, 1) = third;
  stay(2, 2) = keep2;
  kraus.push_back(std::move(stay));

  const std::size_t hops[5][2] = {{1, 0}, {2, 0}, {0, 1}, {2, 1}, {1, 2}};
  for (const auto& hop : hops) {
    ComplexMatrix v(3, 3);
    v(hop[0], hop[1]) = (hop[1] == 2) ? keep2 : third;
    kraus.push_back(std::move(v));
  }

  ComplexMatrix coherent(3, 3);
  coherent(0, 2) = std::sqrt((1.0 + a) / (2.0 * (2.0 * a + 1.0)));
  coherent(2, 2) = std::sqrt((1.0 - a) / (2.0 * (2.0 * a + 1.0)));
  kraus.push_back(std::move(coherent));

  return KrausChannel{3, 3, std::move(kraus)};
}

}  // namespace qbec
