#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qbec/channels.hpp"
#include "qbec/families.hpp"
#include "test_support.hpp"

using namespace qbec;

TEST_CASE("apply on identity, projective, and unital channels") {
  std::mt19937_64 rng(40);
  const ComplexMatrix x = testutil::random_hermitian(3, rng);
  CHECK(max_abs_diff(apply(identity_channel(3), x), x) <= 1e-14);

  ComplexMatrix v(2, 2);
  v(0, 0) = 1.0;  // single Kraus |0><0|
  const KrausChannel proj{2, 2, {v}};
  ComplexMatrix expected(2, 2);
  expected(0, 0) = 1.0;
  CHECK(max_abs_diff(apply(proj, ComplexMatrix::identity(2)), expected) <= 1e-14);

  const ComplexMatrix third = ComplexMatrix::identity(3) * Complex(1.0 / 3.0, 0.0);
  CHECK(max_abs_diff(apply(channel_alpha(4.0), third), third) <= 1e-14);

  CHECK_THROWS_AS(apply(identity_channel(3), ComplexMatrix::identity(2)), DimensionMismatch);
}

TEST_CASE("apply preserves positivity on random PSD inputs") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const KrausChannel ch = random_channel(3, 2 + trial % 3, 2, rng());
    ComplexMatrix rho = testutil::random_psd(3, 1 + trial % 3, rng);
    rho *= Complex(1.0 / rho.trace().real(), 0.0);
    const ComplexMatrix out = apply(ch, rho);
    CHECK(eig_hermitian(out).values.front() >= -1e-10);
    CHECK(out.trace().real() == Catch::Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("choi of the identity channel is the maximally entangled state") {
  CHECK(max_abs_diff(choi(identity_channel(2)).rho, max_entangled(2).rho) <= 1e-14);
}

TEST_CASE("choi of a single-Kraus channel is the flattened rank-one projector") {
  std::mt19937_64 rng(42);
  const std::size_t m = 3, n = 2;
  const ComplexMatrix v = testutil::random_matrix(n, m, rng);
  const ChoiState c = choi(KrausChannel{m, n, {v}});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          const Complex expected = v(k, i) * std::conj(v(l, j)) / static_cast<double>(m);
          CHECK(std::abs(c.rho(i * n + k, j * n + l) - expected) <= 1e-14);
        }
}

TEST_CASE("choi trace equals 1 exactly for trace-preserving channels") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausChannel ch = random_channel(3, 3, 2, rng());
    CHECK(choi(ch).rho.trace().real() == Catch::Approx(1.0).margin(1e-12));
  }
  ComplexMatrix v(2, 2);
  v(0, 0) = 1.0;  // lossy map: not trace preserving
  CHECK(choi(KrausChannel{2, 2, {v}}).rho.trace().real() == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("channel_from_choi inverts choi across random channels") {
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<std::size_t> dim(2, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    const std::size_t k = (m + n - 1) / n + trial % 3;
    const KrausChannel ch = random_channel(m, n, k, rng());
    const ChoiState c = choi(ch);
    const KrausChannel back = channel_from_choi(c);
    REQUIRE(max_abs_diff(choi(back).rho, c.rho) <= 1e-10);
  }
}

TEST_CASE("channel_from_choi on the singlet recovers the identity channel") {
  const ChoiState c{2, 2, max_entangled(2).rho};
  const KrausChannel ch = channel_from_choi(c);
  REQUIRE(ch.kraus.size() == 1);
  // Single Kraus operator is the identity up to a global phase.
  const ComplexMatrix& v = ch.kraus[0];
  CHECK(max_abs_diff(v * v.adjoint(), ComplexMatrix::identity(2)) <= 1e-10);
  CHECK(std::abs(std::abs(v.trace()) - 2.0) <= 1e-10);
}

TEST_CASE("channel_from_choi keeps the Kraus list minimal") {
  const KrausChannel ch = channel_from_choi(ChoiState{3, 3, sigma_alpha(3.5).rho});
  CHECK(ch.kraus.size() == 7);  // rank of sigma_alpha(3.5)
  CHECK(max_abs_diff(choi(ch).rho, sigma_alpha(3.5).rho) <= 1e-12);
}

TEST_CASE("channel_from_choi rejects non-positive input") {
  const ChoiState bad{2, 2, partial_transpose(max_entangled(2)).rho};
  CHECK_THROWS_AS(channel_from_choi(bad), NotPSD);
}

TEST_CASE("transpose_map transposes each Kraus operator") {
  ComplexMatrix v(2, 2);
  v(0, 1) = 1.0;  // |0><1|
  const KrausChannel t = transpose_map(KrausChannel{2, 2, {v}});
  CHECK(t.kraus[0](1, 0) == Complex(1.0, 0.0));
  CHECK(t.kraus[0](0, 1) == Complex(0.0, 0.0));

  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 10; ++trial) {
    const KrausChannel ch = random_channel(3, 2, 2, rng());
    const KrausChannel twice = transpose_map(transpose_map(ch));
    CHECK(max_abs_diff(choi(twice).rho, choi(ch).rho) <= 1e-13);
  }
}

TEST_CASE("transpose_map satisfies the element exchange identity") {
  // <k| T(E_ij) |l> = <i| ch(E_kl) |j> with E the matrix units of the
  // respective input spaces.
  std::mt19937_64 rng(46);
  const std::size_t m = 3, n = 2;
  const KrausChannel ch = random_channel(m, n, 2, rng());
  const KrausChannel t = transpose_map(ch);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexMatrix unit_n(n, n);
      unit_n(i, j) = 1.0;
      const ComplexMatrix lhs = apply(t, unit_n);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          ComplexMatrix unit_m(m, m);
          unit_m(k, l) = 1.0;
          const ComplexMatrix rhs = apply(ch, unit_m);
          CHECK(std::abs(lhs(k, l) - rhs(i, j)) <= 1e-12);
        }
    }
}

TEST_CASE("compose concatenates channels") {
  std::mt19937_64 rng(47);
  const KrausChannel f = random_channel(3, 2, 2, rng());
  const KrausChannel g = random_channel(4, 3, 2, rng());
  CHECK(max_abs_diff(choi(compose(identity_channel(2), f)).rho, choi(f).rho) <= 1e-13);
  CHECK(max_abs_diff(choi(compose(f, identity_channel(3))).rho, choi(f).rho) <= 1e-13);

  const ComplexMatrix x = testutil::random_hermitian(4, rng);
  CHECK(max_abs_diff(apply(compose(f, g), x), apply(f, apply(g, x))) <= 1e-12);

  const KrausChannel h = random_channel(2, 4, 3, rng());
  const KrausChannel left = compose(compose(f, g), h);
  const KrausChannel right = compose(f, compose(g, h));
  CHECK(max_abs_diff(choi(left).rho, choi(right).rho) <= 1e-12);

  CHECK_THROWS_AS(compose(f, f), DimensionMismatch);
}

TEST_CASE("verify reports trace preservation accurately") {
  const ChannelVerification good = verify(channel_alpha(3.7));
  CHECK(good.cp);
  CHECK(good.tp);
  CHECK(good.tp_defect <= 1e-12);
  CHECK(trace_preserving(channel_alpha(3.7)));

  // The map extracted straight from rho_a's Choi data is CP but visibly far
  // from trace preserving: its defect is 2(1-a)/(8a+1).
  const KrausChannel raw = channel_from_choi(ChoiState{3, 3, rho_a(0.5).rho});
  const ChannelVerification bad = verify(raw);
  CHECK(bad.cp);
  CHECK_FALSE(bad.tp);
  CHECK(bad.tp_defect == Catch::Approx(0.2).margin(1e-10));
  CHECK_FALSE(trace_preserving(raw));
}

TEST_CASE("choi of a trace-preserving channel has maximally mixed input reduction") {
  std::mt19937_64 rng(48);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + trial % 3;
    const KrausChannel ch = random_channel(m, 2 + (trial / 3) % 3, 2, rng());
    const ComplexMatrix red = reduce(as_bipartite(choi(ch)), Side::A);
    CHECK(max_abs_diff(red, ComplexMatrix::identity(m) * Complex(1.0 / m, 0.0)) <= 1e-10);
  }
}

TEST_CASE("random_channel produces deterministic trace-preserving channels") {
  const KrausChannel a = random_channel(3, 2, 3, 2024);
  const KrausChannel b = random_channel(3, 2, 3, 2024);
  REQUIRE(a.kraus.size() == b.kraus.size());
  for (std::size_t i = 0; i < a.kraus.size(); ++i)
    CHECK(max_abs_diff(a.kraus[i], b.kraus[i]) == 0.0);
  CHECK(verify(a).tp_defect <= 1e-12);

  CHECK_THROWS_AS(random_channel(5, 2, 1, 1), InvalidDimension);
}

TEST_CASE("make_channel validates shapes") {
  CHECK_THROWS_AS(make_channel(2, 2, {}), ValidationError);
  CHECK_THROWS_AS(make_channel(2, 3, {ComplexMatrix::identity(2)}), DimensionMismatch);
  CHECK_NOTHROW(make_channel(2, 2, {ComplexMatrix::identity(2)}));
}
