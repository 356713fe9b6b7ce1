#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "qbec/families.hpp"
#include "qbec/io.hpp"
#include "qbec/qbec.hpp"

#include "test_support.hpp"

using namespace qbec;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qbec_io_" + name)).string();
}

bool bit_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).real() != b(i, j).real() || a(i, j).imag() != b(i, j).imag()) return false;
  return true;
}

}  // namespace

TEST_CASE("matrix JSON round trip preserves every bit") {
  ComplexMatrix m(3, 2);
  m(0, 0) = Complex(1.0 / 3.0, -std::sqrt(2.0));
  m(0, 1) = Complex(0.1, 1e-300);
  m(1, 0) = Complex(-4.0 * std::atan(1.0), 0.0);
  m(1, 1) = Complex(0.0, -0.0);
  m(2, 0) = Complex(6.02214076e23, 1.0 / 7.0);
  m(2, 1) = Complex(-1e-17, 2.0 / 3.0);
  CHECK(bit_equal(matrix_from_json(matrix_to_json(m)), m));

  std::mt19937_64 rng(12345);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix r = testutil::random_matrix(4, 5, rng);
    CHECK(bit_equal(matrix_from_json(matrix_to_json(r)), r));
  }
}

TEST_CASE("state files round trip through disk bit-exactly") {
  const std::string path = temp_path("state.json");
  const BipartiteState s = rho_a(0.37);
  write_state(path, s);
  const BipartiteState back = read_state(path);
  CHECK(back.dim_a == 3);
  CHECK(back.dim_b == 3);
  CHECK(bit_equal(back.rho, s.rho));
  std::filesystem::remove(path);
}

TEST_CASE("channel files round trip through disk bit-exactly") {
  const std::string path = temp_path("channel.json");
  const KrausChannel ch = random_channel(3, 2, 5, 99);
  write_channel(path, ch);
  const KrausChannel back = read_channel(path);
  CHECK(back.dim_in == 3);
  CHECK(back.dim_out == 2);
  REQUIRE(back.kraus.size() == ch.kraus.size());
  for (std::size_t k = 0; k < ch.kraus.size(); ++k) CHECK(bit_equal(back.kraus[k], ch.kraus[k]));
  std::filesystem::remove(path);
}

TEST_CASE("malformed matrices are rejected with a diagnostic") {
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::object()), ParseError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::array()), ParseError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"([[[0,0]],[[0,0],[1,0]]])")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"([[[0,0,0]]])")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"([[["x",0]]])")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"([[0.5]])")), ParseError);
}

TEST_CASE("malformed states are rejected with a diagnostic") {
  const nlohmann::json good = state_to_json(max_entangled(2));
  CHECK(state_from_json(good).dim_a == 2);

  nlohmann::json wrong_kind = good;
  wrong_kind["kind"] = "channel";
  CHECK_THROWS_AS(state_from_json(wrong_kind), ParseError);

  nlohmann::json missing = good;
  missing.erase("matrix");
  CHECK_THROWS_AS(state_from_json(missing), ParseError);

  nlohmann::json bad_dim = good;
  bad_dim["dim_a"] = "two";
  CHECK_THROWS_WITH(state_from_json(bad_dim), Catch::Matchers::ContainsSubstring("dim_a"));

  nlohmann::json negative_dim = good;
  negative_dim["dim_a"] = -2;
  CHECK_THROWS_AS(state_from_json(negative_dim), ParseError);

  nlohmann::json mismatched = good;
  mismatched["dim_b"] = 3;
  CHECK_THROWS_WITH(state_from_json(mismatched),
                    Catch::Matchers::ContainsSubstring("does not match"));
}

TEST_CASE("malformed channels are rejected with a diagnostic") {
  const nlohmann::json good = channel_to_json(identity_channel(2));
  CHECK(channel_from_json(good).dim_out == 2);

  nlohmann::json wrong_kind = good;
  wrong_kind["kind"] = "state";
  CHECK_THROWS_AS(channel_from_json(wrong_kind), ParseError);

  nlohmann::json empty_kraus = good;
  empty_kraus["kraus"] = nlohmann::json::array();
  CHECK_THROWS_AS(channel_from_json(empty_kraus), ParseError);

  nlohmann::json bad_shape = good;
  bad_shape["dim_out"] = 3;
  CHECK_THROWS_WITH(channel_from_json(bad_shape),
                    Catch::Matchers::ContainsSubstring("dim_out x dim_in"));

  nlohmann::json no_dim = good;
  no_dim.erase("dim_in");
  CHECK_THROWS_AS(channel_from_json(no_dim), ParseError);
}

TEST_CASE("unreadable or invalid files are reported as parse failures") {
  CHECK_THROWS_AS(read_json_file(temp_path("does_not_exist.json")), ParseError);

  const std::string path = temp_path("garbage.json");
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(read_json_file(path), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("validate_state accepts real states and rejects broken ones") {
  CHECK_NOTHROW(validate_state(max_entangled(3)));
  CHECK_NOTHROW(validate_state(rho_a(0.8)));
  CHECK_NOTHROW(validate_state(sigma_alpha(4.2)));

  BipartiteState skewed = max_entangled(2);
  skewed.rho(0, 3) += Complex(0.1, 0.0);  // breaks Hermitian symmetry
  CHECK_THROWS_WITH(validate_state(skewed), Catch::Matchers::ContainsSubstring("Hermitian"));

  BipartiteState indefinite{1, 2, ComplexMatrix::diagonal(std::vector<double>{1.5, -0.5})};
  CHECK_THROWS_WITH(validate_state(indefinite),
                    Catch::Matchers::ContainsSubstring("negative eigenvalue"));

  BipartiteState off_trace{1, 2, ComplexMatrix::diagonal(std::vector<double>{0.5, 0.4})};
  CHECK_THROWS_WITH(validate_state(off_trace), Catch::Matchers::ContainsSubstring("unit trace"));
}

TEST_CASE("analysis reports serialize with null for an unavailable witness") {
  const nlohmann::json square = report_to_json(analyze(max_entangled(2)));
  CHECK(square["verdict"] == "NPT");
  CHECK(square["negativity"].get<double>() == Catch::Approx(0.5).margin(1e-10));
  CHECK(square["realignment_value"].get<double>() == Catch::Approx(2.0).margin(1e-10));

  const nlohmann::json rect = report_to_json(analyze(random_state(2, 3, 6, 7)));
  CHECK(rect["realignment_value"].is_null());
  CHECK(rect["trace"].get<double>() == Catch::Approx(1.0).margin(1e-12));
}