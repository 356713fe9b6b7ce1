#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "qbec/channels.hpp"
#include "qbec/complex_matrix.hpp"
#include "qbec/errors.hpp"
#include "qbec/states.hpp"

namespace qbec {

/// On-disk format. A complex matrix is an array of rows, each entry a
/// two-element [re, im] array. States carry {"kind": "state", "dim_a",
/// "dim_b", "matrix"}; channels carry {"kind": "channel", "dim_in",
/// "dim_out", "kraus": [matrix, ...]}. Doubles are written with enough
/// digits to round-trip bit-exactly.

namespace detail {

/// JSON integers arrive as unsigned or signed depending on how the document
/// was produced; a dimension is any integer value that is not negative.
inline bool is_dimension(const nlohmann::json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
}

}  // namespace detail

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix: expected non-empty rows");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix: rows have inconsistent length");
    for (std::size_t c = 0; c < cols; ++c) {
      const nlohmann::json& entry = j[i][c];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        throw ParseError("matrix: each entry must be a [re, im] pair of numbers");
      m(i, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

inline nlohmann::json state_to_json(const BipartiteState& s) {
  return nlohmann::json{{"kind", "state"},
                        {"dim_a", s.dim_a},
                        {"dim_b", s.dim_b},
                        {"matrix", matrix_to_json(s.rho)}};
}

inline BipartiteState state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("kind", "") != "state")
    throw ParseError("state: expected an object with kind \"state\"");
  if (!j.contains("dim_a") || !j.contains("dim_b") || !j.contains("matrix"))
    throw ParseError("state: missing dim_a, dim_b or matrix");
  if (!detail::is_dimension(j["dim_a"]) || !detail::is_dimension(j["dim_b"]))
    throw ParseError("state: dim_a and dim_b must be non-negative integers");
  const std::size_t dim_a = j["dim_a"].get<std::size_t>();
  const std::size_t dim_b = j["dim_b"].get<std::size_t>();
  ComplexMatrix m = matrix_from_json(j["matrix"]);
  if (dim_a == 0 || dim_b == 0 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw ParseError("state: matrix size does not match dim_a * dim_b");
  return BipartiteState{dim_a, dim_b, std::move(m)};
}

inline nlohmann::json channel_to_json(const KrausChannel& ch) {
  nlohmann::json kraus = nlohmann::json::array();
  for (const ComplexMatrix& v : ch.kraus) kraus.push_back(matrix_to_json(v));
  return nlohmann::json{{"kind", "channel"},
                        {"dim_in", ch.dim_in},
                        {"dim_out", ch.dim_out},
                        {"kraus", std::move(kraus)}};
}

inline KrausChannel channel_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("kind", "") != "channel")
    throw ParseError("channel: expected an object with kind \"channel\"");
  if (!j.contains("dim_in") || !j.contains("dim_out") || !j.contains("kraus"))
    throw ParseError("channel: missing dim_in, dim_out or kraus");
  if (!detail::is_dimension(j["dim_in"]) || !detail::is_dimension(j["dim_out"]))
    throw ParseError("channel: dim_in and dim_out must be non-negative integers");
  const std::size_t dim_in = j["dim_in"].get<std::size_t>();
  const std::size_t dim_out = j["dim_out"].get<std::size_t>();
  if (dim_in == 0 || dim_out == 0) throw ParseError("channel: dimensions must be positive");
  if (!j["kraus"].is_array() || j["kraus"].empty())
    throw ParseError("channel: kraus must be a non-empty array of matrices");
  std::vector<ComplexMatrix> kraus;
  for (const nlohmann::json& vj : j["kraus"]) {
    ComplexMatrix v = matrix_from_json(vj);
    if (v.rows() != dim_out || v.cols() != dim_in)
      throw ParseError("channel: Kraus operator is not dim_out x dim_in");
    kraus.push_back(std::move(v));
  }
  return KrausChannel{dim_in, dim_out, std::move(kraus)};
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw ParseError("failed while writing: " + path);
}

inline BipartiteState read_state(const std::string& path) { return state_from_json(read_json_file(path)); }
inline void write_state(const std::string& path, const BipartiteState& s) { write_json_file(path, state_to_json(s)); }
inline KrausChannel read_channel(const std::string& path) { return channel_from_json(read_json_file(path)); }
inline void write_channel(const std::string& path, const KrausChannel& ch) { write_json_file(path, channel_to_json(ch)); }

/// Semantic checks beyond shape: a state file must hold a Hermitian,
/// positive-semidefinite matrix of unit trace. Throws ValidationError.
inline void validate_state(const BipartiteState& s, double tol = kDefaultHermTol) {
  if (!s.rho.is_hermitian(tol)) throw ValidationError("state matrix is not Hermitian");
  EigResult eig = eig_hermitian(s.rho, tol);
  const double lmax = eig.values.empty() ? 0.0 : std::max(eig.values.back(), 0.0);
  if (!eig.values.empty() && eig.values.front() < -kDefaultPsdTol * std::max(lmax, 1e-300))
    throw ValidationError("state matrix has a negative eigenvalue");
  if (std::abs(s.rho.trace().real() - 1.0) > 1e-10 || std::abs(s.rho.trace().imag()) > 1e-10)
    throw ValidationError("state matrix does not have unit trace");
}

inline nlohmann::json report_to_json(const AnalysisReport& r) {
  nlohmann::json j{{"trace", r.trace},
                   {"min_eigenvalue", r.min_eigenvalue},
                   {"reduction_a", matrix_to_json(r.reduction_a)},
                   {"reduction_b", matrix_to_json(r.reduction_b)},
                   {"pt_min_eigenvalue", r.pt_min_eigenvalue},
                   {"negativity", r.negativity},
                   {"verdict", to_string(r.verdict)}};
  if (std::isfinite(r.realignment_value))
    j["realignment_value"] = r.realignment_value;
  else
    j["realignment_value"] = nullptr;
  return j;
}

}  // namespace qbec
