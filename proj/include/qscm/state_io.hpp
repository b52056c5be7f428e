// Copyright 2026 The qscmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON exchange format for density matrices:
//   {"dim": n, "re": [[...], ...], "im": [[...], ...]}
// with row-major n x n arrays. Readers validate the state invariants.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qscm/state.hpp"

namespace qscm {

inline nlohmann::json to_json(const DensityMatrix& rho) {
  const Index n = rho.dim();
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Index i = 0; i < n; ++i) {
    nlohmann::json rrow = nlohmann::json::array(), irow = nlohmann::json::array();
    for (Index j = 0; j < n; ++j) {
      rrow.push_back(rho.matrix()(i, j).real());
      irow.push_back(rho.matrix()(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return {{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline DensityMatrix density_matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) fail(ErrorKind::Load, "state document must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) fail(ErrorKind::Load, "missing integer field 'dim'");
  const auto n = doc["dim"].get<long long>();
  if (n < 1) fail(ErrorKind::InvalidDimension, "'dim' must be positive");

  auto read_part = [&](const char* key, bool required) {
    CMatrix::RealScalar zero = 0.0;
    Eigen::MatrixXd part = Eigen::MatrixXd::Constant(n, n, zero);
    if (!doc.contains(key)) {
      if (required) fail(ErrorKind::Load, std::string("missing field '") + key + "'");
      return part;
    }
    const auto& rows = doc[key];
    if (!rows.is_array() || static_cast<long long>(rows.size()) != n)
      fail(ErrorKind::Load, std::string("field '") + key + "' must have " + std::to_string(n) + " rows");
    for (long long i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<long long>(row.size()) != n)
        fail(ErrorKind::Load, std::string("row ") + std::to_string(i) + " of '" + key + "' must have " +
                                  std::to_string(n) + " entries");
      for (long long j = 0; j < n; ++j) {
        const auto& v = row[static_cast<std::size_t>(j)];
        if (!v.is_number()) fail(ErrorKind::Load, std::string("non-numeric entry in '") + key + "'");
        part(i, j) = v.get<double>();
      }
    }
    return part;
  };

  const Eigen::MatrixXd re = read_part("re", true);
  const Eigen::MatrixXd im = read_part("im", false);
  CMatrix m(n, n);
  m.real() = re;
  m.imag() = im;
  return DensityMatrix::from_matrix(std::move(m));
}

inline DensityMatrix read_density_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Load, "cannot open state file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Load, "'" + path + "' is not valid JSON: " + e.what());
  }
  return density_matrix_from_json(doc);
}

inline void write_density_matrix(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Load, "cannot write state file '" + path + "'");
  out << to_json(rho).dump(2) << '\n';
}

}  // namespace qscm
