// Copyright 2026 The W1KP Kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "w1kp/errors.hpp"
#include "w1kp/io.hpp"
#include "w1kp/types.hpp"

namespace w1kp {

/// n x dims coordinates, row-major.
struct Coordinates {
  std::size_t n = 0;
  std::size_t dims = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t c) const { return values[i * dims + c]; }
};

/// Classical (Torgerson) scaling. B = -1/2 J D^2 J with J = I - 11^T/n;
/// coordinates are the top `dims` eigenvectors scaled by sqrt(max(lambda, 0)).
/// Each axis is flipped so its first non-negligible coordinate is positive.
inline Coordinates classical_mds(const DistanceMatrix& m, std::size_t dims) {
  const std::size_t n = m.size();
  detail::require(dims >= 1, "MDS needs at least one output dimension");
  detail::require(n >= dims + 1, "MDS into " + std::to_string(dims) + " dimensions needs at least " +
                                     std::to_string(dims + 1) + " points");

  Eigen::MatrixXd b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = m(i, j);
      b(i, j) = d * d;
    }
  const Eigen::VectorXd row_mean = b.rowwise().mean();
  const double grand_mean = row_mean.mean();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      b(i, j) = -0.5 * (b(i, j) - row_mean(i) - row_mean(j) + grand_mean);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) throw ValidationError("MDS eigendecomposition failed");
  const auto& eigenvalues = solver.eigenvalues();   // ascending
  const auto& eigenvectors = solver.eigenvectors();

  Coordinates out{n, dims, std::vector<double>(n * dims, 0.0)};
  for (std::size_t c = 0; c < dims; ++c) {
    const auto col = static_cast<Eigen::Index>(n - 1 - c);
    const double scale = std::sqrt(std::max(eigenvalues(col), 0.0));
    Eigen::VectorXd v = eigenvectors.col(col);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      out.values[i * dims + c] = scale * v(static_cast<Eigen::Index>(i));
  }
  return out;
}

inline std::string coordinates_to_csv(const Coordinates& coords,
                                      const std::vector<std::string>& ids) {
  detail::require(ids.size() == coords.n, "id count does not match MDS rows");
  std::string out = "id";
  for (std::size_t c = 0; c < coords.dims; ++c) out += ",x" + std::to_string(c);
  out += '\n';
  for (std::size_t i = 0; i < coords.n; ++i) {
    out += ids[i];
    for (std::size_t c = 0; c < coords.dims; ++c) {
      out += ',';
      out += detail::format_double(coords(i, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace w1kp
