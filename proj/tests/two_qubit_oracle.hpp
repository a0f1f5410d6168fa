// Copyright 2026 The genent Authors
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

// Test-only oracle: the closed-form two-qubit entanglement of formation
// via the concurrence. Deliberately independent of the library's
// variational see-saw, which it validates.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

namespace genent_test {

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

inline double concurrence(const Eigen::MatrixXcd& rho) {
  Eigen::MatrixXcd yy = Eigen::MatrixXcd::Zero(4, 4);
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  const Eigen::MatrixXcd r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(r);
  std::vector<double> roots;
  for (int i = 0; i < 4; ++i)
    roots.push_back(std::sqrt(std::max(0.0, es.eigenvalues()[i].real())));
  std::sort(roots.begin(), roots.end(), std::greater<double>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

inline double wootters_eof(const Eigen::MatrixXcd& rho) {
  const double c = concurrence(rho);
  if (c <= 0.0) return 0.0;
  return binary_entropy((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

}  // namespace genent_test
