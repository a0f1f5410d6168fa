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

#include "genent/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace genent::sampler {

namespace {

Eigen::Index product(const std::vector<Eigen::Index>& dims) {
  Eigen::Index p = 1;
  for (const Eigen::Index d : dims) p *= d;
  return p;
}

}  // namespace

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, rng::CounterRng& gen) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = gen.complex_gaussian();
  return m;
}

Vector haar_pure(const std::vector<Eigen::Index>& dims, SeedSpec seed) {
  const Eigen::Index d = product(dims);
  if (d < 1 || dims.empty())
    throw std::invalid_argument("haar_pure: total dimension must be >= 1");
  rng::CounterRng gen(seed);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = gen.complex_gaussian();
  return v / v.norm();
}

states::Register haar_pure_register(const std::vector<Eigen::Index>& dims,
                                    SeedSpec seed) {
  return states::Register::pure(dims, haar_pure(dims, seed));
}

Matrix haar_isometry(Eigen::Index d, Eigen::Index s, rng::CounterRng& gen) {
  if (d < 1 || s < 1 || s > d)
    throw std::invalid_argument("haar_isometry: need 1 <= s <= d");
  const Matrix g = ginibre(d, s, gen);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, s);
  // Divide each column by the phase of the matching R diagonal entry so
  // the distribution is exactly Haar.
  for (Eigen::Index j = 0; j < s; ++j) {
    const std::complex<double> r = qr.matrixQR()(j, j);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(j) *= std::conj(r / mag);
  }
  return q;
}

Matrix haar_unitary(Eigen::Index d, SeedSpec seed) {
  if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be >= 1");
  rng::CounterRng gen(seed);
  return haar_isometry(d, d, gen);
}

Matrix random_subspace_ambient(Eigen::Index d, Eigen::Index s, SeedSpec seed) {
  if (s < 1 || s > d)
    throw std::invalid_argument("random_subspace: need 1 <= s <= dim");
  rng::CounterRng gen(seed);
  return haar_isometry(d, s, gen);
}

SubspaceIsometry random_subspace(Eigen::Index dim_a, Eigen::Index dim_b,
                                 Eigen::Index s, SeedSpec seed) {
  SubspaceIsometry v;
  v.dim_a = dim_a;
  v.dim_b = dim_b;
  v.columns = random_subspace_ambient(dim_a * dim_b, s, seed);
  return v;
}

Matrix random_mixed(Eigen::Index d, Eigen::Index s, SeedSpec seed) {
  if (d < 1 || s < 1)
    throw std::invalid_argument("random_mixed: dimensions must be >= 1");
  rng::CounterRng gen(seed);
  // Row-major d x s Ginibre: its normalized flattening is haar_pure on
  // (d, s), and G G^dagger / ||G||_F^2 is that state with the second
  // factor traced out.
  const Matrix g = ginibre(d, s, gen);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) / 2.0;
  return rho;
}

Matrix max_mixed_on_subspace(const SubspaceIsometry& v) {
  if (v.s() < 1)
    throw std::invalid_argument("max_mixed_on_subspace: empty isometry");
  Matrix rho = v.columns * v.columns.adjoint() / double(v.s());
  return (rho + rho.adjoint()) / 2.0;
}

}  // namespace genent::sampler
