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

#pragma once

#include <vector>

#include "genent/linalg.hpp"
#include "genent/rng.hpp"
#include "genent/states.hpp"

namespace genent::sampler {

using linalg::Matrix;
using linalg::Vector;
using rng::SeedSpec;

/// An s-dimensional subspace of a bipartite space, stored as an
/// orthonormal column family (V^dagger V = identity).
struct SubspaceIsometry {
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  Matrix columns;  // (dim_a * dim_b) x s

  Eigen::Index s() const { return columns.cols(); }
  Eigen::Index ambient_dim() const { return dim_a * dim_b; }
};

/// Matrix of independent standard complex Gaussians, filled row-major so
/// the flattened entries coincide with a haar_pure draw from the same
/// stream.
Matrix ginibre(Eigen::Index rows, Eigen::Index cols, rng::CounterRng& gen);

/// Uniform (unitarily invariant) pure state: normalized complex
/// Gaussian vector.
Vector haar_pure(const std::vector<Eigen::Index>& dims, SeedSpec seed);
states::Register haar_pure_register(const std::vector<Eigen::Index>& dims,
                                    SeedSpec seed);

/// First s columns of a Haar unitary on dimension d, drawn directly as
/// the QR factor of a d x s Ginibre matrix with the R-diagonal phase
/// correction (plain QR alone is not Haar).
Matrix haar_isometry(Eigen::Index d, Eigen::Index s, rng::CounterRng& gen);

/// Haar-distributed unitary on dimension d.
Matrix haar_unitary(Eigen::Index d, SeedSpec seed);

/// Uniform s-dimensional subspace of a space of dimension d.
Matrix random_subspace_ambient(Eigen::Index d, Eigen::Index s, SeedSpec seed);

/// Uniform s-dimensional subspace of A (x) B.
SubspaceIsometry random_subspace(Eigen::Index dim_a, Eigen::Index dim_b,
                                 Eigen::Index s, SeedSpec seed);

/// Rank-s random state on dimension d: the environment factor of a
/// uniform pure state on d*s traced out.
Matrix random_mixed(Eigen::Index d, Eigen::Index s, SeedSpec seed);

/// Maximally mixed state on the subspace: V V^dagger / s. Its spectrum
/// is flat, so its entropy is exactly log2 s.
Matrix max_mixed_on_subspace(const SubspaceIsometry& v);

}  // namespace genent::sampler
