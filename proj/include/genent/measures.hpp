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

namespace genent::measures {

using linalg::Matrix;
using linalg::Vector;
using states::Cut;
using states::Register;

/// Von Neumann entropy in bits.
double entropy(const Matrix& rho);
double entropy(const Register& r);

/// Entropy of entanglement S(phi_X) of a pure state across a cut.
double pure_entanglement(const Register& r, const Cut& cut);

/// S(X) + S(X-bar) - S(total) across a cut.
double mutual_information(const Register& r, const Cut& cut);

/// S(rho_B) - S(rho_AB) for a two-party register; may be negative.
double coherent_information(const Register& r);

struct NptResult {
  bool npt;                // min partial-transpose eigenvalue < -1e-9
  double min_eigenvalue;
};
NptResult is_npt(const Register& r);

/// Purity-based separability certificate: true means Tr rho^2 <= 1/(d-1),
/// which certifies separability; false is inconclusive.
bool purity_separable(const Register& r);

/// Convex decomposition of a mixed state into pure members.
struct EnsembleDecomposition {
  Eigen::VectorXd weights;
  std::vector<Vector> members;  // unit vectors on the full space

  Matrix reconstruct() const;
};

struct EofBound {
  double bits;  // certified upper bound on the entanglement of formation
  EnsembleDecomposition decomposition;
  int restarts_used = 0;
  int iterations = 0;
};

/// Upper bound on the entanglement of formation of a two-party mixed
/// state: the best average member entanglement found by a see-saw over
/// decompositions of size rank..2*rank, mixed by random two-row unitary
/// rotations accepted when they lower the objective.
EofBound eof_upper_bound(const Register& r, int restarts, int iters,
                         rng::SeedSpec seed);

/// Rank-one POVM given by an orthonormal basis of A.
struct PovmOnA {
  std::vector<Matrix> elements;
};

struct OnewayBound {
  double bits;  // certified lower bound on the one-way information
  PovmOnA povm;
  int restarts_used = 0;
};

/// Lower bound on the maximum Holevo quantity of Bob's conditional
/// ensemble over rank-one measurements on A: best basis found by random
/// starts plus local rotations accepted when they raise the quantity.
/// Never exceeds S(rho_B).
OnewayBound oneway_info_lower_bound(const Register& r, int restarts,
                                    rng::SeedSpec seed, int iters = 200);

struct DistillWitness {
  bool found;         // a projected two-qubit block with negative PT exists
  double negativity;  // -lambda_min of the best block's partial transpose
  Matrix p_on_a;      // rank-2 projector on A
  Matrix q_on_b;      // rank-2 projector on B
};

/// Search over rank-2 projectors P on A and Q on B for a projected,
/// renormalized two-qubit block whose partial transpose is negative.
/// found=false is not a proof of undistillability.
DistillWitness one_copy_distillable_search(const Register& r, int restarts,
                                           rng::SeedSpec seed, int iters = 150);

struct ClosestMaxEntangled {
  Register state;   // maximally entangled partner built from the Schmidt bases
  double fidelity;  // (sum_i c_i / sqrt(dA))^2, optimal over all partners
};

/// Nearest maximally entangled state to a bipartite pure state with
/// dA <= dB, and the (optimal) fidelity with it.
ClosestMaxEntangled closest_max_entangled(const Register& r);

}  // namespace genent::measures
