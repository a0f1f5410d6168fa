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

#include <cstdint>
#include <string>
#include <vector>

#include "genent/measures.hpp"
#include "genent/sampler.hpp"
#include "genent/states.hpp"

namespace genent::protocols {

using linalg::Matrix;
using linalg::Vector;
using sampler::SubspaceIsometry;
using states::Register;

enum class CertifyMode { kNet, kMinimize };

struct CertifyOptions {
  CertifyMode mode = CertifyMode::kMinimize;
  double epsilon = 0.2;              // net resolution (net mode)
  std::uint64_t budget = 4'000'000;  // maximum net cardinality
  int restarts = 16;                 // minimization starts
  int iters = 400;                   // gradient steps per start
};

/// A subspace with a minimum-entanglement statement attached. Only
/// net enumeration yields certified=true: the estimate is then
/// (minimum over the net) - sqrt(8) log2(dA) * epsilon/2, a lower bound
/// on the true minimum. Minimization gives an upper bound instead.
struct CertifiedSubspace {
  SubspaceIsometry isometry;
  double min_entanglement_estimate = 0.0;
  std::string method;  // "net-enumeration" or "local-minimization"
  double net_epsilon = 0.0;
  std::uint64_t net_size = 0;
  int restarts = 0;
  bool certified = false;
};

CertifiedSubspace certify_subspace(const SubspaceIsometry& v,
                                   const CertifyOptions& opts,
                                   rng::SeedSpec seed);

/// Entropy of the A-reduction of unit(V c) together with its gradient
/// with respect to conj(c) (Wirtinger). Exposed for validation against
/// finite differences.
double subspace_entropy_and_gradient(const SubspaceIsometry& v,
                                     const Vector& coeffs, Vector* grad);

struct DistillationOutcome {
  std::vector<Eigen::Index> label;  // measured parties' outcomes, ascending
  Eigen::Index flat_label = 0;
  double probability = 0.0;
  Register post_state;  // pure state on the chosen pair
  double entanglement = 0.0;
};

struct DistillationReport {
  std::vector<DistillationOutcome> outcomes;
  std::int64_t omitted = 0;  // outcomes with probability < 1e-12
};

/// Every party outside the pair measures in its computational basis;
/// returns all outcome labels with Born probabilities, the renormalized
/// post-measurement pure states on the pair, and their entanglement.
DistillationReport multiparty_distill(const Register& phi,
                                      const states::Cut& pair);

/// The fixed maximally entangled state sum_i |i>|i> / sqrt(dA), with the
/// A basis embedded in the first dA basis vectors of B.
Register canonical_max_entangled(Eigen::Index dim_a, Eigen::Index dim_b);

/// Unitary U on B with (1 x U)|phi0> equal to the maximally entangled
/// state closest to the target. Requires the target to lie in span(V).
Matrix sdc_encode(const Register& phi_target, const CertifiedSubspace& v,
                  const Register& phi0);

struct SdcRunResult {
  Register received;
  double fidelity = 0.0;             // F(received, target)
  double success_probability = 0.0;  // weight of the target subspace
  bool projection_failed = false;    // substitute state was used
};

/// Full protocol round: encode, transmit B, project the received state
/// onto span(V) (substituting V's first column if the projection
/// annihilates the state). The output always lies in the subspace.
SdcRunResult sdc_run(const CertifiedSubspace& v, const Register& phi_target,
                     const Register& phi0);

struct LockingRow {
  std::int64_t trial = 0;
  double before_bits = 0.0;       // EoF upper bound of the sampled state
  double after_bits = 0.0;        // same after discarding qubits
  bool after_purity_separable = false;
  double gap = 0.0;               // before - after
};

struct LockingReport {
  std::vector<LockingRow> rows;
  Eigen::Index rank = 0;
  Eigen::Index traced = 0;
  double mean_gap = 0.0;
};

/// Samples rank-s random states on n+n qubits, reports the EoF upper
/// bound before and after tracing `traced` qubits off the A side.
/// rank = 0 picks max(1, floor(2^(2n) / (2n)^2)).
LockingReport locking_experiment(int n_qubits_per_side, int traced,
                                 std::int64_t trials, rng::SeedSpec seed,
                                 Eigen::Index rank = 0, int eof_restarts = 12,
                                 int eof_iters = 150);

}  // namespace genent::protocols
