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

#include <nlohmann/json_fwd.hpp>
#include <utility>
#include <vector>

#include "genent/linalg.hpp"

namespace genent::states {

using linalg::Matrix;
using linalg::Vector;

/// A pure or mixed state over an explicit list of subsystem dimensions.
/// Global indices are row-major with party 0 slowest:
/// index = ((i_0 * d_1 + i_1) * d_2 + i_2) ...
class Register {
 public:
  /// Empty placeholder; use the pure/mixed factories to build real states.
  Register() = default;

  static Register pure(std::vector<Eigen::Index> dims, Vector amplitudes);
  static Register mixed(std::vector<Eigen::Index> dims, Matrix density);

  const std::vector<Eigen::Index>& dims() const { return dims_; }
  Eigen::Index num_parties() const {
    return static_cast<Eigen::Index>(dims_.size());
  }
  Eigen::Index total_dim() const;
  bool is_pure() const { return pure_; }

  /// Amplitude vector; throws for mixed payloads.
  const Vector& amplitudes() const;
  /// Stored density matrix; throws for pure payloads (see to_density).
  const Matrix& density_matrix() const;
  /// Density form, promoting a pure payload to |v><v|.
  Matrix to_density() const;
  /// Same state with the payload promoted to density form.
  Register as_mixed() const;
  /// Same payload regrouped under a different dimension list.
  Register regrouped(std::vector<Eigen::Index> new_dims) const;

 private:
  std::vector<Eigen::Index> dims_;
  bool pure_ = true;
  Vector amplitudes_;
  Matrix density_;
};

/// A bipartite cut: the parties in X against the implied complement.
struct Cut {
  std::vector<int> parties;
};

/// Reduction to the kept parties (ascending party order preserved).
/// Pure payloads reduce through the reshaped amplitude matrix and never
/// materialize the global projector.
Register partial_trace(const Register& r, const std::vector<int>& keep);

/// Transpose of one party's indices on a density payload.
/// Pure payloads are rejected: convert with as_mixed() first.
Matrix partial_transpose(const Register& r, int part);

/// Applies per-party projectors (identity entries allowed), renormalizes,
/// and reports the projection probability Tr((P_0 x P_1 x ...) rho).
/// Throws when the probability falls below 1e-12.
std::pair<Register, double> project_renormalize(
    const Register& r, const std::vector<Matrix>& projectors);

/// Tr rho^2; equals 1 for pure payloads.
double purity(const Register& r);

/// (1 x ... x U x ... x 1) acting on one party.
Register apply_local_unitary(const Register& r, int part, const Matrix& u);

/// One party's slice of an amplitude vector rewritten in place:
/// out[.., k, ..] = sum_l M(k, l) in[.., l, ..].
Vector apply_local_operator(const Vector& v,
                            const std::vector<Eigen::Index>& dims, int part,
                            const Matrix& m);

nlohmann::json to_json(const Register& r);
Register register_from_json(const nlohmann::json& j);

}  // namespace genent::states
