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
#include <map>
#include <string>
#include <vector>

namespace genent::bounds {

/// Named parameter set, kept ordered so serialized output is stable.
using Params = std::map<std::string, double>;

/// A closed-form bound or threshold value tagged with its identity.
/// Probability-type values are computed as sums of log2 terms; `value`
/// is the exponentiated result (which may underflow to 0 or overflow to
/// inf while log2_value stays finite).
struct BoundResult {
  std::string kind;
  Params params;
  double value = 0.0;
  double log2_value = 0.0;
  bool vacuous = false;      // probability bound with raw value >= 1
  bool probability = false;  // tail bounds: value bounds a probability
};

/// The absolute constants used across all tail expressions.
struct Constants {
  double c1;     // 1 / (9 pi^3 ln 2)
  double c2;     // 1 / (2 pi^2 ln 2)
  double c3;     // 1 / (8 pi^2 ln 2)
  double gamma;  // 1 / 1753
};
Constants constants();

/// Exact mean entropy of the smaller reduction of a uniform bipartite
/// pure state, together with the log(dA) - beta/2 lower bound it always
/// exceeds. Requires 1 <= dim_a <= dim_b.
struct PageMean {
  double mean_bits;
  double lower_bound_bits;
  double beta;  // dim_a / (dim_b ln 2)
};
PageMean page_mean_entropy(std::int64_t dim_a, std::int64_t dim_b);

/// Tail-probability bounds. Kinds:
///   levy_mean(k, alpha, eta)            2 * exp2(-C1 (k+1) a^2 / eta^2)
///   levy_median(k, alpha, eta)          exp2(-C2 (k-1) a^2 / eta^2)
///   entropy_concentration(d_a, d_b, alpha)
///   eig_concentration(d_a, d_b, epsilon)
///   projector_overlap_upper(q, s, d, epsilon)      (strong form)
///   projector_overlap_lower(q, s, d, epsilon)      (strong form)
///   projector_overlap_weak(q, s, d, epsilon)
///   subspace_failure(d_a, d_b, s, alpha)
///   oneway_vanishing(d_b, s, epsilon)
///   oneway_value(d_a, d_b, s, epsilon)
///   one_copy(d_b, s)
///   multiparty_cut(n, d, alpha)
/// Out-of-range parameters throw std::invalid_argument.
BoundResult tail_bound(const std::string& kind, const Params& params);

/// Threshold and cap values. Kinds:
///   subspace_dim(d_a, d_b, alpha)            floor applied
///   subspace_dim_tight(d_a, d_b, alpha)
///   mutual_info_cap(d_a, alpha)
///   eof_high_threshold(d_a, d_b, alpha)
///   eof_low_threshold(d_a, d_b, epsilon)
///   separable_threshold(d_a, d_b)
///   mutual_info_random(d_a, d_b, s, alpha)
///   multiparty_eof_high(n, d, alpha, m1)
///   multiparty_eof_low(n, d, epsilon, m2)
///   multiparty_separable(n, d)
///   cor17_floor(d, alpha)
BoundResult threshold_calculator(const std::string& kind, const Params& params);

const std::vector<std::string>& tail_kinds();
const std::vector<std::string>& threshold_kinds();

}  // namespace genent::bounds
