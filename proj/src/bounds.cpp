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

#include "genent/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace genent::bounds {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

double get(const Params& params, const char* name) {
  const auto it = params.find(name);
  if (it == params.end())
    throw std::invalid_argument(std::string("missing parameter: ") + name);
  return it->second;
}

double get_or(const Params& params, const char* name, double fallback) {
  const auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

/// All exponentials are base two; the bound is assembled as a sum of
/// log2 terms and only exponentiated at the end.
BoundResult probability_bound(const std::string& kind, Params params,
                              double log2_value) {
  BoundResult out;
  out.kind = kind;
  out.params = std::move(params);
  out.log2_value = log2_value;
  out.value = std::exp2(log2_value);
  out.probability = true;
  out.vacuous = log2_value >= 0.0;
  return out;
}

BoundResult threshold_value(const std::string& kind, Params params,
                            double value) {
  BoundResult out;
  out.kind = kind;
  out.params = std::move(params);
  out.value = value;
  out.log2_value = value > 0.0 ? std::log2(value)
                               : -std::numeric_limits<double>::infinity();
  out.probability = false;
  out.vacuous = false;
  return out;
}

}  // namespace

Constants constants() {
  return {
      1.0 / (9.0 * kPi * kPi * kPi * kLn2),
      1.0 / (2.0 * kPi * kPi * kLn2),
      1.0 / (8.0 * kPi * kPi * kLn2),
      1.0 / 1753.0,
  };
}

PageMean page_mean_entropy(std::int64_t dim_a, std::int64_t dim_b) {
  require(dim_a >= 1 && dim_b >= dim_a,
          "page_mean_entropy: need 1 <= dim_a <= dim_b");
  const std::int64_t total = dim_a * dim_b;
  require(total <= 100'000'000,
          "page_mean_entropy: total dimension too large for exact summation");

  double harmonic_part = 0.0;
  for (std::int64_t j = total; j > dim_b; --j) harmonic_part += 1.0 / double(j);
  const double mean =
      (harmonic_part - double(dim_a - 1) / (2.0 * double(dim_b))) / kLn2;
  const double beta = double(dim_a) / (double(dim_b) * kLn2);
  return {mean, std::log2(double(dim_a)) - beta / 2.0, beta};
}

BoundResult tail_bound(const std::string& kind, const Params& params) {
  const Constants c = constants();

  if (kind == "levy_mean" || kind == "levy_median") {
    const double k = get(params, "k");
    const double alpha = get(params, "alpha");
    const double eta = get(params, "eta");
    require(k >= 1 && alpha > 0 && eta > 0,
            "levy bounds: need k >= 1, alpha > 0, eta > 0");
    if (kind == "levy_mean")
      return probability_bound(
          kind, params, 1.0 - c.c1 * (k + 1) * alpha * alpha / (eta * eta));
    return probability_bound(
        kind, params, -c.c2 * (k - 1) * alpha * alpha / (eta * eta));
  }

  if (kind == "entropy_concentration") {
    const double da = get(params, "d_a");
    const double db = get(params, "d_b");
    const double alpha = get(params, "alpha");
    require(da >= 3 && db >= da, "entropy_concentration: need d_b >= d_a >= 3");
    require(alpha > 0, "entropy_concentration: need alpha > 0");
    const double log_da = std::log2(da);
    return probability_bound(
        kind, params,
        -(da * db - 1.0) * c.c3 * alpha * alpha / (log_da * log_da));
  }

  if (kind == "eig_concentration") {
    const double da = get(params, "d_a");
    const double db = get(params, "d_b");
    const double eps = get(params, "epsilon");
    require(da >= 1 && db >= 1, "eig_concentration: need dims >= 1");
    require(eps > 0 && eps <= 1, "eig_concentration: need 0 < epsilon <= 1");
    return probability_bound(kind, params,
                             2.0 * da * std::log2(10.0 * da / eps) -
                                 db * eps * eps / (14.0 * kLn2));
  }

  if (kind == "projector_overlap_upper" || kind == "projector_overlap_lower" ||
      kind == "projector_overlap_weak") {
    const double q = get(params, "q");
    const double s = get(params, "s");
    const double eps = get(params, "epsilon");
    require(q >= 1 && s >= 1, "projector_overlap: need q, s >= 1");
    require(eps > 0 && eps <= 1, "projector_overlap: need 0 < epsilon <= 1");
    double rate;  // natural-log rate divided by ln 2
    if (kind == "projector_overlap_upper")
      rate = (eps - std::log1p(eps)) / kLn2;
    else if (kind == "projector_overlap_lower")
      rate = (-eps - std::log1p(-eps)) / kLn2;  // +inf at epsilon = 1
    else
      rate = eps * eps / (6.0 * kLn2);
    return probability_bound(kind, params, -q * s * rate);
  }

  if (kind == "subspace_failure") {
    const double da = get(params, "d_a");
    const double db = get(params, "d_b");
    const double s = get(params, "s");
    const double alpha = get(params, "alpha");
    require(da >= 3 && db >= da, "subspace_failure: need d_b >= d_a >= 3");
    const double log_da = std::log2(da);
    require(alpha > 0 && alpha < log_da,
            "subspace_failure: need 0 < alpha < log2(d_a)");
    require(s >= 1, "subspace_failure: need s >= 1");
    return probability_bound(
        kind, params,
        2.0 * s * std::log2(15.0 * log_da / alpha) -
            (da * db - 1.0) * alpha * alpha /
                (32.0 * kPi * kPi * kLn2 * log_da * log_da));
  }

  if (kind == "oneway_vanishing") {
    const double db = get(params, "d_b");
    const double s = get(params, "s");
    const double eps = get(params, "epsilon");
    require(db >= 1 && s >= 1, "oneway_vanishing: need d_b, s >= 1");
    require(eps > 0 && eps <= 1.0 / 3.0,
            "oneway_vanishing: need 0 < epsilon <= 1/3");
    return probability_bound(kind, params,
                             1.0 + 4.0 * db * std::log2(20.0 * db * db / eps) -
                                 s * eps * eps / 17.0);
  }

  if (kind == "oneway_value") {
    const double da = get(params, "d_a");
    const double db = get(params, "d_b");
    const double s = get(params, "s");
    const double eps = get(params, "epsilon");
    require(da >= 1 && s >= 2, "oneway_value: need d_a >= 1, s >= 2");
    require(eps > 0, "oneway_value: need epsilon > 0");
    require(db >= s / eps && db <= eps * s * da,
            "oneway_value: need s/epsilon <= d_b <= epsilon*s*d_a");
    const double log_s = std::log2(s);
    return probability_bound(
        kind, params,
        1.0 + 2.0 * da * std::log2(15.0 * log_s / eps) -
            (s * db - 1.0) * eps * eps /
                (32.0 * kPi * kPi * kLn2 * log_s * log_s));
  }

  if (kind == "one_copy") {
    const double db = get(params, "d_b");
    const double s = get(params, "s");
    require(db >= 2 && s >= 1, "one_copy: need d_b >= 2, s >= 1");
    return probability_bound(
        kind, params,
        1.0 + 16.0 * db * std::log2(10.0 * db) - s / (600.0 * kLn2));
  }

  if (kind == "multiparty_cut") {
    const double n = get(params, "n");
    const double d = get(params, "d");
    const double alpha = get(params, "alpha");
    require(n >= 2 && d >= 2, "multiparty_cut: need n >= 2, d >= 2");
    require(alpha > 0, "multiparty_cut: need alpha > 0");
    const double log_d = std::log2(d);
    const double dn = std::pow(d, n);
    return probability_bound(
        kind, params,
        (n - 1.0) - (dn - 1.0) * c.c3 * alpha * alpha / (n * n * log_d * log_d));
  }

  throw std::invalid_argument("tail_bound: unknown kind " + kind);
}

BoundResult threshold_calculator(const std::string& kind,
                                 const Params& params) {
  const Constants c = constants();

  if (kind == "subspace_dim" || kind == "subspace_dim_tight" ||
      kind == "eof_high_threshold") {
    const double da = get(params, "d_a");
    const double db = get(params, "d_b");
    const double alpha = get(params, "alpha");
    require(da >= 3 && db >= da, "need d_b >= d_a >= 3");
    const double log_da = std::log2(da);
    require(alpha > 0 && alpha < log_da, "need 0 < alpha < log2(d_a)");
    if (kind == "subspace_dim_tight")
      return threshold_value(
          kind, params,
          (da * db - 1.0) * alpha * alpha /
              (438.0 * log_da * log_da * std::log2(15.0 * log_da / alpha)));
    const double raw =
        da * db * c.gamma * std::pow(alpha, 2.5) / std::pow(log_da, 2.5);
    return threshold_value(kind, params,
                           kind == "subspace_dim" ? std::floor(raw) : raw);
  }

  if (kind == "mutual_info_cap") {
    const double da = get(params, "d_a");
    const double alpha = get(params, "alpha");
    require(da >= 3, "mutual_info_cap: need d_a >= 3");
    require(alpha > 0 && alpha <= 1, "mutual_info_cap: need 0 < alpha <= 1");
    return threshold_value(kind, params,
                           2.5 * std::log2(std::log2(da)) -
                               std::log2(c.gamma * std::pow(alpha, 2.5)) + 1.0);
  }

  if (kind == "eof_low_threshold") {
    const double da = get(params, "d_a");
    const double db = get(params, "d_b");
    const double eps = get(params, "epsilon");
    require(da >= 3 && db >= da, "eof_low_threshold: need d_b >= d_a >= 3");
    require(eps > 0 && eps <= 1, "eof_low_threshold: need 0 < epsilon <= 1");
    const double log_da = std::log2(da);
    return threshold_value(
        kind, params,
        da * db * log_da * log_da * (6.0 * std::log2(db) - 4.0 * std::log2(eps)) *
            14.0 * kLn2 / (eps * eps));
  }

  if (kind == "separable_threshold") {
    const double da = get(params, "d_a");
    const double db = get(params, "d_b");
    require(da >= 2 && db >= 2, "separable_threshold: need dims >= 2");
    return threshold_value(kind, params, 6.0 * da * db * da * db);
  }

  if (kind == "mutual_info_random") {
    const double da = get(params, "d_a");
    const double db = get(params, "d_b");
    const double s = get(params, "s");
    const double alpha = get(params, "alpha");
    require(da >= 2 && db >= 2 && s >= 1, "mutual_info_random: bad dims");
    require(alpha > 0, "mutual_info_random: need alpha > 0");
    const double total = da * db;
    // The two branches agree at s = total, where both betas are 1/ln2.
    if (s <= total) {
      const double beta1 = s / (total * kLn2);
      return threshold_value(kind, params,
                             std::log2(da) + std::log2(db) - std::log2(s) +
                                 alpha + beta1);
    }
    const double beta2 = total / (s * kLn2);
    return threshold_value(kind, params, alpha + beta2);
  }

  if (kind == "multiparty_eof_high") {
    const double n = get(params, "n");
    const double d = get(params, "d");
    const double alpha = get(params, "alpha");
    const double m1 = get_or(params, "m1", 1.0);
    require(n >= 2 && d >= 2, "multiparty_eof_high: need n >= 2, d >= 2");
    require(alpha > 0 && alpha < 1, "multiparty_eof_high: need 0 < alpha < 1");
    require(m1 > 0, "multiparty_eof_high: need m1 > 0");
    const double log_d = std::log2(d);
    return threshold_value(
        kind, params, n / 2.0 + m1 * std::log2(n * log_d / alpha) / log_d);
  }

  if (kind == "multiparty_eof_low") {
    const double n = get(params, "n");
    const double d = get(params, "d");
    const double eps = get(params, "epsilon");
    const double m2 = get_or(params, "m2", 1.0);
    require(n >= 2 && d >= 2, "multiparty_eof_low: need n >= 2, d >= 2");
    require(eps > 0, "multiparty_eof_low: need epsilon > 0");
    require(m2 > 0, "multiparty_eof_low: need m2 > 0");
    const double log_d = std::log2(d);
    return threshold_value(
        kind, params, n / 2.0 - m2 * std::log2(n * log_d / (eps * eps)) / log_d);
  }

  if (kind == "multiparty_separable") {
    const double n = get(params, "n");
    const double d = get(params, "d");
    require(n >= 2 && d >= 2, "multiparty_separable: need n >= 2, d >= 2");
    return threshold_value(kind, params, n / 3.0 - 1.0 / std::log2(d));
  }

  if (kind == "cor17_floor") {
    const double d = get(params, "d");
    const double alpha = get(params, "alpha");
    require(d >= 2, "cor17_floor: need d >= 2");
    require(alpha > 0, "cor17_floor: need alpha > 0");
    return threshold_value(kind, params, std::log2(d) - 1.0 / kLn2 - alpha);
  }

  throw std::invalid_argument("threshold_calculator: unknown kind " + kind);
}

const std::vector<std::string>& tail_kinds() {
  static const std::vector<std::string> kinds = {
      "levy_mean",
      "levy_median",
      "entropy_concentration",
      "eig_concentration",
      "projector_overlap_upper",
      "projector_overlap_lower",
      "projector_overlap_weak",
      "subspace_failure",
      "oneway_vanishing",
      "oneway_value",
      "one_copy",
      "multiparty_cut",
  };
  return kinds;
}

const std::vector<std::string>& threshold_kinds() {
  static const std::vector<std::string> kinds = {
      "subspace_dim",
      "subspace_dim_tight",
      "mutual_info_cap",
      "eof_high_threshold",
      "eof_low_threshold",
      "separable_threshold",
      "mutual_info_random",
      "multiparty_eof_high",
      "multiparty_eof_low",
      "multiparty_separable",
      "cor17_floor",
  };
  return kinds;
}

}  // namespace genent::bounds
