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
#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <vector>

#include "genent/bounds.hpp"

namespace genent::experiments {

/// Campaign description. Which dimension fields are required depends on
/// the scenario; `deviations` holds the alpha or epsilon grid where one
/// applies. The worker count is a runtime knob, not part of the
/// experiment's identity, and is never echoed into reports.
struct ExperimentConfig {
  std::string scenario;
  std::int64_t d_a = 0;
  std::int64_t d_b = 0;
  std::int64_t d = 0;
  std::int64_t n = 0;
  std::int64_t s = 0;
  std::int64_t q = 0;
  std::int64_t traced = 0;
  std::vector<double> deviations;
  std::int64_t trials = 1000;
  std::int64_t targets = 100;  // per-subspace targets (sdc scenario)
  std::uint64_t master_seed = 0;
  int restarts = 12;
  int iters = 150;
  int workers = 1;
};

/// Parses a config JSON object; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

const std::vector<std::string>& scenario_names();

struct TrialRecord {
  std::int64_t trial = 0;
  std::vector<std::pair<std::string, double>> stats;
};

struct StatSummary {
  std::string statistic;
  std::int64_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
};

/// Tail comparison at one deviation value.
struct DeviationVerdict {
  std::string statistic;
  double deviation = 0.0;
  double threshold = 0.0;
  bool below = false;  // tail side counted
  double tail_fraction = 0.0;
  double std_error = 0.0;
  bounds::BoundResult bound;
  std::string verdict;  // holds | vacuous | violated
};

/// Comparison of an empirical mean (or an exactness requirement)
/// against a closed-form target.
struct MeanCheck {
  std::string name;
  double empirical = 0.0;
  double target = 0.0;
  double tolerance = 0.0;   // allowed |empirical - target| (0: one-sided)
  bool one_sided = false;   // require empirical <= target (+ 3 SE slack)
  double std_error = 0.0;
  std::string verdict;      // holds | violated
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  std::vector<StatSummary> summaries;
  std::vector<DeviationVerdict> verdicts;
  std::vector<MeanCheck> mean_checks;
  std::vector<std::string> notes;
  double wall_seconds = 0.0;  // reported on stderr, never serialized

  bool any_violated() const;
};

/// Runs the configured campaign. Per-trial streams are derived from
/// (master_seed, trial_index), so records are bit-identical for any
/// worker count.
ExperimentReport run_monte_carlo(const ExperimentConfig& config);

struct TailFraction {
  double fraction = 0.0;
  double std_error = 0.0;  // sqrt(p(1-p)/N)
};

/// Fraction of samples beyond the threshold on the requested side.
TailFraction tail_fraction(std::span<const double> samples, double threshold,
                           bool below);

/// vacuous if the bound is; violated if fraction - 3 SE > bound value;
/// holds otherwise. Rejects non-probability bounds.
std::string compare_with_bound(const TailFraction& tf,
                               const bounds::BoundResult& bound);

struct MedianMeanGap {
  double mean = 0.0;
  double median = 0.0;
  double gap = 0.0;  // mean - median
};
MedianMeanGap median_mean_gap(std::span<const double> samples);

/// Long-form CSV: header `trial,statistic,value`, rows ordered by trial
/// index then recording order; doubles printed with 17 significant
/// digits so reruns are byte-identical.
std::string samples_csv(const ExperimentReport& report);

/// Deterministic report JSON. Per-trial records live in the CSV; the
/// JSON carries everything else plus an optional pointer to the CSV.
nlohmann::json report_to_json(const ExperimentReport& report,
                              const std::string& samples_csv_name = "");

}  // namespace genent::experiments
