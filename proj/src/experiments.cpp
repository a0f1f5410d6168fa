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

#include "genent/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "genent/measures.hpp"
#include "genent/protocols.hpp"
#include "genent/sampler.hpp"

namespace genent::experiments {

namespace {

constexpr double kLn2 = std::numbers::ln2;

using Stats = std::vector<std::pair<std::string, double>>;
using TrialFn = std::function<Stats(std::int64_t, rng::SeedSpec)>;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("experiment config: " + message);
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& config,
                                    const TrialFn& fn) {
  const std::int64_t trials = config.trials;
  std::vector<TrialRecord> records(trials);
  const int workers = std::max(1, config.workers);

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  const auto body = [&] {
    for (;;) {
      const std::int64_t t = next.fetch_add(1);
      if (t >= trials || failed.load()) break;
      try {
        records[t].trial = t;
        records[t].stats = fn(t, {config.master_seed, std::uint64_t(t)});
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        failed.store(true);
        if (error_message.empty()) error_message = e.what();
      }
    }
  };

  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("trial failed: " + error_message);
  return records;
}

std::vector<double> collect(const std::vector<TrialRecord>& records,
                            const std::string& name) {
  std::vector<double> values;
  for (const auto& record : records)
    for (const auto& [stat, value] : record.stats)
      if (stat == name) values.push_back(value);
  return values;
}

std::vector<std::string> stat_names(const std::vector<TrialRecord>& records) {
  std::vector<std::string> names;
  for (const auto& record : records)
    for (const auto& [stat, value] : record.stats)
      if (std::find(names.begin(), names.end(), stat) == names.end())
        names.push_back(stat);
  return names;
}

StatSummary summarize(const std::string& name, std::vector<double> values) {
  StatSummary s;
  s.statistic = name;
  s.count = static_cast<std::int64_t>(values.size());
  if (values.empty()) return s;
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / double(values.size());
  double sq = 0.0;
  for (const double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = values.size() > 1 ? std::sqrt(sq / double(values.size() - 1)) : 0.0;
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1
                 ? values[mid]
                 : (values[mid - 1] + values[mid]) / 2.0;
  return s;
}

MeanCheck make_mean_check(std::string name, double empirical, double target,
                          double tolerance, bool one_sided, double se) {
  MeanCheck c;
  c.name = std::move(name);
  c.empirical = empirical;
  c.target = target;
  c.tolerance = tolerance;
  c.one_sided = one_sided;
  c.std_error = se;
  if (one_sided)
    c.verdict = empirical - 3.0 * se > target ? "violated" : "holds";
  else
    c.verdict = std::abs(empirical - target) >
                        std::max(tolerance, 3.0 * se)
                    ? "violated"
                    : "holds";
  return c;
}

DeviationVerdict make_tail_verdict(const std::string& statistic,
                                   double deviation, double threshold,
                                   bool below,
                                   std::span<const double> samples,
                                   bounds::BoundResult bound) {
  DeviationVerdict v;
  v.statistic = statistic;
  v.deviation = deviation;
  v.threshold = threshold;
  v.below = below;
  const TailFraction tf = tail_fraction(samples, threshold, below);
  v.tail_fraction = tf.fraction;
  v.std_error = tf.std_error;
  v.bound = std::move(bound);
  v.verdict = compare_with_bound(tf, v.bound);
  return v;
}

bounds::BoundResult vacuous_bound(const std::string& kind,
                                  bounds::Params params) {
  bounds::BoundResult b;
  b.kind = kind;
  b.params = std::move(params);
  b.value = 1.0;
  b.log2_value = 0.0;
  b.vacuous = true;
  b.probability = true;
  return b;
}

/// tail_bound, degrading to a vacuous result when the parameters fall
/// outside the theorem's stated range.
bounds::BoundResult tail_bound_or_vacuous(const std::string& kind,
                                          const bounds::Params& params,
                                          std::vector<std::string>* notes) {
  try {
    return bounds::tail_bound(kind, params);
  } catch (const std::invalid_argument& e) {
    if (notes)
      notes->push_back(std::string("bound ") + kind +
                       " outside stated parameter range (" + e.what() +
                       "); treated as vacuous");
    return vacuous_bound(kind, params);
  }
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

double ks_critical(double level, size_t n1, size_t n2) {
  const double c = std::sqrt(-std::log(level / 2.0) / 2.0);
  return c * std::sqrt(double(n1 + n2) / (double(n1) * double(n2)));
}

// ---------------------------------------------------------------------------
// Scenario implementations
// ---------------------------------------------------------------------------

struct Scenario {
  TrialFn trial;
  std::function<void(ExperimentReport&)> post;
};

Scenario make_page_mean(const ExperimentConfig& cfg) {
  require(cfg.d_a >= 1 && cfg.d_b >= cfg.d_a, "page_mean needs 1 <= d_a <= d_b");
  const auto da = cfg.d_a, db = cfg.d_b;
  Scenario s;
  s.trial = [da, db](std::int64_t, rng::SeedSpec seed) -> Stats {
    const auto v = sampler::haar_pure({da, db}, seed);
    return {{"entropy", linalg::vn_entropy(linalg::reduced_a(v, da, db))}};
  };
  s.post = [da, db](ExperimentReport& report) {
    const auto values = collect(report.records, "entropy");
    const bounds::PageMean pm = bounds::page_mean_entropy(da, db);
    const StatSummary sum = summarize("entropy", values);
    const double se = sum.stddev / std::sqrt(double(sum.count));
    report.mean_checks.push_back(make_mean_check(
        "mean entropy vs exact page value", sum.mean, pm.mean_bits, 0.01, false,
        se));
    const MedianMeanGap gap = median_mean_gap(values);
    const double median_floor = std::log2(double(da)) - pm.beta;
    report.notes.push_back(
        "median entropy " + format_short(gap.median) +
        (gap.median >= median_floor ? " respects" : " MISSES") +
        " the log2(dA) - beta floor " + format_short(median_floor));
  };
  return s;
}

Scenario make_purity_mean(const ExperimentConfig& cfg) {
  require(cfg.d >= 1 && cfg.s >= 1, "purity_mean needs d >= 1 and s >= 1");
  const auto d = cfg.d, rank = cfg.s;
  Scenario s;
  s.trial = [d, rank](std::int64_t, rng::SeedSpec seed) -> Stats {
    const auto rho = sampler::random_mixed(d, rank, seed);
    return {{"purity", rho.squaredNorm()}};
  };
  s.post = [d, rank](ExperimentReport& report) {
    const auto values = collect(report.records, "purity");
    const StatSummary sum = summarize("purity", values);
    const double se = sum.stddev / std::sqrt(double(sum.count));
    const double target = double(d + rank) / double(d * rank + 1);
    report.mean_checks.push_back(make_mean_check(
        "mean purity vs (d+s)/(ds+1)", sum.mean, target, 0.0, false, se));
  };
  return s;
}

Scenario make_entropy_tail(const ExperimentConfig& cfg) {
  require(cfg.d_a >= 2 && cfg.d_b >= cfg.d_a, "entropy_tail needs d_b >= d_a >= 2");
  require(!cfg.deviations.empty(), "entropy_tail needs a deviation grid");
  const auto da = cfg.d_a, db = cfg.d_b;
  Scenario s;
  s.trial = [da, db](std::int64_t, rng::SeedSpec seed) -> Stats {
    const auto v = sampler::haar_pure({da, db}, seed);
    return {{"entropy", linalg::vn_entropy(linalg::reduced_a(v, da, db))}};
  };
  s.post = [da, db, deviations = cfg.deviations](ExperimentReport& report) {
    const auto values = collect(report.records, "entropy");
    const double beta = double(da) / (double(db) * kLn2);
    const double log_da = std::log2(double(da));
    for (const double alpha : deviations) {
      const auto bound = tail_bound_or_vacuous(
          "entropy_concentration",
          {{"d_a", double(da)}, {"d_b", double(db)}, {"alpha", alpha}},
          &report.notes);
      report.verdicts.push_back(make_tail_verdict(
          "entropy", alpha, log_da - alpha - beta, true, values, bound));
    }
    const MedianMeanGap gap = median_mean_gap(values);
    const double median_floor = log_da - beta;
    report.notes.push_back(
        "median entropy " + format_short(gap.median) +
        (gap.median >= median_floor ? " respects" : " MISSES") +
        " the log2(dA) - beta floor " + format_short(median_floor));
  };
  return s;
}

Scenario make_eig_tail(const ExperimentConfig& cfg) {
  require(cfg.d_a >= 2 && cfg.d_b >= 1, "eig_tail needs d_a >= 2, d_b >= 1");
  require(!cfg.deviations.empty(), "eig_tail needs an epsilon grid");
  const auto da = cfg.d_a, db = cfg.d_b;
  const auto deviations = cfg.deviations;
  Scenario s;
  s.trial = [da, db, deviations](std::int64_t, rng::SeedSpec seed) -> Stats {
    const auto v = sampler::haar_pure({da, db}, seed);
    // The smaller-side reduction carries exactly the nonzero spectrum,
    // which is what the eigenvalue statements are about.
    Eigen::SelfAdjointEigenSolver<linalg::Matrix> eig(
        da <= db ? linalg::reduced_a(v, da, db)
                 : linalg::reduced_b(v, da, db),
        Eigen::EigenvaluesOnly);
    const double lam_min = eig.eigenvalues().minCoeff();
    const double lam_max = eig.eigenvalues().maxCoeff();
    Stats stats = {{"lambda_max", lam_max}, {"lambda_min", lam_min}};
    for (const double eps : deviations) {
      const bool ok = lam_max <= (1.0 + eps) / double(da) &&
                      lam_min >= (1.0 - eps) / double(da);
      stats.emplace_back("two_sided_ok@" + format_short(eps), ok ? 1.0 : 0.0);
    }
    return stats;
  };
  s.post = [da, db, deviations](ExperimentReport& report) {
    const auto max_values = collect(report.records, "lambda_max");
    const auto min_values = collect(report.records, "lambda_min");
    for (const double eps : deviations) {
      const auto bound = tail_bound_or_vacuous(
          "eig_concentration",
          {{"d_a", double(da)}, {"d_b", double(db)}, {"epsilon", eps}},
          &report.notes);
      report.verdicts.push_back(make_tail_verdict(
          "lambda_max", eps, (1.0 + eps) / double(da), false, max_values,
          bound));
      report.verdicts.push_back(make_tail_verdict(
          "lambda_min", eps, (1.0 - eps) / double(da), true, min_values,
          bound));
    }
  };
  return s;
}

Scenario make_projector_tail(const ExperimentConfig& cfg) {
  require(cfg.d >= 2 && cfg.s >= 1 && cfg.s <= cfg.d && cfg.q >= 1 &&
              cfg.q <= cfg.d,
          "projector_tail needs 1 <= s, q <= d");
  require(!cfg.deviations.empty(), "projector_tail needs an epsilon grid");
  const auto d = cfg.d, sub = cfg.s, q = cfg.q;
  Scenario s;
  s.trial = [d, sub, q](std::int64_t, rng::SeedSpec seed) -> Stats {
    const auto v = sampler::random_subspace_ambient(d, sub, seed);
    return {{"tr_pq", v.topRows(q).squaredNorm()}};
  };
  s.post = [d, sub, q, deviations = cfg.deviations](ExperimentReport& report) {
    const auto values = collect(report.records, "tr_pq");
    const double expected = double(q) * double(sub) / double(d);
    for (const double eps : deviations) {
      const bounds::Params params = {
          {"q", double(q)}, {"s", double(sub)}, {"epsilon", eps}};
      report.verdicts.push_back(make_tail_verdict(
          "tr_pq", eps, (1.0 + eps) * expected, false, values,
          tail_bound_or_vacuous("projector_overlap_upper", params,
                                &report.notes)));
      report.verdicts.push_back(make_tail_verdict(
          "tr_pq", eps, (1.0 - eps) * expected, true, values,
          tail_bound_or_vacuous("projector_overlap_lower", params,
                                &report.notes)));
    }
  };
  return s;
}

Scenario make_mutual_info(const ExperimentConfig& cfg) {
  require(cfg.d_a >= 2 && cfg.d_b >= 2 && cfg.s >= 1,
          "mutual_info needs d_a, d_b >= 2 and s >= 1");
  require(!cfg.deviations.empty(), "mutual_info needs an alpha grid");
  const auto da = cfg.d_a, db = cfg.d_b, rank = cfg.s;
  Scenario s;
  s.trial = [da, db, rank](std::int64_t, rng::SeedSpec seed) -> Stats {
    const auto rho = sampler::random_mixed(da * db, rank, seed);
    const auto reg = states::Register::mixed({da, db}, rho);
    const double s_ab = linalg::vn_entropy(rho);
    const double s_a = linalg::vn_entropy(
        states::partial_trace(reg, {0}).density_matrix());
    const double s_b = linalg::vn_entropy(
        states::partial_trace(reg, {1}).density_matrix());
    return {{"mutual_info", s_a + s_b - s_ab}, {"joint_entropy", s_ab}};
  };
  s.post = [da, db, rank, deviations = cfg.deviations](ExperimentReport& report) {
    const auto values = collect(report.records, "mutual_info");
    const StatSummary sum = summarize("mutual_info", values);
    const double total = double(da * db);
    // The concentration driving the cap acts on the joint entropy of the
    // purifying system; its dimensions are (s, dA dB) sorted.
    const double eff_a = std::min<double>(double(rank), total);
    const double eff_b = std::max<double>(double(rank), total);
    for (const double alpha : deviations) {
      const double cap =
          bounds::threshold_calculator(
              "mutual_info_random", {{"d_a", double(da)},
                                     {"d_b", double(db)},
                                     {"s", double(rank)},
                                     {"alpha", alpha}})
              .value;
      const auto bound = tail_bound_or_vacuous(
          "entropy_concentration",
          {{"d_a", eff_a}, {"d_b", eff_b}, {"alpha", alpha}}, &report.notes);
      report.verdicts.push_back(
          make_tail_verdict("mutual_info", alpha, cap, false, values, bound));
      const double se = sum.stddev / std::sqrt(double(sum.count));
      report.mean_checks.push_back(make_mean_check(
          "mean mutual_info under cap at alpha=" + format_short(alpha),
          sum.mean, cap, 0.0, true, se));
    }
    report.notes.push_back(
        "the mutual-information cap also bounds CR, K and E_d (and twice "
        "E_d via the squashed-entanglement route); those operational "
        "quantities are labels here, never computed");
  };
  return s;
}

Scenario make_oneway(const ExperimentConfig& cfg) {
  require(cfg.d_a >= 2 && cfg.d_b >= cfg.d_a && cfg.s >= 1,
          "oneway needs d_b >= d_a >= 2 and s >= 1");
  require(!cfg.deviations.empty(), "oneway needs an epsilon grid");
  const auto da = cfg.d_a, db = cfg.d_b, rank = cfg.s;
  const int restarts = cfg.restarts, iters = cfg.iters;
  Scenario s;
  s.trial = [da, db, rank, restarts, iters](std::int64_t,
                                            rng::SeedSpec seed) -> Stats {
    const auto rho = sampler::random_mixed(da * db, rank, seed);
    const auto reg = states::Register::mixed({da, db}, rho);
    const auto lb = measures::oneway_info_lower_bound(
        reg, restarts, rng::substream(seed, 2), iters);
    const double mi = measures::mutual_information(reg, {{0}});
    return {{"oneway_lower", lb.bits}, {"mutual_info", mi}};
  };
  s.post = [da, db, rank, deviations = cfg.deviations](ExperimentReport& report) {
    const auto values = collect(report.records, "oneway_lower");
    for (const double eps : deviations) {
      report.verdicts.push_back(make_tail_verdict(
          "oneway_lower", eps, 5.0 * eps, false, values,
          tail_bound_or_vacuous(
              "oneway_vanishing",
              {{"d_b", double(db)}, {"s", double(rank)}, {"epsilon", eps}},
              &report.notes)));
      report.verdicts.push_back(make_tail_verdict(
          "oneway_lower", eps,
          std::log2(double(db)) - std::log2(double(rank)) + 2.0 * eps, false,
          values,
          tail_bound_or_vacuous("oneway_value",
                                {{"d_a", double(da)},
                                 {"d_b", double(db)},
                                 {"s", double(rank)},
                                 {"epsilon", eps}},
                                &report.notes)));
    }
    report.notes.push_back(
        "caps on the one-way information also cap K-> and E_d->; equality "
        "with CR-> is conditional on the additivity conjecture and is "
        "reported as a label only");
  };
  return s;
}

Scenario make_one_copy(const ExperimentConfig& cfg) {
  require(cfg.d_a >= 2 && cfg.d_b >= 2 && cfg.s >= 1,
          "one_copy needs d_a, d_b >= 2 and s >= 1");
  const auto da = cfg.d_a, db = cfg.d_b, rank = cfg.s;
  const int restarts = cfg.restarts, iters = cfg.iters;
  Scenario s;
  s.trial = [da, db, rank, restarts, iters](std::int64_t,
                                            rng::SeedSpec seed) -> Stats {
    const auto rho = sampler::random_mixed(da * db, rank, seed);
    const auto reg = states::Register::mixed({da, db}, rho);
    const auto witness = measures::one_copy_distillable_search(
        reg, restarts, rng::substream(seed, 3), iters);
    return {{"witness_found", witness.found ? 1.0 : 0.0},
            {"negativity", witness.negativity}};
  };
  s.post = [db, rank](ExperimentReport& report) {
    const auto values = collect(report.records, "witness_found");
    report.verdicts.push_back(make_tail_verdict(
        "witness_found", 0.0, 0.5, false, values,
        tail_bound_or_vacuous("one_copy",
                              {{"d_b", double(db)}, {"s", double(rank)}},
                              &report.notes)));
  };
  return s;
}

Scenario make_multiparty_cuts(const ExperimentConfig& cfg) {
  require(cfg.n >= 2 && cfg.d >= 2, "multiparty_cuts needs n >= 2, d >= 2");
  require(!cfg.deviations.empty(), "multiparty_cuts needs an alpha grid");
  const int n = int(cfg.n);
  const auto d = cfg.d;

  // Enumerate representatives of all bipartite cuts with x <= n/2.
  std::vector<std::vector<int>> cuts;
  for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
    const int size = __builtin_popcount(mask);
    if (2 * size > n) continue;
    if (2 * size == n && !(mask & 1u)) continue;  // dedupe complements
    std::vector<int> parties;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) parties.push_back(i);
    cuts.push_back(std::move(parties));
  }

  Scenario s;
  s.trial = [n, d, cuts](std::int64_t, rng::SeedSpec seed) -> Stats {
    const std::vector<Eigen::Index> dims(n, d);
    const auto reg = sampler::haar_pure_register(dims, seed);
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& parties : cuts) {
      const double x = double(parties.size());
      const double beta_x = std::pow(double(d), 2.0 * x - n) / kLn2;
      const double entropy = linalg::vn_entropy(
          states::partial_trace(reg, parties).density_matrix());
      min_margin = std::min(
          min_margin, entropy - (x * std::log2(double(d)) - beta_x));
    }
    return {{"min_cut_margin", min_margin}};
  };
  s.post = [n, d, deviations = cfg.deviations](ExperimentReport& report) {
    const auto values = collect(report.records, "min_cut_margin");
    for (const double alpha : deviations) {
      report.verdicts.push_back(make_tail_verdict(
          "min_cut_margin", alpha, -alpha, true, values,
          tail_bound_or_vacuous(
              "multiparty_cut",
              {{"n", double(n)}, {"d", double(d)}, {"alpha", alpha}},
              &report.notes)));
    }
  };
  return s;
}

Scenario make_cor17(const ExperimentConfig& cfg) {
  require(cfg.n >= 2 && cfg.d >= 2, "cor17 needs n >= 2, d >= 2");
  const int n = int(cfg.n);
  const auto d = cfg.d;
  Scenario s;
  s.trial = [n, d](std::int64_t, rng::SeedSpec seed) -> Stats {
    const std::vector<Eigen::Index> dims(n, d);
    const auto reg = sampler::haar_pure_register(dims, seed);
    const auto report = protocols::multiparty_distill(reg, {{0, 1}});
    Stats stats;
    for (size_t j = 0; j < report.outcomes.size(); ++j) {
      stats.emplace_back("outcome_entanglement",
                         report.outcomes[j].entanglement);
      // Matched-size reference sample of fresh uniform pure states.
      const auto fresh = sampler::haar_pure(
          {d, d}, rng::substream(seed, 1000 + std::uint64_t(j)));
      stats.emplace_back("haar_entanglement",
                         linalg::vn_entropy(linalg::reduced_a(fresh, d, d)));
    }
    return stats;
  };
  s.post = [d](ExperimentReport& report) {
    const auto outcome = collect(report.records, "outcome_entanglement");
    const auto reference = collect(report.records, "haar_entanglement");
    const double ks = two_sample_ks(outcome, reference);
    const double critical = ks_critical(0.001, outcome.size(), reference.size());
    MeanCheck ks_check;
    ks_check.name = "KS(outcome E, fresh Haar E) at level 0.001";
    ks_check.empirical = ks;
    ks_check.target = critical;
    ks_check.one_sided = true;
    ks_check.verdict = ks <= critical ? "holds" : "violated";
    report.mean_checks.push_back(ks_check);

    const MedianMeanGap gap = median_mean_gap(outcome);
    MeanCheck median_check;
    median_check.name = "median outcome entanglement >= log2(d) - 1/ln2";
    median_check.empirical = gap.median;
    median_check.target = std::log2(double(d)) - 1.0 / kLn2;
    median_check.one_sided = true;
    median_check.verdict =
        gap.median >= median_check.target ? "holds" : "violated";
    report.mean_checks.push_back(median_check);
  };
  return s;
}

Scenario make_sdc(const ExperimentConfig& cfg) {
  require(cfg.d_a >= 2 && cfg.d_b >= cfg.d_a && cfg.s >= 1 &&
              cfg.s <= cfg.d_a * cfg.d_b,
          "sdc needs d_b >= d_a >= 2 and 1 <= s <= d_a*d_b");
  require(cfg.targets >= 1, "sdc needs targets >= 1");
  const auto da = cfg.d_a, db = cfg.d_b, sub = cfg.s;
  const auto targets = cfg.targets;
  const int restarts = cfg.restarts, iters = cfg.iters;
  Scenario s;
  s.trial = [da, db, sub, targets, restarts,
             iters](std::int64_t, rng::SeedSpec seed) -> Stats {
    const auto v = sampler::random_subspace(da, db, sub,
                                            rng::substream(seed, 0));
    protocols::CertifyOptions opts;
    opts.mode = protocols::CertifyMode::kMinimize;
    opts.restarts = restarts;
    opts.iters = std::max(iters, 200);
    const auto cert =
        protocols::certify_subspace(v, opts, rng::substream(seed, 1));

    const auto phi0 = protocols::canonical_max_entangled(da, db);

    // Deficit of the subspace, refined by every tested target: each
    // sampled state's own entanglement is a further upper bound on the
    // subspace minimum.
    double min_entanglement =
        std::min(cert.min_entanglement_estimate, std::log2(double(da)));
    std::vector<states::Register> states_in_s;
    for (std::int64_t t = 0; t < targets; ++t) {
      const auto coeffs =
          sampler::haar_pure({sub}, rng::substream(seed, 100 + t));
      states::Register target =
          states::Register::pure({da, db}, v.columns * coeffs);
      const double e = measures::pure_entanglement(target, {{0}});
      min_entanglement = std::min(min_entanglement, e);
      states_in_s.push_back(std::move(target));
    }
    const double deficit =
        std::max(0.0, std::log2(double(da)) - min_entanglement);

    double min_closest_margin = std::numeric_limits<double>::infinity();
    double min_protocol_margin = std::numeric_limits<double>::infinity();
    for (const auto& target : states_in_s) {
      const double f_closest =
          measures::closest_max_entangled(target).fidelity;
      const auto run = protocols::sdc_run(cert, target, phi0);
      min_closest_margin =
          std::min(min_closest_margin,
                   f_closest - (1.0 - std::sqrt(2.0 * deficit)));
      min_protocol_margin =
          std::min(min_protocol_margin,
                   run.fidelity - (1.0 - 2.0 * std::sqrt(deficit)));
    }
    return {{"deficit", deficit},
            {"min_closest_margin", min_closest_margin},
            {"min_protocol_margin", min_protocol_margin}};
  };
  s.post = [](ExperimentReport& report) {
    for (const char* stat : {"min_closest_margin", "min_protocol_margin"}) {
      const auto values = collect(report.records, stat);
      double worst = std::numeric_limits<double>::infinity();
      for (const double v : values) worst = std::min(worst, v);
      MeanCheck check;
      check.name = std::string(stat) + " nonnegative";
      check.empirical = worst;
      check.target = 0.0;
      check.verdict = worst >= -1e-9 ? "holds" : "violated";
      report.mean_checks.push_back(check);
    }
  };
  return s;
}

Scenario make_locking(const ExperimentConfig& cfg) {
  require(cfg.n >= 1, "locking needs n >= 1 qubits per side");
  require(cfg.traced >= 0 && cfg.traced <= cfg.n,
          "locking needs 0 <= traced <= n");
  const int n = int(cfg.n), traced = int(cfg.traced);
  const auto rank = cfg.s;
  const int restarts = cfg.restarts, iters = cfg.iters;
  Scenario s;
  s.trial = [n, traced, rank, restarts, iters](std::int64_t,
                                               rng::SeedSpec seed) -> Stats {
    const auto report = protocols::locking_experiment(
        n, traced, 1, seed, rank, restarts, iters);
    const auto& row = report.rows.front();
    return {{"eof_before", row.before_bits},
            {"eof_after", row.after_bits},
            {"gap", row.gap},
            {"after_purity_separable", row.after_purity_separable ? 1.0 : 0.0}};
  };
  s.post = [](ExperimentReport& report) {
    const auto gaps = collect(report.records, "gap");
    const StatSummary sum = summarize("gap", gaps);
    report.notes.push_back("mean locking gap " + format_short(sum.mean) +
                           " bits over " + std::to_string(sum.count) +
                           " trials");
  };
  return s;
}

Scenario make_scenario(const ExperimentConfig& cfg) {
  if (cfg.scenario == "page_mean") return make_page_mean(cfg);
  if (cfg.scenario == "purity_mean") return make_purity_mean(cfg);
  if (cfg.scenario == "entropy_tail") return make_entropy_tail(cfg);
  if (cfg.scenario == "eig_tail") return make_eig_tail(cfg);
  if (cfg.scenario == "projector_tail") return make_projector_tail(cfg);
  if (cfg.scenario == "mutual_info") return make_mutual_info(cfg);
  if (cfg.scenario == "oneway") return make_oneway(cfg);
  if (cfg.scenario == "one_copy") return make_one_copy(cfg);
  if (cfg.scenario == "multiparty_cuts") return make_multiparty_cuts(cfg);
  if (cfg.scenario == "cor17") return make_cor17(cfg);
  if (cfg.scenario == "sdc") return make_sdc(cfg);
  if (cfg.scenario == "locking") return make_locking(cfg);
  throw std::invalid_argument("unknown scenario: " + cfg.scenario);
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "page_mean",  "purity_mean", "entropy_tail",    "eig_tail",
      "projector_tail", "mutual_info", "oneway",      "one_copy",
      "multiparty_cuts", "cor17",   "sdc",            "locking",
  };
  return names;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  static const std::vector<std::string> known = {
      "scenario", "d_a",     "d_b",     "d",           "n",
      "s",        "q",       "traced",  "deviations",  "trials",
      "targets",  "master_seed",        "restarts",    "iters",
      "workers"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("experiment config: unknown key '" + key +
                                  "'");
  ExperimentConfig cfg;
  if (!j.contains("scenario"))
    throw std::invalid_argument("experiment config: missing scenario");
  cfg.scenario = j.at("scenario").get<std::string>();
  cfg.d_a = j.value("d_a", cfg.d_a);
  cfg.d_b = j.value("d_b", cfg.d_b);
  cfg.d = j.value("d", cfg.d);
  cfg.n = j.value("n", cfg.n);
  cfg.s = j.value("s", cfg.s);
  cfg.q = j.value("q", cfg.q);
  cfg.traced = j.value("traced", cfg.traced);
  if (j.contains("deviations"))
    cfg.deviations = j.at("deviations").get<std::vector<double>>();
  cfg.trials = j.value("trials", cfg.trials);
  cfg.targets = j.value("targets", cfg.targets);
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  cfg.restarts = j.value("restarts", cfg.restarts);
  cfg.iters = j.value("iters", cfg.iters);
  cfg.workers = j.value("workers", cfg.workers);
  if (cfg.trials < 1)
    throw std::invalid_argument("experiment config: trials must be >= 1");
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["scenario"] = config.scenario;
  if (config.d_a) j["d_a"] = config.d_a;
  if (config.d_b) j["d_b"] = config.d_b;
  if (config.d) j["d"] = config.d;
  if (config.n) j["n"] = config.n;
  if (config.s) j["s"] = config.s;
  if (config.q) j["q"] = config.q;
  if (config.traced) j["traced"] = config.traced;
  if (!config.deviations.empty()) j["deviations"] = config.deviations;
  j["trials"] = config.trials;
  if (config.scenario == "sdc") j["targets"] = config.targets;
  j["master_seed"] = config.master_seed;
  j["restarts"] = config.restarts;
  j["iters"] = config.iters;
  // The worker count is deliberately not echoed: reports must be
  // byte-identical for any scheduling of the same campaign.
  return j;
}

bool ExperimentReport::any_violated() const {
  for (const auto& v : verdicts)
    if (v.verdict == "violated") return true;
  for (const auto& c : mean_checks)
    if (c.verdict == "violated") return true;
  return false;
}

ExperimentReport run_monte_carlo(const ExperimentConfig& config) {
  const Scenario scenario = make_scenario(config);
  ExperimentReport report;
  report.config = config;

  const auto start = std::chrono::steady_clock::now();
  report.records = run_trials(config, scenario.trial);
  for (const auto& name : stat_names(report.records))
    report.summaries.push_back(
        summarize(name, collect(report.records, name)));
  scenario.post(report);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

TailFraction tail_fraction(std::span<const double> samples, double threshold,
                           bool below) {
  if (samples.empty())
    throw std::invalid_argument("tail_fraction: empty sample set");
  std::int64_t count = 0;
  for (const double v : samples)
    if (below ? v < threshold : v > threshold) ++count;
  const double n = double(samples.size());
  const double p = double(count) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

std::string compare_with_bound(const TailFraction& tf,
                               const bounds::BoundResult& bound) {
  if (!bound.probability)
    throw std::invalid_argument(
        "compare_with_bound: bound kind is not a probability bound");
  if (bound.vacuous) return "vacuous";
  if (tf.fraction - 3.0 * tf.std_error > bound.value) return "violated";
  return "holds";
}

MedianMeanGap median_mean_gap(std::span<const double> samples) {
  if (samples.empty())
    throw std::invalid_argument("median_mean_gap: empty sample set");
  const StatSummary s =
      summarize("", std::vector<double>(samples.begin(), samples.end()));
  return {s.mean, s.median, s.mean - s.median};
}

std::string samples_csv(const ExperimentReport& report) {
  std::string out = "trial,statistic,value\n";
  for (const auto& record : report.records)
    for (const auto& [stat, value] : record.stats) {
      out += std::to_string(record.trial);
      out += ',';
      out += stat;
      out += ',';
      out += format_double(value);
      out += '\n';
    }
  return out;
}

nlohmann::json report_to_json(const ExperimentReport& report,
                              const std::string& samples_csv_name) {
  nlohmann::json j;
  j["config"] = config_to_json(report.config);
  if (!samples_csv_name.empty()) j["samples_csv"] = samples_csv_name;

  j["summaries"] = nlohmann::json::array();
  for (const auto& s : report.summaries)
    j["summaries"].push_back({{"statistic", s.statistic},
                              {"count", s.count},
                              {"mean", s.mean},
                              {"median", s.median},
                              {"stddev", s.stddev}});

  j["verdicts"] = nlohmann::json::array();
  for (const auto& v : report.verdicts) {
    // Probability values are clamped to [0,1] in reports; log2_value
    // keeps the raw magnitude.
    const double shown = v.bound.probability
                             ? std::min(v.bound.value, 1.0)
                             : v.bound.value;
    nlohmann::json bound = {{"kind", v.bound.kind},
                            {"params", v.bound.params},
                            {"value", shown},
                            {"log2_value", v.bound.log2_value},
                            {"vacuous", v.bound.vacuous}};
    j["verdicts"].push_back({{"statistic", v.statistic},
                             {"deviation", v.deviation},
                             {"threshold", v.threshold},
                             {"side", v.below ? "below" : "above"},
                             {"tail_fraction", v.tail_fraction},
                             {"std_error", v.std_error},
                             {"bound", bound},
                             {"verdict", v.verdict}});
  }

  j["mean_checks"] = nlohmann::json::array();
  for (const auto& c : report.mean_checks)
    j["mean_checks"].push_back({{"name", c.name},
                                {"empirical", c.empirical},
                                {"target", c.target},
                                {"tolerance", c.tolerance},
                                {"one_sided", c.one_sided},
                                {"std_error", c.std_error},
                                {"verdict", c.verdict}});

  j["notes"] = report.notes;
  j["all_passed"] = !report.any_violated();
  return j;
}

}  // namespace genent::experiments
