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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace genent;
using bounds::Params;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
}  // namespace

TEST_CASE("absolute constants are exact") {
  const auto c = bounds::constants();
  CHECK(c.c1 == 1.0 / (9.0 * kPi * kPi * kPi * kLn2));
  CHECK(c.c2 == 1.0 / (2.0 * kPi * kPi * kLn2));
  CHECK(c.c3 == 1.0 / (8.0 * kPi * kPi * kLn2));
  CHECK(c.gamma == 1.0 / 1753.0);
}

TEST_CASE("page mean entropy, tiny cases") {
  CHECK(bounds::page_mean_entropy(1, 7).mean_bits == doctest::Approx(0));
  // (2,2): (1/3 + 1/4 - 1/4) / ln 2 = 1/(3 ln 2).
  CHECK(bounds::page_mean_entropy(2, 2).mean_bits ==
        doctest::Approx(1.0 / (3.0 * kLn2)).epsilon(1e-14));
}

TEST_CASE("page mean entropy at (2, 1024) sits between its bounds") {
  const auto pm = bounds::page_mean_entropy(2, 1024);
  // Independent summation oracle, accumulated in reverse order.
  long double acc = 0.0L;
  for (long j = 1025; j <= 2048; ++j) acc += 1.0L / (long double)j;
  const double oracle = double((acc - 0.5L / 1024.0L) / 0.6931471805599453094L);
  CHECK(pm.mean_bits == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(pm.mean_bits == doctest::Approx(0.9989434245844141).epsilon(1e-12));
  CHECK(pm.mean_bits > pm.lower_bound_bits);
  CHECK(pm.mean_bits < 1.0);
}

TEST_CASE("page mean exceeds its lower bound on a dimension grid") {
  for (const auto& [da, db] : {std::pair<std::int64_t, std::int64_t>{2, 2},
                               {2, 8},
                               {4, 4},
                               {4, 16},
                               {8, 8},
                               {8, 32},
                               {16, 1024}}) {
    const auto pm = bounds::page_mean_entropy(da, db);
    CHECK(pm.mean_bits > pm.lower_bound_bits);
  }
}

TEST_CASE("page mean rejects unordered dims") {
  CHECK_THROWS_AS(bounds::page_mean_entropy(4, 2), std::invalid_argument);
}

TEST_CASE("entropy concentration at the hand-computed point") {
  // d_A = d_B = 3, alpha = log2(3): the alpha and log factors cancel,
  // leaving 2^(-8 C3).
  const auto b = bounds::tail_bound("entropy_concentration",
                                    {{"d_a", 3},
                                     {"d_b", 3},
                                     {"alpha", std::log2(3.0)}});
  CHECK(b.value == doctest::Approx(0.9036427510013243).epsilon(1e-14));
  CHECK(b.log2_value == doctest::Approx(-0.14617556917780066).epsilon(1e-14));
  CHECK_FALSE(b.vacuous);
  CHECK(b.probability);
}

TEST_CASE("projector overlap weak form at unit arguments") {
  const auto b = bounds::tail_bound(
      "projector_overlap_weak", {{"q", 1}, {"s", 1}, {"epsilon", 1}});
  CHECK(b.value == doctest::Approx(0.8464817248906141).epsilon(1e-14));
}

TEST_CASE("one_copy stays finite in log space at huge rank") {
  const auto b =
      bounds::tail_bound("one_copy", {{"d_b", 2}, {"s", 1e6}});
  CHECK(b.log2_value == doctest::Approx(-2265.1900357785434).epsilon(1e-12));
  CHECK(b.value == 0.0);  // underflows, log2 carries the value
  CHECK_FALSE(b.vacuous);
}

TEST_CASE("levy bounds evaluate their displayed formulas") {
  const auto c = bounds::constants();
  const auto mean = bounds::tail_bound(
      "levy_mean", {{"k", 31}, {"alpha", 0.5}, {"eta", 2.0}});
  CHECK(mean.log2_value ==
        doctest::Approx(1.0 - c.c1 * 32.0 * 0.25 / 4.0).epsilon(1e-14));
  const auto median = bounds::tail_bound(
      "levy_median", {{"k", 31}, {"alpha", 0.5}, {"eta", 2.0}});
  CHECK(median.log2_value ==
        doctest::Approx(-c.c2 * 30.0 * 0.25 / 4.0).epsilon(1e-14));
}

TEST_CASE("strong projector bounds dominate the weak form on a grid") {
  for (int k = 1; k <= 20; ++k) {
    const double eps = std::min(1.0, 0.05 * k);
    const Params p = {{"q", 2}, {"s", 3}, {"epsilon", eps}};
    const double upper =
        bounds::tail_bound("projector_overlap_upper", p).log2_value;
    const double lower =
        bounds::tail_bound("projector_overlap_lower", p).log2_value;
    const double weak =
        bounds::tail_bound("projector_overlap_weak", p).log2_value;
    CHECK(upper <= weak + 1e-12);
    CHECK(lower <= weak + 1e-12);
  }
}

TEST_CASE("tail bounds are monotone in deviation and dominant dimension") {
  double prev = std::numeric_limits<double>::infinity();
  for (double alpha = 0.1; alpha <= 1.01; alpha += 0.1) {
    const double v = bounds::tail_bound("entropy_concentration",
                                        {{"d_a", 8},
                                         {"d_b", 64},
                                         {"alpha", alpha}})
                         .log2_value;
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double db = 64; db <= 4096; db *= 2) {
    const double v = bounds::tail_bound("eig_concentration",
                                        {{"d_a", 4},
                                         {"d_b", db},
                                         {"epsilon", 0.5}})
                         .log2_value;
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 10; ++k) {
    const double v = bounds::tail_bound("eig_concentration",
                                        {{"d_a", 4},
                                         {"d_b", 4096},
                                         {"epsilon", std::min(1.0, 0.1 * k)}})
                         .log2_value;
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("subspace_failure matches its explicit expression") {
  const auto b = bounds::tail_bound(
      "subspace_failure",
      {{"d_a", 8}, {"d_b", 64}, {"s", 4}, {"alpha", 1.0}});
  const double expect =
      2.0 * 4 * std::log2(15.0 * 3.0) -
      511.0 / (32.0 * kPi * kPi * kLn2 * 9.0);
  CHECK(b.log2_value == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("subspace_dim floors and matches hand arithmetic") {
  CHECK(bounds::threshold_calculator(
            "subspace_dim", {{"d_a", 16}, {"d_b", 16}, {"alpha", 1}})
            .value == 0.0);
  CHECK(bounds::threshold_calculator(
            "subspace_dim", {{"d_a", 1024}, {"d_b", 1024}, {"alpha", 1}})
            .value == 1.0);
}

TEST_CASE("separable_threshold and cor17_floor match hand arithmetic") {
  CHECK(bounds::threshold_calculator("separable_threshold",
                                     {{"d_a", 2}, {"d_b", 2}})
            .value == 96.0);
  CHECK(bounds::threshold_calculator("cor17_floor", {{"d", 4}, {"alpha", 0.5}})
            .value == doctest::Approx(0.05730495911103659).epsilon(1e-14));
}

TEST_CASE("mutual_info_random caps agree at the rank crossover") {
  const double below = bounds::threshold_calculator(
                           "mutual_info_random",
                           {{"d_a", 4}, {"d_b", 4}, {"s", 16}, {"alpha", 0.5}})
                           .value;
  const double above = bounds::threshold_calculator(
                           "mutual_info_random",
                           {{"d_a", 4}, {"d_b", 4}, {"s", 16.0001}, {"alpha", 0.5}})
                           .value;
  CHECK(below == doctest::Approx(0.5 + 1.0 / kLn2).epsilon(1e-9));
  CHECK(above == doctest::Approx(below).epsilon(1e-4));

  const double low_rank = bounds::threshold_calculator(
                              "mutual_info_random",
                              {{"d_a", 4}, {"d_b", 4}, {"s", 2}, {"alpha", 0.5}})
                              .value;
  CHECK(low_rank ==
        doctest::Approx(2 + 2 - 1 + 0.5 + 2.0 / (16.0 * kLn2)).epsilon(1e-12));
}

TEST_CASE("mutual_info_cap matches its expression") {
  const auto c = bounds::constants();
  const auto b = bounds::threshold_calculator("mutual_info_cap",
                                              {{"d_a", 16}, {"alpha", 0.5}});
  CHECK(b.value == doctest::Approx(2.5 * std::log2(4.0) -
                                   std::log2(c.gamma * std::pow(0.5, 2.5)) +
                                   1.0)
                       .epsilon(1e-12));
}

TEST_CASE("multiparty thresholds evaluate and respect ranges") {
  const auto high = bounds::threshold_calculator(
      "multiparty_eof_high", {{"n", 8}, {"d", 4}, {"alpha", 0.5}});
  CHECK(high.value ==
        doctest::Approx(4.0 + std::log2(8 * 2 / 0.5) / 2.0).epsilon(1e-12));
  const auto low = bounds::threshold_calculator(
      "multiparty_eof_low", {{"n", 8}, {"d", 4}, {"epsilon", 0.5}, {"m2", 2}});
  CHECK(low.value ==
        doctest::Approx(4.0 - 2.0 * std::log2(8 * 2 / 0.25) / 2.0)
            .epsilon(1e-12));
  CHECK(bounds::threshold_calculator("multiparty_separable",
                                     {{"n", 9}, {"d", 2}})
            .value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("log-space evaluation stays finite at extreme parameters") {
  const auto eig = bounds::tail_bound(
      "eig_concentration",
      {{"d_a", 4}, {"d_b", std::exp2(32)}, {"epsilon", 0.5}});
  CHECK(std::isfinite(eig.log2_value));
  const auto oc = bounds::tail_bound("one_copy",
                                     {{"d_b", 4096}, {"s", std::exp2(60)}});
  CHECK(std::isfinite(oc.log2_value));
  const auto sf = bounds::tail_bound("subspace_failure",
                                     {{"d_a", std::exp2(16)},
                                      {"d_b", std::exp2(32)},
                                      {"s", std::exp2(30)},
                                      {"alpha", 1.0}});
  CHECK(std::isfinite(sf.log2_value));
  const auto mc = bounds::tail_bound(
      "multiparty_cut", {{"n", 64}, {"d", 2}, {"alpha", 0.25}});
  CHECK(std::isfinite(mc.log2_value));
}

TEST_CASE("vacuous probability bounds are flagged") {
  const auto b = bounds::tail_bound(
      "levy_mean", {{"k", 3}, {"alpha", 0.01}, {"eta", 1.0}});
  CHECK(b.value >= 1.0);
  CHECK(b.vacuous);
}

TEST_CASE("out-of-range parameters are rejected per kind") {
  CHECK_THROWS_AS(bounds::tail_bound("entropy_concentration",
                                     {{"d_a", 2}, {"d_b", 64}, {"alpha", 0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(bounds::tail_bound("eig_concentration",
                                     {{"d_a", 4}, {"d_b", 64}, {"epsilon", 1.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(bounds::tail_bound("oneway_vanishing",
                                     {{"d_b", 4}, {"s", 100}, {"epsilon", 0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      bounds::tail_bound("subspace_failure",
                         {{"d_a", 8}, {"d_b", 64}, {"s", 4}, {"alpha", 3.5}}),
      std::invalid_argument);
  CHECK_THROWS_AS(bounds::tail_bound("no_such_kind", {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(bounds::threshold_calculator("subspace_dim",
                                               {{"d_a", 16}, {"d_b", 16}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(bounds::threshold_calculator("no_such_kind", {}),
                  std::invalid_argument);
}

TEST_CASE("oneway_value enforces its regime constraints") {
  // d_b must lie in [s/eps, eps*s*d_a].
  CHECK_THROWS_AS(
      bounds::tail_bound(
          "oneway_value",
          {{"d_a", 4}, {"d_b", 8}, {"s", 64}, {"epsilon", 0.25}}),
      std::invalid_argument);
  const auto ok = bounds::tail_bound(
      "oneway_value",
      {{"d_a", 64}, {"d_b", 256}, {"s", 64}, {"epsilon", 0.25}});
  CHECK(std::isfinite(ok.log2_value));
}
