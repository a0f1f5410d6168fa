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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "genent/states.hpp"

using namespace genent;
using linalg::Matrix;
using linalg::Vector;

namespace {

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

}  // namespace

TEST_CASE("haar_pure on a one-dimensional space is the unique state") {
  const Vector v = sampler::haar_pure({1}, {3, 9});
  CHECK(std::abs(v[0]) == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("haar_pure is deterministic in the seed") {
  const Vector a = sampler::haar_pure({2, 2}, {77, 5});
  const Vector b = sampler::haar_pure({2, 2}, {77, 5});
  REQUIRE(a.size() == b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  const Vector c = sampler::haar_pure({2, 2}, {77, 6});
  CHECK((a - c).norm() > 1e-6);
}

TEST_CASE("haar_pure basis overlap averages to 1/d") {
  const int n = 100000;
  double sum = 0.0;
  for (int t = 0; t < n; ++t)
    sum += std::norm(sampler::haar_pure({2, 2}, {11, std::uint64_t(t)})[0]);
  CHECK(sum / n == doctest::Approx(0.25).epsilon(0.04));
  CHECK(std::abs(sum / n - 0.25) < 0.01);
}

TEST_CASE("haar_unitary is unitary and deterministic") {
  for (int t = 0; t < 50; ++t) {
    const Matrix u = sampler::haar_unitary(5, {13, std::uint64_t(t)});
    CHECK((u.adjoint() * u - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() <=
          1e-8);
  }
  const Matrix a = sampler::haar_unitary(3, {14, 0});
  const Matrix b = sampler::haar_unitary(3, {14, 0});
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("haar_unitary in dimension one is a uniform phase") {
  std::complex<double> mean = 0.0;
  const int n = 20000;
  for (int t = 0; t < n; ++t) {
    const Matrix u = sampler::haar_unitary(1, {15, std::uint64_t(t)});
    CHECK(std::abs(std::abs(u(0, 0)) - 1.0) <= 1e-12);
    mean += u(0, 0);
  }
  // A uniform phase averages to zero.
  CHECK(std::abs(mean) / n < 0.02);
}

TEST_CASE("haar_unitary first entry has mean squared modulus 1/d") {
  const int n = 100000;
  double sum = 0.0;
  for (int t = 0; t < n; ++t)
    sum += std::norm(sampler::haar_unitary(4, {16, std::uint64_t(t)})(0, 0));
  CHECK(std::abs(sum / n - 0.25) < 0.01);
}

TEST_CASE("random_subspace columns are orthonormal across samples") {
  for (int t = 0; t < 1000; ++t) {
    const auto v = sampler::random_subspace(2, 3, 2, {17, std::uint64_t(t)});
    CHECK((v.columns.adjoint() * v.columns - Matrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() <= 1e-8);
  }
}

TEST_CASE("random_subspace spans the whole space at s = dA dB") {
  const auto v = sampler::random_subspace(2, 2, 4, {18, 0});
  const Matrix p = v.columns * v.columns.adjoint();
  CHECK((p - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("a one-dimensional random subspace is a haar pure state") {
  // G_1 is the projective space: the single column is a unit vector with
  // the same distribution as haar_pure.
  std::vector<double> from_subspace, from_pure;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    from_subspace.push_back(
        std::norm(sampler::random_subspace(2, 2, 1, {19, std::uint64_t(t)})
                      .columns(0, 0)));
    from_pure.push_back(
        std::norm(sampler::haar_pure({2, 2}, {20, std::uint64_t(t)})[0]));
  }
  CHECK(two_sample_ks(from_subspace, from_pure) < ks_critical(0.001, n, n));
}

TEST_CASE("random_subspace rejects out-of-range dimensions") {
  CHECK_THROWS_AS(sampler::random_subspace(2, 2, 5, {0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sampler::random_subspace(2, 2, 0, {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("random_mixed with a one-dimensional environment is pure") {
  const Matrix rho = sampler::random_mixed(4, 1, {21, 0});
  CHECK(rho.squaredNorm() == doctest::Approx(1).epsilon(1e-10));
}

TEST_CASE("random_mixed is a valid density matrix") {
  for (int t = 0; t < 50; ++t) {
    const Matrix rho = sampler::random_mixed(4, 3, {22, std::uint64_t(t)});
    CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("random_mixed matches tracing an environment out of haar_pure") {
  for (int t = 0; t < 10; ++t) {
    const rng::SeedSpec seed{23, std::uint64_t(t)};
    const Matrix direct = sampler::random_mixed(4, 3, seed);
    const auto joint = sampler::haar_pure_register({4, 3}, seed);
    const Matrix traced =
        states::partial_trace(joint, {0}).density_matrix();
    CHECK((direct - traced).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("random_mixed mean purity matches (d+s)/(ds+1)") {
  const int n = 20000;
  double sum = 0.0;
  for (int t = 0; t < n; ++t)
    sum += sampler::random_mixed(4, 4, {24, std::uint64_t(t)}).squaredNorm();
  CHECK(std::abs(sum / n - 8.0 / 17.0) < 0.005);
}

TEST_CASE("random_mixed spectra are symmetric in (d, s)") {
  // The nonzero spectrum of a rank-s state on dimension d matches the
  // spectrum for swapped roles; purity is a spectrum functional.
  std::vector<double> p_ds, p_sd;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    p_ds.push_back(sampler::random_mixed(4, 6, {25, std::uint64_t(t)})
                       .squaredNorm());
    p_sd.push_back(sampler::random_mixed(6, 4, {26, std::uint64_t(t)})
                       .squaredNorm());
  }
  CHECK(two_sample_ks(p_ds, p_sd) < ks_critical(0.001, n, n));
}

TEST_CASE("max_mixed_on_subspace has a flat spectrum of entropy log2 s") {
  const auto v = sampler::random_subspace(2, 3, 3, {27, 0});
  const Matrix rho = sampler::max_mixed_on_subspace(v);
  CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-10);
  CHECK(linalg::vn_entropy(rho) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-8));

  const auto full = sampler::random_subspace(2, 2, 4, {27, 1});
  CHECK((sampler::max_mixed_on_subspace(full) - Matrix::Identity(4, 4) / 4.0)
            .cwiseAbs()
            .maxCoeff() <= 1e-8);

  const auto single = sampler::random_subspace(2, 2, 1, {27, 2});
  const Matrix pure_rho = sampler::max_mixed_on_subspace(single);
  CHECK((pure_rho - single.columns.col(0) * single.columns.col(0).adjoint())
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
}

TEST_CASE("statistics are invariant under a fixed unitary rotation") {
  // Two-sample KS on f(phi) = |<e0|phi>|^2 with one sample rotated by a
  // fixed unitary W.
  const Matrix w = sampler::haar_unitary(4, {28, 0});
  std::vector<double> plain, rotated;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    plain.push_back(
        std::norm(sampler::haar_pure({2, 2}, {29, std::uint64_t(t)})[0]));
    const Vector phi = sampler::haar_pure({2, 2}, {30, std::uint64_t(t)});
    rotated.push_back(std::norm((w * phi)[0]));
  }
  CHECK(two_sample_ks(plain, rotated) < ks_critical(0.001, n, n));
}
