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

#include "genent/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

#include "genent/sampler.hpp"

using namespace genent;
using linalg::Matrix;
using linalg::Vector;

namespace {

Matrix diag3(double a, double b, double c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Vector basis_vector(Eigen::Index d, Eigen::Index i) {
  Vector v = Vector::Zero(d);
  v[i] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("hermitian_eig sorts a diagonal matrix") {
  const auto eig = linalg::hermitian_eig(diag3(3, 1, 2));
  CHECK(eig.eigenvalues[0] == doctest::Approx(3));
  CHECK(eig.eigenvalues[1] == doctest::Approx(2));
  CHECK(eig.eigenvalues[2] == doctest::Approx(1));
  CHECK(eig.residual <= 1e-8 * 3);
}

TEST_CASE("hermitian_eig on the identity") {
  const auto eig = linalg::hermitian_eig(Matrix::Identity(5, 5));
  for (int i = 0; i < 5; ++i) CHECK(eig.eigenvalues[i] == doctest::Approx(1));
  CHECK(eig.residual <= 1e-12);
}

TEST_CASE("hermitian_eig on the bit-flip matrix") {
  // Characteristic polynomial lambda^2 - 1: eigenvalues +1, -1.
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  const auto eig = linalg::hermitian_eig(x);
  CHECK(eig.eigenvalues[0] == doctest::Approx(1));
  CHECK(eig.eigenvalues[1] == doctest::Approx(-1));
  // Orthonormality of the eigenvector family.
  const Matrix gram =
      eig.eigenvectors.adjoint() * eig.eigenvectors - Matrix::Identity(2, 2);
  CHECK(gram.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("hermitian_eig rejects bad input") {
  Matrix bad(2, 3);
  bad.setZero();
  CHECK_THROWS_AS(linalg::hermitian_eig(bad), std::invalid_argument);
  Matrix nonherm(2, 2);
  nonherm << 0, 1, 0, 0;
  CHECK_THROWS_AS(linalg::hermitian_eig(nonherm), std::invalid_argument);
}

TEST_CASE("schmidt of a product state has rank one") {
  Vector v = Vector::Zero(4);
  v[0] = 1.0;  // |0>|0>
  const auto sd = linalg::schmidt(v, 2, 2);
  CHECK(sd.coefficients[0] == doctest::Approx(1));
  CHECK(sd.rank() == 1);
}

TEST_CASE("schmidt of a Bell state is flat") {
  Vector v = Vector::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  const auto sd = linalg::schmidt(v, 2, 2);
  CHECK(sd.coefficients[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(sd.coefficients[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(sd.rank() == 2);
}

TEST_CASE("schmidt recovers coefficients of a state already in Schmidt form") {
  Vector v = Vector::Zero(4);
  v[0] = std::sqrt(0.9);
  v[3] = std::sqrt(0.1);
  const auto sd = linalg::schmidt(v, 2, 2);
  CHECK(sd.coefficients[0] == doctest::Approx(std::sqrt(0.9)));
  CHECK(sd.coefficients[1] == doctest::Approx(std::sqrt(0.1)));
}

TEST_CASE("schmidt reconstruction matches the input vector") {
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index da = 3, db = 5;
    const Vector v = sampler::haar_pure({da, db}, {901, std::uint64_t(trial)});
    const auto sd = linalg::schmidt(v, da, db);
    double sumsq = 0.0;
    Vector rebuilt = Vector::Zero(da * db);
    for (Eigen::Index i = 0; i < sd.coefficients.size(); ++i) {
      sumsq += sd.coefficients[i] * sd.coefficients[i];
      for (Eigen::Index a = 0; a < da; ++a)
        rebuilt.segment(a * db, db) +=
            sd.coefficients[i] * sd.left_basis(a, i) * sd.right_basis.col(i);
    }
    CHECK(sumsq == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((rebuilt - v).norm() <= 1e-8);
  }
}

TEST_CASE("schmidt validates its input") {
  Vector v = Vector::Zero(4);
  v[0] = 2.0;
  CHECK_THROWS_AS(linalg::schmidt(v, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(linalg::schmidt(v, 2, 3), std::invalid_argument);
}

TEST_CASE("trace distance basics") {
  const Matrix rho = projector(basis_vector(2, 0));
  const Matrix sig = projector(basis_vector(2, 1));
  CHECK(linalg::trace_distance(rho, rho) == doctest::Approx(0).epsilon(1e-12));
  CHECK(linalg::trace_distance(rho, sig) == doctest::Approx(2));
  // Eigenvalues of |0><0| - I/2 are +1/2 and -1/2.
  CHECK(linalg::trace_distance(rho, Matrix::Identity(2, 2) / 2.0) ==
        doctest::Approx(1));
  CHECK_THROWS_AS(linalg::trace_distance(rho, Matrix::Identity(3, 3) / 3.0),
                  std::invalid_argument);
}

TEST_CASE("fidelity basics") {
  const Matrix rho = projector(basis_vector(2, 0));
  const Matrix sig = projector(basis_vector(2, 1));
  CHECK(linalg::fidelity(rho, rho) == doctest::Approx(1));
  CHECK(linalg::fidelity(rho, sig) == doctest::Approx(0).epsilon(1e-10));
  CHECK(linalg::fidelity(rho, Matrix::Identity(2, 2) / 2.0) ==
        doctest::Approx(0.5));
}

TEST_CASE("fidelity of pure states equals the squared overlap") {
  for (int trial = 0; trial < 10; ++trial) {
    const Vector a = sampler::haar_pure({4}, {31, std::uint64_t(2 * trial)});
    const Vector b = sampler::haar_pure({4}, {31, std::uint64_t(2 * trial + 1)});
    const double direct = std::norm((a.adjoint() * b)(0));
    CHECK(linalg::fidelity(projector(a), projector(b)) ==
          doctest::Approx(direct).epsilon(1e-8));
  }
}

TEST_CASE("relative entropy basics") {
  const Matrix rho = projector(basis_vector(2, 0));
  CHECK(linalg::relative_entropy(rho, rho) == doctest::Approx(0).epsilon(1e-9));
  // Commuting diagonal case: D(|0><0| || I/2) = log2(2) = 1 bit.
  CHECK(linalg::relative_entropy(rho, Matrix::Identity(2, 2) / 2.0) ==
        doctest::Approx(1));
  CHECK(linalg::relative_entropy(Matrix::Identity(4, 4) / 4.0,
                                 Matrix::Identity(4, 4) / 4.0) ==
        doctest::Approx(0).epsilon(1e-9));
}

TEST_CASE("relative entropy flags support violations with +infinity") {
  const Matrix rho = Matrix::Identity(2, 2) / 2.0;
  const Matrix sig = projector(basis_vector(2, 0));
  CHECK(std::isinf(linalg::relative_entropy(rho, sig)));
}

TEST_CASE("relative entropy to the maximally mixed state is log d - S") {
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index d = 4;
    const Matrix rho = sampler::random_mixed(d, 3, {77, std::uint64_t(trial)});
    const double lhs =
        linalg::relative_entropy(rho, Matrix::Identity(d, d) / double(d));
    const double rhs = std::log2(double(d)) - linalg::vn_entropy(rho);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
  }
}

TEST_CASE("Fuchs-van de Graaf inequalities on random pairs") {
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix rho = sampler::random_mixed(3, 3, {501, std::uint64_t(trial)});
    const Matrix sig =
        sampler::random_mixed(3, 2, {502, std::uint64_t(trial)});
    const double f = linalg::fidelity(rho, sig);
    const double half_t = linalg::trace_distance(rho, sig) / 2.0;
    CHECK(1.0 - std::sqrt(f) <= half_t + 1e-9);
    CHECK(half_t <= std::sqrt(1.0 - f) + 1e-9);
  }
}

TEST_CASE("Pinsker inequality against the maximally mixed state") {
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = 4;
    const Matrix rho = sampler::random_mixed(d, 2, {603, std::uint64_t(trial)});
    const Matrix mm = Matrix::Identity(d, d) / double(d);
    CHECK(linalg::trace_distance(rho, mm) <=
          std::sqrt(2.0 * linalg::relative_entropy(rho, mm)) + 1e-9);
  }
}

TEST_CASE("eigenvalues sum to the trace with certified residuals") {
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix rho = sampler::random_mixed(5, 5, {704, std::uint64_t(trial)});
    const auto eig = linalg::hermitian_eig(rho);
    CHECK(eig.eigenvalues.sum() ==
          doctest::Approx(rho.trace().real()).epsilon(1e-9));
    const double op_norm = eig.eigenvalues.cwiseAbs().maxCoeff();
    CHECK(eig.residual <= 1e-8 * op_norm);
    CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors -
           Matrix::Identity(5, 5))
              .cwiseAbs()
              .maxCoeff() <= 1e-8);
  }
}

TEST_CASE("reduced density matrices agree with reshape conventions") {
  const Eigen::Index da = 3, db = 4;
  const Vector v = sampler::haar_pure({da, db}, {88, 0});
  const Matrix ra = linalg::reduced_a(v, da, db);
  const Matrix rb = linalg::reduced_b(v, da, db);
  CHECK(ra.trace().real() == doctest::Approx(1));
  CHECK(rb.trace().real() == doctest::Approx(1));
  // Both reductions carry the same nonzero spectrum.
  CHECK(linalg::vn_entropy(ra) == doctest::Approx(linalg::vn_entropy(rb)));
  // Entry check against the explicit sum.
  std::complex<double> direct = 0.0;
  for (Eigen::Index b = 0; b < db; ++b)
    direct += v[0 * db + b] * std::conj(v[1 * db + b]);
  CHECK(std::abs(ra(0, 1) - direct) <= 1e-12);
}
