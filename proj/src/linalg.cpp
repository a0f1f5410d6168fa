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

#include <cmath>
#include <limits>
#include <stdexcept>

namespace genent::linalg {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

void require_same_dims(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianEigensystem hermitian_eig(const Matrix& m) {
  require_square(m, "hermitian_eig");
  if (!is_hermitian(m))
    throw std::invalid_argument(
        "hermitian_eig: input deviates from Hermitian symmetry beyond 1e-10");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");

  const Eigen::Index n = m.rows();
  HermitianEigensystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  // Eigen returns ascending order; flip to non-increasing.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues[i] = solver.eigenvalues()[n - 1 - i];
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  out.residual = 0.0;
  const Matrix defect = m * out.eigenvectors -
                        out.eigenvectors * out.eigenvalues.asDiagonal();
  for (Eigen::Index i = 0; i < n; ++i)
    out.residual = std::max(out.residual, defect.col(i).norm());
  return out;
}

SchmidtDecomposition schmidt(const Vector& v, Eigen::Index dim_a,
                             Eigen::Index dim_b) {
  if (v.size() != dim_a * dim_b)
    throw std::invalid_argument("schmidt: vector length does not match dims");
  if (std::abs(v.norm() - 1.0) > kUnitNormTol)
    throw std::invalid_argument("schmidt: input vector is not unit norm");

  const Matrix m = reshape_bipartite(v, dim_a, dim_b);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left_basis = svd.matrixU();
  // |v> = sum_i c_i |u_i> (x) |conj(v_i)> for M = U diag(c) V^dagger.
  out.right_basis = svd.matrixV().conjugate();
  return out;
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  require_same_dims(rho, sigma, "trace_distance");
  require_square(rho, "trace_distance");
  const Matrix diff = rho - sigma;
  if (!is_hermitian(diff, 1e-9))
    throw std::invalid_argument("trace_distance: inputs must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  require_same_dims(rho, sigma, "fidelity");
  require_square(rho, "fidelity");
  if (!is_hermitian(rho, 1e-9) || !is_hermitian(sigma, 1e-9))
    throw std::invalid_argument("fidelity: inputs must be Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> rho_eig(rho);
  if (rho_eig.eigenvalues().minCoeff() < -kPsdTol)
    throw std::invalid_argument("fidelity: rho has a negative eigenvalue");
  Eigen::VectorXd clipped = rho_eig.eigenvalues().cwiseMax(0.0);
  const Matrix sqrt_rho = rho_eig.eigenvectors() *
                          clipped.cwiseSqrt().asDiagonal() *
                          rho_eig.eigenvectors().adjoint();

  Eigen::SelfAdjointEigenSolver<Matrix> inner(sqrt_rho * sigma * sqrt_rho,
                                              Eigen::EigenvaluesOnly);
  if (inner.eigenvalues().minCoeff() < -kPsdTol)
    throw std::invalid_argument("fidelity: sigma has a negative eigenvalue");
  double root_sum = 0.0;
  for (Eigen::Index i = 0; i < inner.eigenvalues().size(); ++i)
    root_sum += std::sqrt(std::max(0.0, inner.eigenvalues()[i]));
  return std::min(1.0, root_sum * root_sum);
}

double relative_entropy(const Matrix& rho, const Matrix& sigma) {
  require_same_dims(rho, sigma, "relative_entropy");
  require_square(rho, "relative_entropy");

  const HermitianEigensystem se = hermitian_eig(sigma);
  const HermitianEigensystem re = hermitian_eig(rho);

  // -Tr rho log2 sigma, checking sigma's null space for rho weight.
  double cross = 0.0;
  for (Eigen::Index j = 0; j < se.eigenvalues.size(); ++j) {
    const double mu = std::max(se.eigenvalues[j], 0.0);
    const double weight =
        (se.eigenvectors.col(j).adjoint() * rho * se.eigenvectors.col(j))(0)
            .real();
    if (mu <= kEigClipTol) {
      if (weight > 1e-9) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross -= weight * std::log2(mu);
  }

  double neg_entropy = 0.0;  // Tr rho log2 rho
  for (Eigen::Index i = 0; i < re.eigenvalues.size(); ++i) {
    const double lam = re.eigenvalues[i];
    if (lam > kEigClipTol) neg_entropy += lam * std::log2(lam);
  }
  return std::max(0.0, neg_entropy + cross);
}

double entropy_of_spectrum(const Eigen::VectorXd& spectrum) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double p = spectrum[i];
    if (p > kEigClipTol) h -= p * std::log2(p);
  }
  return h;
}

double vn_entropy(const Matrix& rho) {
  require_square(rho, "vn_entropy");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(solver.eigenvalues());
}

Matrix reshape_bipartite(const Vector& v, Eigen::Index dim_a,
                         Eigen::Index dim_b) {
  if (v.size() != dim_a * dim_b)
    throw std::invalid_argument("reshape_bipartite: size mismatch");
  return Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                        Eigen::Dynamic, Eigen::RowMajor>>(
      v.data(), dim_a, dim_b);
}

Matrix reduced_a(const Vector& v, Eigen::Index dim_a, Eigen::Index dim_b) {
  const Matrix m = reshape_bipartite(v, dim_a, dim_b);
  return m * m.adjoint();
}

Matrix reduced_b(const Vector& v, Eigen::Index dim_a, Eigen::Index dim_b) {
  const Matrix m = reshape_bipartite(v, dim_a, dim_b);
  return (m.adjoint() * m).transpose();
}

}  // namespace genent::linalg
