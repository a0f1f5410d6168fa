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

#include <Eigen/Dense>
#include <complex>

namespace genent::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kUnitNormTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kEigClipTol = 1e-12;

/// Eigendecomposition of a Hermitian matrix with a residual certificate.
struct HermitianEigensystem {
  Eigen::VectorXd eigenvalues;  // sorted non-increasing
  Matrix eigenvectors;          // orthonormal columns, matching order
  double residual;              // max_i ||M v_i - lambda_i v_i||_2
};

/// Bipartite pure-state decomposition |v> = sum_i c_i |e_i>|f_i>.
/// Carries all min(dA,dB) coefficients (zeros included) so callers can
/// build maximally entangled partners from the full local bases.
struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;  // non-increasing, sum of squares = 1
  Matrix left_basis;             // dA x min(dA,dB)
  Matrix right_basis;            // dB x min(dA,dB)

  Eigen::Index rank(double tol = 1e-10) const {
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < coefficients.size(); ++i)
      if (coefficients[i] > tol) ++r;
    return r;
  }
};

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

/// Sorted, residual-certified Hermitian eigendecomposition.
/// Throws std::invalid_argument on non-square or non-Hermitian input.
HermitianEigensystem hermitian_eig(const Matrix& m);

/// Schmidt decomposition of a unit vector on a dim_a x dim_b split,
/// row-major indexing with the A factor slowest.
SchmidtDecomposition schmidt(const Vector& v, Eigen::Index dim_a,
                             Eigen::Index dim_b);

/// ||rho - sigma||_1 = sum of |eigenvalues| of the difference.
double trace_distance(const Matrix& rho, const Matrix& sigma);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 in [0,1].
double fidelity(const Matrix& rho, const Matrix& sigma);

/// Relative entropy D(rho||sigma) in bits. Returns +infinity when rho
/// has support outside the support of sigma.
double relative_entropy(const Matrix& rho, const Matrix& sigma);

/// -sum p log2 p over a spectrum, with 0 log 0 := 0 and eigenvalues in
/// [-1e-12, 0) clipped to zero.
double entropy_of_spectrum(const Eigen::VectorXd& spectrum);

/// Von Neumann entropy in bits of a Hermitian PSD matrix.
double vn_entropy(const Matrix& rho);

/// Row-major reshape of a bipartite vector into a dim_a x dim_b matrix:
/// M(a, b) = v[a * dim_b + b].
Matrix reshape_bipartite(const Vector& v, Eigen::Index dim_a,
                         Eigen::Index dim_b);

/// Reduced density matrix on the A (resp. B) factor of a bipartite
/// pure state, computed without forming the full projector.
Matrix reduced_a(const Vector& v, Eigen::Index dim_a, Eigen::Index dim_b);
Matrix reduced_b(const Vector& v, Eigen::Index dim_a, Eigen::Index dim_b);

}  // namespace genent::linalg
