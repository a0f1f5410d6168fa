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

#include "genent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "genent/sampler.hpp"

namespace genent::measures {

namespace {

constexpr double kNptThreshold = -1e-9;
constexpr double kWitnessThreshold = -1e-7;

void require_bipartite(const Register& r, const char* who) {
  if (r.num_parties() != 2)
    throw std::invalid_argument(std::string(who) +
                                ": register must have exactly two parties");
}

std::vector<int> complement_of(const Cut& cut, Eigen::Index n_parties) {
  std::vector<bool> in_x(n_parties, false);
  for (const int p : cut.parties) {
    if (p < 0 || p >= n_parties)
      throw std::invalid_argument("Cut: party index out of range");
    in_x[p] = true;
  }
  std::vector<int> complement;
  for (int p = 0; p < n_parties; ++p)
    if (!in_x[p]) complement.push_back(p);
  if (cut.parties.empty() || complement.empty())
    throw std::invalid_argument("Cut: X must be a non-empty proper subset");
  return complement;
}

/// Entropy in bits of the A-side reduction of a unit vector on dA x dB.
double entanglement_of_vector(const Vector& v, Eigen::Index dim_a,
                              Eigen::Index dim_b) {
  if (dim_a == 1 || dim_b == 1) return 0.0;
  if (dim_a == 2 && dim_b >= 2) {
    // Closed-form eigenvalues of the 2x2 reduction.
    const Matrix m = linalg::reshape_bipartite(v, 2, dim_b);
    const double a = m.row(0).squaredNorm();
    const double b = m.row(1).squaredNorm();
    const std::complex<double> c = (m.row(0) * m.row(1).adjoint())(0);
    const double tr = a + b;
    const double det = a * b - std::norm(c);
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    Eigen::VectorXd spectrum(2);
    spectrum << tr / 2.0 + disc, tr / 2.0 - disc;
    return linalg::entropy_of_spectrum(spectrum / tr);
  }
  const Matrix rho = dim_a <= dim_b ? linalg::reduced_a(v, dim_a, dim_b)
                                    : linalg::reduced_b(v, dim_a, dim_b);
  return linalg::vn_entropy(rho);
}

/// Small unitary rotation of a column pair, magnitude controlled by step.
void rotate_pair(Matrix& m, Eigen::Index i, Eigen::Index j, double step,
                 rng::CounterRng& gen) {
  const double theta = step * gen.gaussian();
  const double phase = 2.0 * M_PI * gen.uniform01();
  const std::complex<double> e(std::cos(phase), std::sin(phase));
  const std::complex<double> c = std::cos(theta);
  const std::complex<double> s = std::sin(theta);
  const Vector ci = m.col(i), cj = m.col(j);
  m.col(i) = c * ci + s * e * cj;
  m.col(j) = -s * std::conj(e) * ci + c * cj;
}

}  // namespace

double entropy(const Matrix& rho) { return linalg::vn_entropy(rho); }

double entropy(const Register& r) {
  if (r.is_pure()) return 0.0;
  return linalg::vn_entropy(r.density_matrix());
}

double pure_entanglement(const Register& r, const Cut& cut) {
  if (!r.is_pure())
    throw std::invalid_argument("pure_entanglement: payload must be pure");
  complement_of(cut, r.num_parties());  // validates the cut
  const Register reduced = states::partial_trace(r, cut.parties);
  return linalg::vn_entropy(reduced.density_matrix());
}

double mutual_information(const Register& r, const Cut& cut) {
  const std::vector<int> complement = complement_of(cut, r.num_parties());
  const double s_x = entropy(states::partial_trace(r, cut.parties).density_matrix());
  const double s_y = entropy(states::partial_trace(r, complement).density_matrix());
  const double s_xy = entropy(r);
  return s_x + s_y - s_xy;
}

double coherent_information(const Register& r) {
  require_bipartite(r, "coherent_information");
  const double s_b = entropy(states::partial_trace(r, {1}).density_matrix());
  return s_b - entropy(r);
}

NptResult is_npt(const Register& r) {
  require_bipartite(r, "is_npt");
  const Matrix pt = states::partial_transpose(r.as_mixed(), 1);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(pt, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig < kNptThreshold, min_eig};
}

bool purity_separable(const Register& r) {
  const Eigen::Index d = r.total_dim();
  if (d < 2)
    throw std::invalid_argument("purity_separable: total dimension must be >= 2");
  return states::purity(r) <= 1.0 / double(d - 1);
}

Matrix EnsembleDecomposition::reconstruct() const {
  if (members.empty()) return Matrix();
  Matrix rho = Matrix::Zero(members[0].size(), members[0].size());
  for (size_t i = 0; i < members.size(); ++i)
    rho += weights[static_cast<Eigen::Index>(i)] * members[i] *
           members[i].adjoint();
  return rho;
}

EofBound eof_upper_bound(const Register& r, int restarts, int iters,
                         rng::SeedSpec seed) {
  require_bipartite(r, "eof_upper_bound");
  if (restarts < 1)
    throw std::invalid_argument("eof_upper_bound: restarts must be >= 1");
  const Eigen::Index dim_a = r.dims()[0];
  const Eigen::Index dim_b = r.dims()[1];

  const linalg::HermitianEigensystem eig = linalg::hermitian_eig(r.to_density());
  Eigen::Index rank = 0;
  while (rank < eig.eigenvalues.size() && eig.eigenvalues[rank] > 1e-12)
    ++rank;
  if (rank == 0)
    throw std::invalid_argument("eof_upper_bound: state has zero rank");

  // D x rank matrix of sub-normalized eigen-members; every size-m
  // decomposition is canonical * W^T for an m x rank isometry W.
  Matrix canonical(eig.eigenvectors.rows(), rank);
  for (Eigen::Index i = 0; i < rank; ++i)
    canonical.col(i) =
        std::sqrt(eig.eigenvalues[i]) * eig.eigenvectors.col(i);

  const auto member_cost = [&](const Vector& unnormalized,
                               double& prob) -> double {
    prob = unnormalized.squaredNorm();
    if (prob < 1e-14) return 0.0;
    return prob * entanglement_of_vector(unnormalized / std::sqrt(prob),
                                         dim_a, dim_b);
  };

  EofBound best;
  best.bits = std::numeric_limits<double>::infinity();
  best.restarts_used = restarts;
  best.iterations = iters;
  Matrix best_members;

  if (rank == 1) {
    // Unique decomposition: the state is pure.
    double p = 0.0;
    best.bits = member_cost(canonical.col(0), p);
    best_members = canonical;
  }

  for (int restart = 0; rank > 1 && restart < restarts; ++restart) {
    rng::CounterRng gen(rng::substream(seed, 0x0E0Fu * 1000003ULL + restart));
    const Eigen::Index m = rank + (restart % (rank + 1));
    Matrix w = sampler::haar_isometry(m, rank, gen);
    Matrix members = canonical * w.transpose();  // D x m

    Eigen::VectorXd probs(m), costs(m);
    double objective = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      costs[j] = member_cost(members.col(j), probs[j]);
      objective += costs[j];
    }

    double step = 0.5;
    for (int it = 0; it < iters; ++it) {
      const Eigen::Index j = Eigen::Index(gen.next_u64() % std::uint64_t(m));
      Eigen::Index k = Eigen::Index(gen.next_u64() % std::uint64_t(m - 1));
      if (k >= j) ++k;

      const double theta = step * gen.gaussian();
      const double phase = 2.0 * M_PI * gen.uniform01();
      const std::complex<double> e(std::cos(phase), std::sin(phase));
      const double c = std::cos(theta), s = std::sin(theta);
      const Vector mj = c * members.col(j) + s * e * members.col(k);
      const Vector mk = -s * std::conj(e) * members.col(j) + c * members.col(k);

      double pj = 0.0, pk = 0.0;
      const double cj = member_cost(mj, pj);
      const double ck = member_cost(mk, pk);
      const double delta = cj + ck - costs[j] - costs[k];
      if (delta < 0.0) {
        members.col(j) = mj;
        members.col(k) = mk;
        probs[j] = pj;
        probs[k] = pk;
        costs[j] = cj;
        costs[k] = ck;
        objective += delta;
        step = std::min(1.0, step * 1.1);
      } else {
        step = std::max(1e-4, step * 0.95);
      }
    }

    if (objective < best.bits) {
      best.bits = objective;
      best_members = members;
    }
  }

  for (Eigen::Index j = 0; j < best_members.cols(); ++j) {
    const double p = best_members.col(j).squaredNorm();
    if (p < 1e-12) continue;
    best.decomposition.members.push_back(best_members.col(j) / std::sqrt(p));
    const Eigen::Index n = best.decomposition.weights.size();
    best.decomposition.weights.conservativeResize(n + 1);
    best.decomposition.weights[n] = p;
  }
  return best;
}

OnewayBound oneway_info_lower_bound(const Register& r, int restarts,
                                    rng::SeedSpec seed, int iters) {
  require_bipartite(r, "oneway_info_lower_bound");
  if (restarts < 1)
    throw std::invalid_argument("oneway_info_lower_bound: restarts must be >= 1");
  const Eigen::Index dim_a = r.dims()[0];
  const Eigen::Index dim_b = r.dims()[1];

  const linalg::HermitianEigensystem eig = linalg::hermitian_eig(r.to_density());
  std::vector<Matrix> reshaped;  // lambda-weighted dA x dB slices
  std::vector<double> lambdas;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] <= 1e-14) continue;
    reshaped.push_back(
        linalg::reshape_bipartite(eig.eigenvectors.col(k), dim_a, dim_b));
    lambdas.push_back(eig.eigenvalues[k]);
  }

  Matrix rho_b = Matrix::Zero(dim_b, dim_b);
  for (size_t k = 0; k < reshaped.size(); ++k)
    rho_b += lambdas[k] * (reshaped[k].adjoint() * reshaped[k]).transpose();
  const double s_b = linalg::vn_entropy(rho_b);

  // Holevo quantity of Bob's ensemble for the basis measurement {u_i}.
  const auto holevo = [&](const Matrix& basis) -> double {
    double conditional = 0.0;
    for (Eigen::Index i = 0; i < dim_a; ++i) {
      Matrix sigma = Matrix::Zero(dim_b, dim_b);
      for (size_t k = 0; k < reshaped.size(); ++k) {
        const Vector y = reshaped[k].transpose() * basis.col(i).conjugate();
        sigma += lambdas[k] * y * y.adjoint();
      }
      const double p = sigma.trace().real();
      if (p < 1e-14) continue;
      conditional += p * linalg::vn_entropy(sigma / p);
    }
    return s_b - conditional;
  };

  OnewayBound best;
  best.bits = -std::numeric_limits<double>::infinity();
  best.restarts_used = restarts;
  Matrix best_basis = Matrix::Identity(dim_a, dim_a);

  for (int restart = 0; restart < restarts; ++restart) {
    rng::CounterRng gen(rng::substream(seed, 0x10A7u * 1000003ULL + restart));
    Matrix basis = restart == 0 ? Matrix::Identity(dim_a, dim_a)
                                : sampler::haar_isometry(dim_a, dim_a, gen);
    double value = holevo(basis);
    double step = 0.4;
    for (int it = 0; it < iters && dim_a > 1; ++it) {
      Matrix proposal = basis;
      const Eigen::Index i = Eigen::Index(gen.next_u64() % std::uint64_t(dim_a));
      Eigen::Index j = Eigen::Index(gen.next_u64() % std::uint64_t(dim_a - 1));
      if (j >= i) ++j;
      rotate_pair(proposal, i, j, step, gen);
      const double candidate = holevo(proposal);
      if (candidate > value) {
        basis = std::move(proposal);
        value = candidate;
        step = std::min(1.0, step * 1.1);
      } else {
        step = std::max(1e-4, step * 0.95);
      }
    }
    if (value > best.bits) {
      best.bits = value;
      best_basis = basis;
    }
  }

  best.bits = std::max(0.0, best.bits);
  for (Eigen::Index i = 0; i < dim_a; ++i)
    best.povm.elements.push_back(best_basis.col(i) * best_basis.col(i).adjoint());
  return best;
}

namespace {

/// Partial transpose of a two-qubit density matrix over the second qubit.
Matrix two_qubit_pt(const Matrix& m) {
  Matrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out(i * 2 + l, k * 2 + j) = m(i * 2 + j, k * 2 + l);
  return out;
}

/// Rotates one frame column toward a random direction orthogonal to the
/// frame's span; keeps the frame an isometry.
bool perturb_frame(Matrix& frame, double step, rng::CounterRng& gen) {
  const Eigen::Index d = frame.rows();
  if (d <= frame.cols()) return false;  // frame already spans the space
  Vector w(d);
  for (Eigen::Index i = 0; i < d; ++i) w[i] = gen.complex_gaussian();
  w -= frame * (frame.adjoint() * w);
  const double norm = w.norm();
  if (norm < 1e-12) return false;
  w /= norm;
  const Eigen::Index col =
      Eigen::Index(gen.next_u64() % std::uint64_t(frame.cols()));
  const double theta = step * std::abs(gen.gaussian());
  frame.col(col) = std::cos(theta) * frame.col(col) + std::sin(theta) * w;
  return true;
}

}  // namespace

DistillWitness one_copy_distillable_search(const Register& r, int restarts,
                                           rng::SeedSpec seed, int iters) {
  require_bipartite(r, "one_copy_distillable_search");
  const Eigen::Index dim_a = r.dims()[0];
  const Eigen::Index dim_b = r.dims()[1];
  if (dim_a < 2 || dim_b < 2)
    throw std::invalid_argument(
        "one_copy_distillable_search: both parties need dimension >= 2");
  if (restarts < 1)
    throw std::invalid_argument("one_copy_distillable_search: restarts >= 1");

  const Matrix rho = r.to_density();

  // -lambda_min of the partial transpose of the projected two-qubit block.
  const auto objective = [&](const Matrix& fa, const Matrix& fb) -> double {
    Matrix k(dim_a * dim_b, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        for (Eigen::Index a = 0; a < dim_a; ++a)
          k.block(a * dim_b, i * 2 + j, dim_b, 1) = fa(a, i) * fb.col(j);
      }
    Matrix block = k.adjoint() * rho * k;
    const double tr = block.trace().real();
    if (tr < 1e-12) return -1.0;  // the projection annihilates the state
    block /= tr;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(two_qubit_pt(block),
                                                 Eigen::EigenvaluesOnly);
    return -solver.eigenvalues().minCoeff();
  };

  DistillWitness best;
  best.found = false;
  best.negativity = -std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < restarts; ++restart) {
    rng::CounterRng gen(rng::substream(seed, 0xD157u * 1000003ULL + restart));
    Matrix fa, fb;
    if (restart == 0) {
      fa = Matrix::Identity(dim_a, 2);
      fb = Matrix::Identity(dim_b, 2);
    } else {
      fa = sampler::haar_isometry(dim_a, 2, gen);
      fb = sampler::haar_isometry(dim_b, 2, gen);
    }
    double value = objective(fa, fb);
    double step = 0.5;
    for (int it = 0; it < iters; ++it) {
      Matrix pa = fa, pb = fb;
      bool moved = false;
      if (it % 2 == 0)
        moved = perturb_frame(pa, step, gen);
      else
        moved = perturb_frame(pb, step, gen);
      if (!moved) continue;
      const double candidate = objective(pa, pb);
      if (candidate > value) {
        fa = std::move(pa);
        fb = std::move(pb);
        value = candidate;
        step = std::min(1.0, step * 1.1);
      } else {
        step = std::max(1e-3, step * 0.95);
      }
    }
    if (value > best.negativity) {
      best.negativity = value;
      best.p_on_a = fa * fa.adjoint();
      best.q_on_b = fb * fb.adjoint();
    }
  }

  best.found = best.negativity > -kWitnessThreshold;
  return best;
}

ClosestMaxEntangled closest_max_entangled(const Register& r) {
  require_bipartite(r, "closest_max_entangled");
  if (!r.is_pure())
    throw std::invalid_argument("closest_max_entangled: payload must be pure");
  const Eigen::Index dim_a = r.dims()[0];
  const Eigen::Index dim_b = r.dims()[1];
  if (dim_a > dim_b)
    throw std::invalid_argument("closest_max_entangled: requires dA <= dB");

  const linalg::SchmidtDecomposition sd =
      linalg::schmidt(r.amplitudes(), dim_a, dim_b);

  const double root_d = std::sqrt(double(dim_a));
  Vector phi = Vector::Zero(dim_a * dim_b);
  for (Eigen::Index i = 0; i < dim_a; ++i)
    for (Eigen::Index a = 0; a < dim_a; ++a)
      phi.segment(a * dim_b, dim_b) +=
          (sd.left_basis(a, i) / root_d) * sd.right_basis.col(i);
  phi /= phi.norm();

  const double overlap = sd.coefficients.sum() / root_d;
  return {Register::pure({dim_a, dim_b}, std::move(phi)),
          std::min(1.0, overlap * overlap)};
}

}  // namespace genent::measures
