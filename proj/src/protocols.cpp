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

#include "genent/protocols.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace genent::protocols {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double lipschitz_eta(Eigen::Index dim_a) {
  // sqrt(8) log2(dA); the dA = 2 case is covered by the dA = 3 constant.
  return std::sqrt(8.0) * std::log2(double(std::max<Eigen::Index>(dim_a, 3)));
}

double entanglement_of_vector(const Vector& v, Eigen::Index dim_a,
                              Eigen::Index dim_b) {
  if (dim_a == 1 || dim_b == 1) return 0.0;
  const Matrix rho = dim_a <= dim_b ? linalg::reduced_a(v, dim_a, dim_b)
                                    : linalg::reduced_b(v, dim_a, dim_b);
  return linalg::vn_entropy(rho);
}

struct NetPlan {
  std::vector<Eigen::Index> sizes;  // grid size per angle
  std::uint64_t total = 1;
};

/// Constructive covering of the states of an s-dimensional subspace,
/// s <= 3, by a hypersphere-coordinate grid. Cell-center points leave
/// every state within epsilon/2 of a grid point in the phase-aligned
/// Euclidean norm (each coordinate's velocity is at most 1).
NetPlan plan_net(Eigen::Index s, double epsilon) {
  NetPlan plan;
  if (s == 1) {
    plan.sizes = {};
    plan.total = 1;
    return plan;
  }
  const int n_angles = s == 2 ? 2 : 4;
  const double delta = epsilon / double(n_angles);
  for (int a = 0; a < n_angles; ++a) {
    const double span = (s == 2 ? (a == 0) : (a < 2)) ? M_PI / 2.0 : 2.0 * M_PI;
    plan.sizes.push_back(
        static_cast<Eigen::Index>(std::ceil(span / delta)));
  }
  for (const Eigen::Index n : plan.sizes) plan.total *= std::uint64_t(n);
  return plan;
}

Vector net_point(const SubspaceIsometry& v, const NetPlan& plan,
                 std::uint64_t index) {
  const Eigen::Index s = v.s();
  if (s == 1) return v.columns.col(0);
  std::vector<double> angle(plan.sizes.size());
  std::uint64_t rest = index;
  for (int a = int(plan.sizes.size()) - 1; a >= 0; --a) {
    const std::uint64_t n = std::uint64_t(plan.sizes[a]);
    const double span =
        (s == 2 ? (a == 0) : (a < 2)) ? M_PI / 2.0 : 2.0 * M_PI;
    angle[a] = (double(rest % n) + 0.5) * span / double(n);
    rest /= n;
  }
  Eigen::VectorXcd c(s);
  if (s == 2) {
    c << std::cos(angle[0]),
        std::polar(std::sin(angle[0]), angle[1]);
  } else {
    c << std::cos(angle[0]),
        std::polar(std::sin(angle[0]) * std::cos(angle[1]), angle[2]),
        std::polar(std::sin(angle[0]) * std::sin(angle[1]), angle[3]);
  }
  return v.columns * c;
}

}  // namespace

double subspace_entropy_and_gradient(const SubspaceIsometry& v,
                                     const Vector& coeffs, Vector* grad) {
  const Eigen::Index dim_a = v.dim_a;
  const Eigen::Index dim_b = v.dim_b;
  const Vector psi = v.columns * coeffs;
  const Matrix m = linalg::reshape_bipartite(psi, dim_a, dim_b);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m * m.adjoint());

  double entropy = 0.0;
  Eigen::VectorXd g_of_lambda(dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    const double lam = std::max(eig.eigenvalues()[i], linalg::kEigClipTol);
    if (eig.eigenvalues()[i] > linalg::kEigClipTol)
      entropy -= eig.eigenvalues()[i] * std::log2(eig.eigenvalues()[i]);
    g_of_lambda[i] = -(std::log2(lam) + 1.0 / kLn2);
  }

  if (grad != nullptr) {
    const Matrix g_mat = eig.eigenvectors() * g_of_lambda.asDiagonal() *
                         eig.eigenvectors().adjoint();
    const Matrix gm = g_mat * m;  // dA x dB
    Vector flat(dim_a * dim_b);
    for (Eigen::Index a = 0; a < dim_a; ++a)
      flat.segment(a * dim_b, dim_b) = gm.row(a).transpose();
    *grad = v.columns.adjoint() * flat;
  }
  return entropy;
}

CertifiedSubspace certify_subspace(const SubspaceIsometry& v,
                                   const CertifyOptions& opts,
                                   rng::SeedSpec seed) {
  if (v.s() < 1 || v.columns.rows() != v.dim_a * v.dim_b)
    throw std::invalid_argument("certify_subspace: malformed isometry");
  if ((v.columns.adjoint() * v.columns -
       Matrix::Identity(v.s(), v.s()))
          .cwiseAbs()
          .maxCoeff() > 1e-8)
    throw std::invalid_argument("certify_subspace: columns are not orthonormal");

  CertifiedSubspace out;
  out.isometry = v;

  if (opts.mode == CertifyMode::kNet) {
    if (v.s() > 3)
      throw std::invalid_argument(
          "certify_subspace: net enumeration supports s <= 3; "
          "use minimization for larger subspaces");
    if (opts.epsilon <= 0 || opts.epsilon >= 1)
      throw std::invalid_argument("certify_subspace: need 0 < epsilon < 1");
    const NetPlan plan = plan_net(v.s(), opts.epsilon);
    if (plan.total > opts.budget)
      throw std::runtime_error(
          "certify_subspace: net enumeration needs " +
          std::to_string(plan.total) + " points, exceeding the budget of " +
          std::to_string(opts.budget));

    double min_e = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < plan.total; ++i) {
      const Vector psi = net_point(v, plan, i);
      min_e = std::min(min_e, entanglement_of_vector(psi, v.dim_a, v.dim_b));
    }
    const double correction =
        v.s() == 1 ? 0.0 : lipschitz_eta(v.dim_a) * opts.epsilon / 2.0;
    out.min_entanglement_estimate = std::max(0.0, min_e - correction);
    out.method = "net-enumeration";
    out.net_epsilon = opts.epsilon;
    out.net_size = plan.total;
    out.certified = true;
    return out;
  }

  // Multi-start projected gradient descent of the reduction entropy
  // over unit coefficient vectors.
  if (opts.restarts < 1)
    throw std::invalid_argument("certify_subspace: restarts must be >= 1");
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < opts.restarts; ++restart) {
    rng::CounterRng gen(rng::substream(seed, 0xCE47u * 1000003ULL + restart));
    Vector c(v.s());
    for (Eigen::Index i = 0; i < v.s(); ++i) c[i] = gen.complex_gaussian();
    c /= c.norm();

    Vector grad;
    double value = subspace_entropy_and_gradient(v, c, &grad);
    double step = 0.5;
    for (int it = 0; it < opts.iters && step > 1e-10; ++it) {
      Vector candidate = c - step * grad;
      const double norm = candidate.norm();
      if (norm < 1e-12) {
        step *= 0.5;
        continue;
      }
      candidate /= norm;
      Vector cand_grad;
      const double cand_value =
          subspace_entropy_and_gradient(v, candidate, &cand_grad);
      if (cand_value < value) {
        c = std::move(candidate);
        grad = std::move(cand_grad);
        value = cand_value;
        step = std::min(1.0, step * 1.25);
      } else {
        step *= 0.5;
      }
    }
    best = std::min(best, value);
  }
  out.min_entanglement_estimate = std::max(0.0, best);
  out.method = "local-minimization";
  out.restarts = opts.restarts;
  out.certified = false;
  return out;
}

DistillationReport multiparty_distill(const Register& phi,
                                      const states::Cut& pair) {
  if (!phi.is_pure())
    throw std::invalid_argument("multiparty_distill: state must be pure");
  if (pair.parties.size() != 2 || pair.parties[0] == pair.parties[1])
    throw std::invalid_argument(
        "multiparty_distill: pair must name two distinct parties");
  const Eigen::Index n = phi.num_parties();
  const int p = std::min(pair.parties[0], pair.parties[1]);
  const int q = std::max(pair.parties[0], pair.parties[1]);
  if (p < 0 || q >= n)
    throw std::invalid_argument("multiparty_distill: party index out of range");

  const auto& dims = phi.dims();
  std::vector<Eigen::Index> strides(dims.size(), 1);
  for (int i = int(dims.size()) - 2; i >= 0; --i)
    strides[i] = strides[i + 1] * dims[i + 1];

  std::vector<int> measured;
  for (int i = 0; i < n; ++i)
    if (i != p && i != q) measured.push_back(i);

  Eigen::Index n_outcomes = 1;
  for (const int i : measured) n_outcomes *= dims[i];
  const Eigen::Index dp = dims[p], dq = dims[q];

  DistillationReport report;
  const Vector& amps = phi.amplitudes();
  for (Eigen::Index flat = 0; flat < n_outcomes; ++flat) {
    // Decode the outcome, first measured party slowest.
    std::vector<Eigen::Index> label(measured.size());
    Eigen::Index offset = 0;
    {
      Eigen::Index rest = flat;
      for (int i = int(measured.size()) - 1; i >= 0; --i) {
        label[i] = rest % dims[measured[i]];
        rest /= dims[measured[i]];
        offset += label[i] * strides[measured[i]];
      }
    }

    Vector slice(dp * dq);
    for (Eigen::Index xp = 0; xp < dp; ++xp)
      for (Eigen::Index xq = 0; xq < dq; ++xq)
        slice[xp * dq + xq] = amps[offset + xp * strides[p] + xq * strides[q]];

    const double prob = slice.squaredNorm();
    if (prob < 1e-12) {
      ++report.omitted;
      continue;
    }
    DistillationOutcome outcome;
    outcome.label = std::move(label);
    outcome.flat_label = flat;
    outcome.probability = prob;
    outcome.post_state =
        Register::pure({dp, dq}, slice / std::sqrt(prob));
    outcome.entanglement =
        entanglement_of_vector(outcome.post_state.amplitudes(), dp, dq);
    report.outcomes.push_back(std::move(outcome));
  }
  return report;
}

Register canonical_max_entangled(Eigen::Index dim_a, Eigen::Index dim_b) {
  if (dim_a < 1 || dim_b < dim_a)
    throw std::invalid_argument("canonical_max_entangled: need dA <= dB");
  Vector v = Vector::Zero(dim_a * dim_b);
  const double amp = 1.0 / std::sqrt(double(dim_a));
  for (Eigen::Index i = 0; i < dim_a; ++i) v[i * dim_b + i] = amp;
  return Register::pure({dim_a, dim_b}, std::move(v));
}

namespace {

/// Extends an orthonormal family to a full basis, deterministically,
/// by Gram-Schmidt over the canonical basis.
Matrix complete_basis(const Matrix& family) {
  const Eigen::Index d = family.rows();
  Matrix full(d, d);
  full.leftCols(family.cols()) = family;
  Eigen::Index have = family.cols();
  for (Eigen::Index k = 0; k < d && have < d; ++k) {
    Vector v = Vector::Zero(d);
    v[k] = 1.0;
    v -= full.leftCols(have) * (full.leftCols(have).adjoint() * v);
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    full.col(have++) = v / norm;
  }
  if (have < d)
    throw std::runtime_error("complete_basis: failed to complete the family");
  return full;
}

void check_sdc_inputs(const Register& phi_target, const CertifiedSubspace& v,
                      const Register& phi0) {
  if (!phi_target.is_pure() || !phi0.is_pure())
    throw std::invalid_argument("sdc: states must be pure");
  if (phi_target.num_parties() != 2 || phi0.num_parties() != 2)
    throw std::invalid_argument("sdc: states must be bipartite");
  const Eigen::Index da = v.isometry.dim_a, db = v.isometry.dim_b;
  if (da > db) throw std::invalid_argument("sdc: requires dA <= dB");
  if (phi_target.dims()[0] != da || phi_target.dims()[1] != db ||
      phi0.dims()[0] != da || phi0.dims()[1] != db)
    throw std::invalid_argument("sdc: dimension mismatch with the subspace");
  const Vector& t = phi_target.amplitudes();
  const Vector residual = t - v.isometry.columns *
                                  (v.isometry.columns.adjoint() * t);
  if (residual.norm() > 1e-8)
    throw std::invalid_argument("sdc: target state lies outside the subspace");
}

}  // namespace

Matrix sdc_encode(const Register& phi_target, const CertifiedSubspace& v,
                  const Register& phi0) {
  check_sdc_inputs(phi_target, v, phi0);
  const Eigen::Index da = v.isometry.dim_a, db = v.isometry.dim_b;

  const linalg::SchmidtDecomposition sd0 =
      linalg::schmidt(phi0.amplitudes(), da, db);
  for (Eigen::Index i = 0; i < da; ++i)
    if (std::abs(sd0.coefficients[i] - 1.0 / std::sqrt(double(da))) > 1e-8)
      throw std::invalid_argument("sdc: phi0 is not maximally entangled");

  const Register closest = measures::closest_max_entangled(phi_target).state;
  const linalg::SchmidtDecomposition sd =
      linalg::schmidt(closest.amplitudes(), da, db);

  // Rewrite the closest state in phi0's A-side basis: the B-side partners
  // are g_i = sum_j <a_i|e_j> |f_j>, an orthonormal family.
  const Matrix w = sd0.left_basis.adjoint() * sd.left_basis;  // dA x dA
  const Matrix g = sd.right_basis * w.transpose();            // dB x dA

  const Matrix b_full = complete_basis(sd0.right_basis);
  const Matrix g_full = complete_basis(g);
  return g_full * b_full.adjoint();
}

SdcRunResult sdc_run(const CertifiedSubspace& v, const Register& phi_target,
                     const Register& phi0) {
  const Matrix u = sdc_encode(phi_target, v, phi0);
  const Register transmitted = states::apply_local_unitary(phi0, 1, u);

  SdcRunResult result;
  const Vector proj = v.isometry.columns *
                      (v.isometry.columns.adjoint() * transmitted.amplitudes());
  result.success_probability = proj.squaredNorm();
  if (result.success_probability < 1e-12) {
    result.projection_failed = true;
    result.received = Register::pure(
        {v.isometry.dim_a, v.isometry.dim_b},
        v.isometry.columns.col(0));
  } else {
    result.received = Register::pure(
        {v.isometry.dim_a, v.isometry.dim_b},
        proj / std::sqrt(result.success_probability));
  }
  const std::complex<double> overlap =
      phi_target.amplitudes().adjoint() * result.received.amplitudes();
  result.fidelity = std::norm(overlap);
  return result;
}

LockingReport locking_experiment(int n_qubits_per_side, int traced,
                                 std::int64_t trials, rng::SeedSpec seed,
                                 Eigen::Index rank, int eof_restarts,
                                 int eof_iters) {
  if (n_qubits_per_side < 1)
    throw std::invalid_argument("locking_experiment: need n >= 1");
  if (traced < 0 || traced > n_qubits_per_side)
    throw std::invalid_argument(
        "locking_experiment: traced must be in [0, n_qubits_per_side]");
  if (trials < 1)
    throw std::invalid_argument("locking_experiment: need trials >= 1");

  const int n = n_qubits_per_side;
  const Eigen::Index side = Eigen::Index(1) << n;
  const Eigen::Index total = side * side;
  LockingReport report;
  report.traced = traced;
  report.rank = rank > 0
                    ? rank
                    : std::max<Eigen::Index>(
                          1, total / (Eigen::Index(2 * n) * (2 * n)));

  const std::vector<Eigen::Index> qubit_dims(2 * n, 2);
  for (std::int64_t t = 0; t < trials; ++t) {
    const rng::SeedSpec trial_seed = rng::substream(seed, std::uint64_t(t));
    const Matrix rho = sampler::random_mixed(total, report.rank, trial_seed);

    const Register bipartite = Register::mixed({side, side}, rho);
    const rng::SeedSpec eof_seed = rng::substream(trial_seed, 1);

    LockingRow row;
    row.trial = t;
    row.before_bits =
        measures::eof_upper_bound(bipartite, eof_restarts, eof_iters, eof_seed)
            .bits;

    if (traced == 0) {
      row.after_bits = row.before_bits;
      row.after_purity_separable = measures::purity_separable(bipartite);
    } else {
      const Register as_qubits = bipartite.regrouped(qubit_dims);
      std::vector<int> keep;
      for (int i = traced; i < 2 * n; ++i) keep.push_back(i);
      const Register reduced = states::partial_trace(as_qubits, keep);
      const Register after = reduced.regrouped(
          {Eigen::Index(1) << (n - traced), side});
      row.after_bits =
          measures::eof_upper_bound(after, eof_restarts, eof_iters, eof_seed)
              .bits;
      row.after_purity_separable = measures::purity_separable(after);
    }
    row.gap = row.before_bits - row.after_bits;
    report.mean_gap += row.gap;
    report.rows.push_back(row);
  }
  report.mean_gap /= double(trials);
  return report;
}

}  // namespace genent::protocols
