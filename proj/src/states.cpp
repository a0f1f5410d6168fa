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

#include "genent/states.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>
#include <stdexcept>

namespace genent::states {

namespace {

Eigen::Index product(const std::vector<Eigen::Index>& dims) {
  Eigen::Index p = 1;
  for (const Eigen::Index d : dims) p *= d;
  return p;
}

void check_dims(const std::vector<Eigen::Index>& dims) {
  if (dims.empty())
    throw std::invalid_argument("Register: dimension list is empty");
  for (const Eigen::Index d : dims)
    if (d < 1) throw std::invalid_argument("Register: dimensions must be >= 1");
}

std::vector<Eigen::Index> strides_of(const std::vector<Eigen::Index>& dims) {
  std::vector<Eigen::Index> strides(dims.size(), 1);
  for (int p = static_cast<int>(dims.size()) - 2; p >= 0; --p)
    strides[p] = strides[p + 1] * dims[p + 1];
  return strides;
}

void check_party(const Register& r, int part, const char* who) {
  if (part < 0 || part >= r.num_parties())
    throw std::invalid_argument(std::string(who) + ": party index out of range");
}

/// Global offsets of all index combinations over a subset of parties.
std::vector<Eigen::Index> subset_offsets(
    const std::vector<Eigen::Index>& dims,
    const std::vector<Eigen::Index>& strides, const std::vector<int>& parties) {
  Eigen::Index count = 1;
  for (const int p : parties) count *= dims[p];
  std::vector<Eigen::Index> offsets(count, 0);
  Eigen::Index repeat = count;
  for (const int p : parties) {
    repeat /= dims[p];
    for (Eigen::Index i = 0; i < count; ++i)
      offsets[i] += ((i / repeat) % dims[p]) * strides[p];
  }
  return offsets;
}

}  // namespace

Register Register::pure(std::vector<Eigen::Index> dims, Vector amplitudes) {
  check_dims(dims);
  if (amplitudes.size() != product(dims))
    throw std::invalid_argument(
        "Register::pure: amplitude length does not match dims product");
  if (std::abs(amplitudes.norm() - 1.0) > linalg::kUnitNormTol)
    throw std::invalid_argument("Register::pure: amplitudes are not unit norm");
  Register r;
  r.dims_ = std::move(dims);
  r.pure_ = true;
  r.amplitudes_ = std::move(amplitudes);
  return r;
}

Register Register::mixed(std::vector<Eigen::Index> dims, Matrix density) {
  check_dims(dims);
  if (density.rows() != density.cols() || density.rows() != product(dims))
    throw std::invalid_argument(
        "Register::mixed: density shape does not match dims product");
  if (!linalg::is_hermitian(density, linalg::kPsdTol))
    throw std::invalid_argument("Register::mixed: density is not Hermitian");
  if (std::abs(density.trace().real() - 1.0) > linalg::kPsdTol)
    throw std::invalid_argument("Register::mixed: density trace is not 1");
  Register r;
  r.dims_ = std::move(dims);
  r.pure_ = false;
  r.density_ = std::move(density);
  return r;
}

Eigen::Index Register::total_dim() const { return product(dims_); }

const Vector& Register::amplitudes() const {
  if (!pure_)
    throw std::logic_error("Register: mixed payload has no amplitude vector");
  return amplitudes_;
}

const Matrix& Register::density_matrix() const {
  if (pure_)
    throw std::logic_error(
        "Register: pure payload; call to_density() or as_mixed() first");
  return density_;
}

Matrix Register::to_density() const {
  if (pure_) return amplitudes_ * amplitudes_.adjoint();
  return density_;
}

Register Register::as_mixed() const {
  if (!pure_) return *this;
  Register r;
  r.dims_ = dims_;
  r.pure_ = false;
  r.density_ = to_density();
  return r;
}

Register Register::regrouped(std::vector<Eigen::Index> new_dims) const {
  check_dims(new_dims);
  if (product(new_dims) != total_dim())
    throw std::invalid_argument("Register::regrouped: dimension mismatch");
  Register r;
  r.dims_ = std::move(new_dims);
  r.pure_ = pure_;
  r.amplitudes_ = amplitudes_;
  r.density_ = density_;
  return r;
}

Register partial_trace(const Register& r, const std::vector<int>& keep) {
  if (keep.empty())
    throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<int> kept(keep);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (const int p : kept) check_party(r, p, "partial_trace");

  const auto& dims = r.dims();
  const auto strides = strides_of(dims);
  std::vector<int> traced;
  for (int p = 0; p < r.num_parties(); ++p)
    if (!std::binary_search(kept.begin(), kept.end(), p)) traced.push_back(p);

  std::vector<Eigen::Index> kept_dims;
  for (const int p : kept) kept_dims.push_back(dims[p]);

  if (traced.empty()) return r.as_mixed().regrouped(kept_dims);

  const auto keep_off = subset_offsets(dims, strides, kept);
  const auto tr_off = subset_offsets(dims, strides, traced);
  const Eigen::Index dk = static_cast<Eigen::Index>(keep_off.size());
  const Eigen::Index dt = static_cast<Eigen::Index>(tr_off.size());

  if (r.is_pure()) {
    // Gather the amplitudes into a (kept x traced) matrix; the reduction
    // is its Gram matrix.
    const Vector& v = r.amplitudes();
    Matrix m(dk, dt);
    for (Eigen::Index k = 0; k < dk; ++k)
      for (Eigen::Index t = 0; t < dt; ++t)
        m(k, t) = v[keep_off[k] + tr_off[t]];
    Matrix rho = m * m.adjoint();
    return Register::mixed(kept_dims, std::move(rho));
  }

  const Matrix& rho = r.density_matrix();
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index k = 0; k < dk; ++k)
    for (Eigen::Index l = 0; l < dk; ++l) {
      std::complex<double> acc = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t)
        acc += rho(keep_off[k] + tr_off[t], keep_off[l] + tr_off[t]);
      out(k, l) = acc;
    }
  // Symmetrize away accumulation noise before the constructor's check.
  out = (out + out.adjoint()) / 2.0;
  return Register::mixed(kept_dims, std::move(out));
}

Matrix partial_transpose(const Register& r, int part) {
  if (r.is_pure())
    throw std::invalid_argument(
        "partial_transpose: pure payload; convert to density form first");
  check_party(r, part, "partial_transpose");

  const auto& dims = r.dims();
  const auto strides = strides_of(dims);
  const Eigen::Index d = r.total_dim();
  const Eigen::Index sp = strides[part];
  const Eigen::Index dp = dims[part];

  std::vector<Eigen::Index> part_idx(d);
  for (Eigen::Index g = 0; g < d; ++g) part_idx[g] = (g / sp) % dp;

  const Matrix& rho = r.density_matrix();
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Eigen::Index shift = (part_idx[j] - part_idx[i]) * sp;
      out(i + shift, j - shift) = rho(i, j);
    }
  }
  return out;
}

std::pair<Register, double> project_renormalize(
    const Register& r, const std::vector<Matrix>& projectors) {
  if (static_cast<Eigen::Index>(projectors.size()) != r.num_parties())
    throw std::invalid_argument(
        "project_renormalize: one projector per party required");
  const auto& dims = r.dims();
  for (Eigen::Index p = 0; p < r.num_parties(); ++p) {
    const Matrix& proj = projectors[p];
    if (proj.rows() != dims[p] || proj.cols() != dims[p])
      throw std::invalid_argument(
          "project_renormalize: projector shape mismatch");
    if (!linalg::is_hermitian(proj, 1e-8) ||
        (proj * proj - proj).cwiseAbs().maxCoeff() > 1e-8)
      throw std::invalid_argument(
          "project_renormalize: matrix is not an orthogonal projector");
  }

  if (r.is_pure()) {
    Vector v = r.amplitudes();
    for (int p = 0; p < r.num_parties(); ++p)
      v = apply_local_operator(v, dims, p, projectors[p]);
    const double prob = v.squaredNorm();
    if (prob < 1e-12)
      throw std::runtime_error("project_renormalize: projection annihilates state");
    return {Register::pure(dims, v / std::sqrt(prob)), prob};
  }

  Matrix rho = r.density_matrix();
  for (int p = 0; p < r.num_parties(); ++p) {
    // P rho P, applied along rows then columns.
    for (Eigen::Index c = 0; c < rho.cols(); ++c)
      rho.col(c) = apply_local_operator(rho.col(c), dims, p, projectors[p]);
    for (Eigen::Index row = 0; row < rho.rows(); ++row) {
      const Vector conj_row = rho.row(row).conjugate().transpose();
      rho.row(row) =
          apply_local_operator(conj_row, dims, p, projectors[p]).adjoint();
    }
  }
  const double prob = rho.trace().real();
  if (prob < 1e-12)
    throw std::runtime_error("project_renormalize: projection annihilates state");
  rho /= prob;
  rho = (rho + rho.adjoint()) / 2.0;
  return {Register::mixed(dims, std::move(rho)), prob};
}

double purity(const Register& r) {
  if (r.is_pure()) {
    const double n2 = r.amplitudes().squaredNorm();
    return n2 * n2;
  }
  return r.density_matrix().squaredNorm();  // Tr rho^2 for Hermitian rho
}

Register apply_local_unitary(const Register& r, int part, const Matrix& u) {
  check_party(r, part, "apply_local_unitary");
  const auto& dims = r.dims();
  if (u.rows() != dims[part] || u.cols() != dims[part])
    throw std::invalid_argument("apply_local_unitary: shape mismatch");
  if ((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()))
          .cwiseAbs()
          .maxCoeff() > 1e-8)
    throw std::invalid_argument("apply_local_unitary: matrix is not unitary");

  if (r.is_pure()) {
    Vector v = apply_local_operator(r.amplitudes(), dims, part, u);
    return Register::pure(dims, std::move(v));
  }
  Matrix rho = r.density_matrix();
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    rho.col(c) = apply_local_operator(rho.col(c), dims, part, u);
  for (Eigen::Index row = 0; row < rho.rows(); ++row) {
    const Vector conj_row = rho.row(row).conjugate().transpose();
    rho.row(row) = apply_local_operator(conj_row, dims, part, u).adjoint();
  }
  rho = (rho + rho.adjoint()) / 2.0;
  return Register::mixed(dims, std::move(rho));
}

Vector apply_local_operator(const Vector& v,
                            const std::vector<Eigen::Index>& dims, int part,
                            const Matrix& m) {
  const auto strides = strides_of(dims);
  const Eigen::Index sp = strides[part];
  const Eigen::Index dp = dims[part];
  const Eigen::Index total = v.size();

  Vector out = Vector::Zero(total);
  Vector slice(dp);
  // Iterate over all global indices with the part index fixed to zero.
  for (Eigen::Index outer = 0; outer < total / (dp * sp); ++outer) {
    for (Eigen::Index inner = 0; inner < sp; ++inner) {
      const Eigen::Index base = outer * dp * sp + inner;
      for (Eigen::Index k = 0; k < dp; ++k) slice[k] = v[base + k * sp];
      slice = m * slice;
      for (Eigen::Index k = 0; k < dp; ++k) out[base + k * sp] = slice[k];
    }
  }
  return out;
}

nlohmann::json to_json(const Register& r) {
  nlohmann::json j;
  j["dims"] = r.dims();
  if (r.is_pure()) {
    j["kind"] = "pure";
    std::vector<double> entries;
    entries.reserve(2 * r.amplitudes().size());
    for (Eigen::Index i = 0; i < r.amplitudes().size(); ++i) {
      entries.push_back(r.amplitudes()[i].real());
      entries.push_back(r.amplitudes()[i].imag());
    }
    j["amplitudes"] = entries;
  } else {
    j["kind"] = "mixed";
    const Matrix& rho = r.density_matrix();
    std::vector<double> entries;
    entries.reserve(2 * rho.size());
    for (Eigen::Index row = 0; row < rho.rows(); ++row)
      for (Eigen::Index col = 0; col < rho.cols(); ++col) {
        entries.push_back(rho(row, col).real());
        entries.push_back(rho(row, col).imag());
      }
    j["density"] = entries;
  }
  return j;
}

Register register_from_json(const nlohmann::json& j) {
  if (!j.contains("dims") || !j.contains("kind"))
    throw std::invalid_argument("state JSON: missing dims or kind");
  std::vector<Eigen::Index> dims = j.at("dims").get<std::vector<Eigen::Index>>();
  const std::string kind = j.at("kind").get<std::string>();
  const Eigen::Index total = product(dims);

  if (kind == "pure") {
    const auto entries = j.at("amplitudes").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(entries.size()) != 2 * total)
      throw std::invalid_argument("state JSON: amplitude length mismatch");
    Vector v(total);
    for (Eigen::Index i = 0; i < total; ++i)
      v[i] = {entries[2 * i], entries[2 * i + 1]};
    return Register::pure(std::move(dims), std::move(v));
  }
  if (kind == "mixed") {
    const auto entries = j.at("density").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(entries.size()) != 2 * total * total)
      throw std::invalid_argument("state JSON: density length mismatch");
    Matrix rho(total, total);
    Eigen::Index k = 0;
    for (Eigen::Index row = 0; row < total; ++row)
      for (Eigen::Index col = 0; col < total; ++col, ++k)
        rho(row, col) = {entries[2 * k], entries[2 * k + 1]};
    return Register::mixed(std::move(dims), std::move(rho));
  }
  throw std::invalid_argument("state JSON: kind must be pure or mixed");
}

}  // namespace genent::states
