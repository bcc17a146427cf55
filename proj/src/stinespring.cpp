// Copyright 2026 The hyperlinear Authors
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


#include "hyperlinear/stinespring.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace hyperlinear {

ChoiMatrix::ChoiMatrix(ComplexMatrix m, Eigen::Index n_in, Eigen::Index n_out)
    : m_(std::move(m)), n_in_(n_in), n_out_(n_out) {
  if (n_in < 1 || n_out < 1) throw Error(ErrorCode::BadParams, "Choi dimensions must be >= 1");
  require_square(m_, "ChoiMatrix");
  require_finite(m_, "ChoiMatrix");
  if (m_.rows() != n_in * n_out) {
    throw Error(ErrorCode::DimensionMismatch, "Choi matrix of size " + std::to_string(m_.rows()) +
                                                  " does not match " + std::to_string(n_in) +
                                                  " x " + std::to_string(n_out));
  }
}

ChoiMatrix ChoiMatrix::from_map(const LinearMap& phi, Eigen::Index n_in, Eigen::Index n_out) {
  ComplexMatrix c = ComplexMatrix::Zero(n_in * n_out, n_in * n_out);
  for (Eigen::Index i = 0; i < n_in; ++i) {
    for (Eigen::Index j = 0; j < n_in; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n_in, n_in);
      e(i, j) = 1.0;
      const ComplexMatrix image = phi(e);
      if (image.rows() != n_out || image.cols() != n_out) {
        throw Error(ErrorCode::DimensionMismatch, "map image has the wrong shape");
      }
      c.block(i * n_out, j * n_out, n_out, n_out) = image;
    }
  }
  return ChoiMatrix(std::move(c), n_in, n_out);
}

ChoiMatrix ChoiMatrix::from_kraus(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw Error(ErrorCode::BadParams, "need at least one Kraus operator");
  const Eigen::Index n_out = kraus.front().rows();
  const Eigen::Index n_in = kraus.front().cols();
  for (const ComplexMatrix& k : kraus) {
    if (k.rows() != n_out || k.cols() != n_in) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operators differ in shape");
    }
  }
  return from_map(
      [&](const ComplexMatrix& a) {
        ComplexMatrix out = ComplexMatrix::Zero(n_out, n_out);
        for (const ComplexMatrix& k : kraus) out += k * a * k.adjoint();
        return out;
      },
      n_in, n_out);
}

double ChoiMatrix::min_eigenvalue() const {
  const ComplexMatrix h = (m_ + m_.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

double ChoiMatrix::unital_residual() const {
  ComplexMatrix sum = ComplexMatrix::Zero(n_out_, n_out_);
  for (Eigen::Index i = 0; i < n_in_; ++i) sum += m_.block(i * n_out_, i * n_out_, n_out_, n_out_);
  return operator_norm(sum - ComplexMatrix::Identity(n_out_, n_out_));
}

ComplexMatrix ChoiMatrix::apply(const ComplexMatrix& a) const {
  if (a.rows() != n_in_ || a.cols() != n_in_) {
    throw Error(ErrorCode::DimensionMismatch, "ChoiMatrix::apply: wrong input shape");
  }
  ComplexMatrix out = ComplexMatrix::Zero(n_out_, n_out_);
  for (Eigen::Index i = 0; i < n_in_; ++i) {
    for (Eigen::Index j = 0; j < n_in_; ++j) {
      out += a(i, j) * m_.block(i * n_out_, j * n_out_, n_out_, n_out_);
    }
  }
  return out;
}

ComplexMatrix Dilation::apply(const ComplexMatrix& a) const {
  ComplexMatrix out = ComplexMatrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const ComplexMatrix& k : kraus) out += k * a * k.adjoint();
  return out;
}

ComplexMatrix Dilation::apply_dilated(const ComplexMatrix& a) const {
  const Eigen::Index r = environment_dim();
  const ComplexMatrix rho = tensor(ComplexMatrix::Identity(r, r), a,
                                   static_cast<std::size_t>(isometry.rows()));
  return isometry.adjoint() * rho * isometry;
}

Dilation stinespring_dilate(const ChoiMatrix& choi, double cutoff) {
  const Eigen::Index n_in = choi.n_in();
  const Eigen::Index n_out = choi.n_out();
  const ComplexMatrix h = (choi.matrix() + choi.matrix().adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  const RealVector& lambda = eig.eigenvalues();
  if (lambda(0) < -1e-9) {
    throw Error(ErrorCode::NotPSD, "Choi matrix has eigenvalue " + std::to_string(lambda(0)));
  }
  const double unital = choi.unital_residual();
  if (unital > 1e-9) {
    throw Error(ErrorCode::NotUnital, "||Phi(I) - I||_op = " + std::to_string(unital));
  }

  Dilation out;
  std::vector<double> kept;
  // K[a, i] = sqrt(lambda) v[i n_out + a]; largest eigenvalues first.
  for (Eigen::Index e = lambda.size() - 1; e >= 0; --e) {
    if (lambda(e) < cutoff) continue;
    const ComplexVector v = eig.eigenvectors().col(e);
    ComplexMatrix k(n_out, n_in);
    const double s = std::sqrt(lambda(e));
    for (Eigen::Index i = 0; i < n_in; ++i) {
      for (Eigen::Index a = 0; a < n_out; ++a) k(a, i) = s * v(i * n_out + a);
    }
    out.kraus.push_back(std::move(k));
    kept.push_back(lambda(e));
  }
  out.retained_eigenvalues = Eigen::Map<const RealVector>(kept.data(),
                                                          static_cast<Eigen::Index>(kept.size()));
  const auto r = static_cast<Eigen::Index>(out.kraus.size());
  out.isometry.resize(r * n_in, n_out);
  for (Eigen::Index k = 0; k < r; ++k) {
    out.isometry.block(k * n_in, 0, n_in, n_out) = out.kraus[static_cast<std::size_t>(k)].adjoint();
  }
  return out;
}

}  // namespace hyperlinear
