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

#include "hyperlinear/mat_core.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hyperlinear {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OverflowGuard: return "OverflowGuard";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::ZeroRank: return "ZeroRank";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::OrthogonalityViolated: return "OrthogonalityViolated";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::Exhausted: return "Exhausted";
    case ErrorCode::EmptyE: return "EmptyE";
    case ErrorCode::ModeUnavailable: return "ModeUnavailable";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::DefectBudgetExceeded: return "DefectBudgetExceeded";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Operator: return "operator";
    case NormKind::Schatten1: return "schatten1";
    case NormKind::Schatten2: return "schatten2";
    case NormKind::HsNormalized: return "hs_normalized";
  }
  return "unknown";
}

RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

double norm(const ComplexMatrix& a, NormKind kind) {
  switch (kind) {
    case NormKind::Operator: {
      const RealVector s = singular_values(a);
      return s.size() == 0 ? 0.0 : s(0);
    }
    case NormKind::Schatten1:
      return singular_values(a).sum();
    case NormKind::Schatten2:
      return a.norm();
    case NormKind::HsNormalized:
      require_square(a, "hs_normalized norm");
      if (a.rows() == 0) return 0.0;
      return a.norm() / std::sqrt(static_cast<double>(a.rows()));
  }
  return 0.0;
}

void require_finite(const ComplexMatrix& a, std::string_view context) {
  if (!a.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(context) + ": matrix has NaN or infinite entries");
  }
}

void require_square(const ComplexMatrix& a, std::string_view context) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NonSquare, std::string(context) + ": expected a square matrix, got " +
                                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t max_dim) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > max_dim || cols > max_dim) {
    throw Error(ErrorCode::OverflowGuard, "tensor product of size " + std::to_string(rows) + "x" +
                                              std::to_string(cols) + " exceeds max_dim " +
                                              std::to_string(max_dim));
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Complex canonicalize_phase(ComplexVector& v, double threshold) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mod = std::abs(v(i));
    if (mod > threshold) {
      const Complex phase = std::conj(v(i)) / mod;
      v *= phase;
      v(i) = Complex(std::abs(v(i)), 0.0);
      return phase;
    }
  }
  return Complex(1.0, 0.0);
}

ComplexMatrix orthonormal_complement(const ComplexMatrix& columns, double rank_tol) {
  const Eigen::Index d = columns.rows();
  if (columns.cols() == 0) return ComplexMatrix::Identity(d, d);
  Eigen::JacobiSVD<ComplexMatrix> svd(columns, Eigen::ComputeFullU);
  const RealVector& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rank_tol) ++r;
  ComplexMatrix out = svd.matrixU().rightCols(d - r);
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    ComplexVector col = out.col(j);
    canonicalize_phase(col);
    out.col(j) = col;
  }
  return out;
}

namespace {

struct RawPolar {
  ComplexMatrix unitary;
  RealVector singular_values;
};

RawPolar raw_polar(const ComplexMatrix& a) {
  Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU() * svd.matrixV().adjoint(), svd.singularValues()};
}

// ||a||_op <= ||a||_F, so the Frobenius norm settles most checks without an SVD.
double op_norm_upper(const ComplexMatrix& a, double tol) {
  const double frobenius = a.norm();
  return frobenius <= tol ? frobenius : operator_norm(a);
}

double unitary_residual(const ComplexMatrix& m, double tol) {
  return op_norm_upper(m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols()), tol);
}

}  // namespace

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tolerance, double repair_tolerance)
    : m_(std::move(m)) {
  require_square(m_, "UnitaryMatrix");
  require_finite(m_, "UnitaryMatrix");
  if (m_.rows() == 0) throw Error(ErrorCode::BadParams, "UnitaryMatrix: dimension must be positive");
  residual_ = unitary_residual(m_, tolerance);
  if (residual_ <= tolerance) return;
  if (residual_ > repair_tolerance) {
    throw Error(ErrorCode::NotUnitary,
                "||U*U - I||_op = " + std::to_string(residual_) + " exceeds repair tolerance");
  }
  m_ = raw_polar(m_).unitary;
  residual_ = unitary_residual(m_, tolerance);
  repaired_ = true;
  if (residual_ > tolerance) {
    throw Error(ErrorCode::NotUnitary, "polar repair did not reach the unitary tolerance");
  }
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double residual, Trusted)
    : m_(std::move(m)), residual_(residual) {}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim), 0.0, Trusted{});
}

UnitaryMatrix UnitaryMatrix::phase(Complex z) {
  ComplexMatrix m(1, 1);
  m(0, 0) = z;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(m_.adjoint(), residual_, Trusted{});
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& other) const {
  if (dim() != other.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary product of different dimensions");
  }
  return UnitaryMatrix(m_ * other.m_);
}

Projection::Projection(ComplexMatrix m, double tolerance) : m_(std::move(m)) {
  require_square(m_, "Projection");
  require_finite(m_, "Projection");
  const double idempotence = op_norm_upper(m_ * m_ - m_, tolerance);
  const double symmetry = op_norm_upper(m_ - m_.adjoint(), tolerance);
  if (idempotence > tolerance || symmetry > tolerance) {
    throw Error(ErrorCode::NotProjection, "||P^2 - P||_op = " + std::to_string(idempotence) +
                                              ", ||P - P*||_op = " + std::to_string(symmetry));
  }
  const Eigen::Index d = m_.rows();
  if (d == 0) return;
  const ComplexMatrix hermitian = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian);
  const RealVector& values = eig.eigenvalues();
  // Eigenvalues come back ascending, so the kernel directions lead.
  Eigen::Index kernel_dim = 0;
  while (kernel_dim < d && std::abs(values(kernel_dim) - 1.0) >= 0.5) ++kernel_dim;
  for (Eigen::Index i = kernel_dim; i < d; ++i) {
    if (std::abs(values(i) - 1.0) >= 0.5) {
      throw Error(ErrorCode::NotProjection, "eigenvalue spectrum is not split into {0, 1}");
    }
  }
  complement_ = eig.eigenvectors().leftCols(kernel_dim);
  basis_ = eig.eigenvectors().rightCols(d - kernel_dim);
  for (ComplexMatrix* cols : {&basis_, &complement_}) {
    for (Eigen::Index j = 0; j < cols->cols(); ++j) {
      ComplexVector c = cols->col(j);
      canonicalize_phase(c);
      cols->col(j) = c;
    }
  }
  const double trace = m_.trace().real();
  const double rank_tol = std::max(1e-8, tolerance * static_cast<double>(d));
  if (std::abs(trace - static_cast<double>(rank())) > rank_tol) {
    throw Error(ErrorCode::NotProjection, "rank " + std::to_string(rank()) +
                                              " disagrees with trace " + std::to_string(trace));
  }
}

Projection Projection::onto_span(const ComplexMatrix& columns, double rank_tol) {
  const Eigen::Index d = columns.rows();
  if (columns.cols() == 0) return zero(d);
  Eigen::JacobiSVD<ComplexMatrix> svd(columns, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rank_tol) ++r;
  const ComplexMatrix q = svd.matrixU().leftCols(r);
  return Projection(q * q.adjoint());
}

Projection Projection::zero(Eigen::Index dim) { return Projection(ComplexMatrix::Zero(dim, dim)); }

Projection Projection::identity(Eigen::Index dim) {
  return Projection(ComplexMatrix::Identity(dim, dim));
}

Projection Projection::complement() const {
  return Projection(ComplexMatrix::Identity(dim(), dim()) - m_);
}

PolarFactor polar_decompose(const ComplexMatrix& a) {
  require_square(a, "polar_unitary");
  require_finite(a, "polar_unitary");
  RawPolar raw = raw_polar(a);
  const bool degenerate = raw.singular_values.size() > 0 &&
                          raw.singular_values.minCoeff() < 1e-12;
  return {UnitaryMatrix(std::move(raw.unitary)), std::move(raw.singular_values), degenerate};
}

}  // namespace hyperlinear
