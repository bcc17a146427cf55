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

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "hyperlinear/error.hpp"

namespace hyperlinear {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kRepairTol = 1e-6;
inline constexpr double kProjTol = 1e-10;
inline constexpr double kReportTol = 1e-12;
inline constexpr std::size_t kDefaultMaxDim = 4096;

enum class NormKind { Operator, Schatten1, Schatten2, HsNormalized };

std::string_view to_string(NormKind kind);

/// Singular values in non-increasing order. Every norm below is derived from
/// this one routine (Golub-Kahan bidiagonalization with divide and conquer).
RealVector singular_values(const ComplexMatrix& a);

double norm(const ComplexMatrix& a, NormKind kind);

inline double operator_norm(const ComplexMatrix& a) { return norm(a, NormKind::Operator); }
inline double hs_norm(const ComplexMatrix& a) { return norm(a, NormKind::HsNormalized); }

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a, std::string_view context);
void require_square(const ComplexMatrix& a, std::string_view context);

/// Kronecker product. Throws OverflowGuard when either output extent exceeds max_dim.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                     std::size_t max_dim = kDefaultMaxDim);

/// Block-diagonal a (+) b.
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// Multiplies v by a unit scalar so that its first entry with modulus above
/// `threshold` is real and positive. Returns the applied phase.
Complex canonicalize_phase(ComplexVector& v, double threshold = 1e-12);

/// Orthonormal basis (as columns) of the orthogonal complement of the column
/// span of `columns`. Columns are phase-canonicalized.
ComplexMatrix orthonormal_complement(const ComplexMatrix& columns, double rank_tol = 1e-9);

/// A square matrix U with ||U*U - I||_op <= tolerance.
class UnitaryMatrix {
 public:
  /// Validates `m`. Residuals in (tolerance, repair_tolerance] are repaired by
  /// replacing m with its polar factor; larger residuals throw NotUnitary.
  explicit UnitaryMatrix(ComplexMatrix m, double tolerance = kUnitaryTol,
                         double repair_tolerance = kRepairTol);

  static UnitaryMatrix identity(Eigen::Index dim);
  static UnitaryMatrix phase(Complex z);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  bool repaired() const noexcept { return repaired_; }
  double residual() const noexcept { return residual_; }

  UnitaryMatrix adjoint() const;
  UnitaryMatrix operator*(const UnitaryMatrix& other) const;

 private:
  struct Trusted {};
  UnitaryMatrix(ComplexMatrix m, double residual, Trusted);

  ComplexMatrix m_;
  bool repaired_ = false;
  double residual_ = 0.0;
};

/// An orthogonal projection P = P^2 = P*. Caches the rank and an orthonormal
/// basis of the range (eigenvectors with eigenvalue near 1).
class Projection {
 public:
  explicit Projection(ComplexMatrix m, double tolerance = kProjTol);

  /// Projection onto the column span of `columns` (need not be orthonormal).
  static Projection onto_span(const ComplexMatrix& columns, double rank_tol = 1e-9);
  static Projection zero(Eigen::Index dim);
  static Projection identity(Eigen::Index dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  Eigen::Index rank() const noexcept { return basis_.cols(); }
  /// dim x rank, orthonormal columns spanning the range.
  const ComplexMatrix& basis() const noexcept { return basis_; }
  /// dim x (dim - rank), orthonormal columns spanning the kernel.
  const ComplexMatrix& complement_basis() const noexcept { return complement_; }

  Projection complement() const;

 private:
  ComplexMatrix m_;
  ComplexMatrix basis_;
  ComplexMatrix complement_;
};

struct PolarFactor {
  UnitaryMatrix unitary;
  RealVector singular_values;
  /// Some singular value fell below 1e-12: the unitary factor is not unique.
  bool degenerate = false;
};

/// a = U |a| with U = W V* from the SVD a = W S V*.
PolarFactor polar_decompose(const ComplexMatrix& a);

inline UnitaryMatrix polar_unitary(const ComplexMatrix& a) { return polar_decompose(a).unitary; }

/// ||a - b||_op, the residual used throughout for matrix identities.
inline double op_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return operator_norm(a - b);
}

}  // namespace hyperlinear
