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

#include <cstddef>
#include <vector>

#include "hyperlinear/mat_core.hpp"
#include "hyperlinear/rng.hpp"

namespace hyperlinear {

/// Simultaneous splitting of two rank-n projections into rank-1 pieces
/// p = sum p_i, q = sum q_i with p_i, q_j orthogonal whenever i != j.
struct WedinPairing {
  std::vector<Projection> p_parts;
  std::vector<Projection> q_parts;
  /// Unit generators: column i spans p_i (resp. q_i), with <y_i, x_i> = cosines(i) >= 0.
  ComplexMatrix p_vectors;
  ComplexMatrix q_vectors;
  /// Cosines of the principal angles, non-increasing.
  RealVector cosines;

  std::size_t size() const noexcept { return p_parts.size(); }
};

/// Principal vectors from the SVD of the compression (ONB of q)* (ONB of p).
/// Ties among the cosines follow the SVD ordering; each x_i is then
/// phase-canonicalized and y_i gets the same phase.
WedinPairing wedin_pair(const Projection& p, const Projection& q);

struct SubspaceDistance {
  /// ||p - q||_op.
  double theta = 0.0;
  /// Hausdorff distance between the unit spheres of the ranges, maximized
  /// over the sampled points and the extremal principal vectors.
  double omega = 0.0;
  std::size_t samples = 0;

  bool within_bounds(double tol = 1e-9) const {
    return theta <= omega + tol && omega <= 2.0 * theta + tol;
  }
};

/// Distance from a unit vector x to the unit sphere of the range of q.
double distance_to_sphere(const ComplexVector& x, const Projection& q);

SubspaceDistance subspace_distances(const Projection& p, const Projection& q, std::size_t samples,
                                    RngSpec spec);

/// u with u p u* = q, built as one plane rotation x_i -> y_i per principal
/// pair, so ||(1 - u) p||_2^2 = sum_i ||x_i - y_i||^2.
UnitaryMatrix conjugating_unitary(const Projection& p, const Projection& q);

/// v commuting with p: the polar parts of the compressions of u to p(H)
/// and to its complement, reassembled as a block-diagonal unitary.
/// Requires 0 < eps < 1/2 and ||(1 - p) u p||_2^2 <= eps rk(p).
UnitaryMatrix almost_commuting_fix(const Projection& p, const UnitaryMatrix& u, double eps);

/// Residuals of the two orthogonality hypotheses p u p u* = 0 and u p u* q = 0.
struct OrthogonalityResiduals {
  double p_upu = 0.0;
  double upu_q = 0.0;
};

OrthogonalityResiduals orthogonality_residuals(const Projection& p, const Projection& q,
                                               const UnitaryMatrix& u);

/// (1 - p + u p) q (1 - p + p u*). Throws OrthogonalityViolated unless
/// p is orthogonal to u p u* and u p u* is orthogonal to q (tolerance 1e-9).
Projection disjointify(const Projection& p, const Projection& q, const UnitaryMatrix& u,
                       double tolerance = 1e-9);

/// (p - p u*)(p - u p) - 2p; vanishes under the hypotheses of disjointify.
ComplexMatrix disjointify_identity_residual(const Projection& p, const UnitaryMatrix& u);

/// Involution swapping p(H) with a subspace Z orthogonal to p(H) + q(H).
/// Throws DimensionTooSmall when dim < 2 rk(p) + rk(q).
UnitaryMatrix find_orthogonalizing_unitary(const Projection& p, const Projection& q);

}  // namespace hyperlinear
