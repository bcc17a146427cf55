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


#include "hyperlinear/proj_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hyperlinear/sphere_measure.hpp"

namespace hyperlinear {

namespace {

void require_same_dim(const Projection& p, const Projection& q, const char* context) {
  if (p.dim() != q.dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(context) + ": dimensions " +
                                                  std::to_string(p.dim()) + " and " +
                                                  std::to_string(q.dim()));
  }
}

void require_same_rank(const Projection& p, const Projection& q, const char* context) {
  require_same_dim(p, q, context);
  if (p.rank() != q.rank()) {
    throw Error(ErrorCode::RankMismatch, std::string(context) + ": rk(p) = " +
                                             std::to_string(p.rank()) + ", rk(q) = " +
                                             std::to_string(q.rank()));
  }
}

Projection rank_one(const ComplexVector& x) { return Projection(x * x.adjoint()); }

// Unit vector of the range of `from` whose image under `to` is shortest.
ComplexVector least_covered(const Projection& from, const Projection& to) {
  const ComplexMatrix c = to.basis().adjoint() * from.basis();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(c.adjoint() * c);
  return from.basis() * eig.eigenvectors().col(0);
}

}  // namespace

WedinPairing wedin_pair(const Projection& p, const Projection& q) {
  require_same_rank(p, q, "wedin_pair");
  if (p.rank() == 0) throw Error(ErrorCode::ZeroRank, "wedin_pair: rank must be >= 1");
  const ComplexMatrix m = q.basis().adjoint() * p.basis();
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);

  WedinPairing out;
  out.cosines = svd.singularValues();
  out.p_vectors = p.basis() * svd.matrixV();
  out.q_vectors = q.basis() * svd.matrixU();
  const auto n = static_cast<std::size_t>(p.rank());
  out.p_parts.reserve(n);
  out.q_parts.reserve(n);
  for (Eigen::Index i = 0; i < p.rank(); ++i) {
    ComplexVector x = out.p_vectors.col(i);
    ComplexVector y = out.q_vectors.col(i);
    const Complex phase = canonicalize_phase(x);
    y *= phase;
    if (out.cosines(i) < 1e-12) canonicalize_phase(y);
    out.p_vectors.col(i) = x;
    out.q_vectors.col(i) = y;
    out.p_parts.push_back(rank_one(x));
    out.q_parts.push_back(rank_one(y));
  }
  return out;
}

double distance_to_sphere(const ComplexVector& x, const Projection& q) {
  const double c = (q.basis().adjoint() * x).norm();
  if (c == 0.0) return std::numbers::sqrt2;
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * c));
}

SubspaceDistance subspace_distances(const Projection& p, const Projection& q, std::size_t samples,
                                    RngSpec spec) {
  require_same_dim(p, q, "subspace_distances");
  if (p.rank() == 0 || q.rank() == 0) {
    throw Error(ErrorCode::ZeroRank, "subspace_distances: both projections must be nonzero");
  }
  SubspaceDistance out;
  out.samples = samples;
  out.theta = operator_norm(p.matrix() - q.matrix());

  double omega = std::max(distance_to_sphere(least_covered(p, q), q),
                          distance_to_sphere(least_covered(q, p), p));
  const Rng base(spec);
  const Rng p_side = base.substream(0);
  const Rng q_side = base.substream(1);
  for (std::size_t k = 0; k < samples; ++k) {
    Rng rp = p_side.substream(k);
    Rng rq = q_side.substream(k);
    omega = std::max(omega, distance_to_sphere(sample_subspace_sphere(p.basis(), rp), q));
    omega = std::max(omega, distance_to_sphere(sample_subspace_sphere(q.basis(), rq), p));
  }
  out.omega = omega;
  return out;
}

UnitaryMatrix conjugating_unitary(const Projection& p, const Projection& q) {
  require_same_rank(p, q, "conjugating_unitary");
  const Eigen::Index d = p.dim();
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  if (p.rank() == 0) return UnitaryMatrix(std::move(u));
  const WedinPairing pairing = wedin_pair(p, q);
  for (Eigen::Index i = 0; i < pairing.cosines.size(); ++i) {
    const ComplexVector x = pairing.p_vectors.col(i);
    const ComplexVector y = pairing.q_vectors.col(i);
    const double c = std::clamp(pairing.cosines(i), 0.0, 1.0);
    ComplexVector w = y - c * x;
    const double s = w.norm();
    if (s < 1e-14) continue;
    w /= s;
    // Rotation in span(x, w): x -> y = c x + s w, w -> -s x + c w.
    const ComplexVector rw = -s * x + c * w;
    u += y * x.adjoint() + rw * w.adjoint() - x * x.adjoint() - w * w.adjoint();
  }
  return UnitaryMatrix(std::move(u));
}

UnitaryMatrix almost_commuting_fix(const Projection& p, const UnitaryMatrix& u, double eps) {
  if (p.dim() != u.dim()) throw Error(ErrorCode::DimensionMismatch, "almost_commuting_fix");
  if (p.rank() == 0) throw Error(ErrorCode::ZeroRank, "almost_commuting_fix: rk(p) must be >= 1");
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(ErrorCode::PreconditionViolated,
                "almost_commuting_fix: eps must lie in (0, 1/2), got " + std::to_string(eps));
  }
  const ComplexMatrix& pb = p.basis();
  const ComplexMatrix& cb = p.complement_basis();
  const ComplexMatrix& um = u.matrix();
  const double leak = (cb.adjoint() * um * pb).squaredNorm();
  const double budget = eps * static_cast<double>(p.rank());
  if (leak > budget) {
    throw Error(ErrorCode::PreconditionViolated,
                "almost_commuting_fix: ||(1-p)up||_2^2 = " + std::to_string(leak) +
                    " exceeds eps rk(p) = " + std::to_string(budget));
  }
  ComplexMatrix v = pb * polar_unitary(pb.adjoint() * um * pb).matrix() * pb.adjoint();
  if (cb.cols() > 0) v += cb * polar_unitary(cb.adjoint() * um * cb).matrix() * cb.adjoint();
  return UnitaryMatrix(std::move(v));
}

OrthogonalityResiduals orthogonality_residuals(const Projection& p, const Projection& q,
                                               const UnitaryMatrix& u) {
  if (p.dim() != u.dim() || q.dim() != u.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "orthogonality_residuals");
  }
  // The range of u p u* is spanned by u Pb.
  const ComplexMatrix moved = u.matrix() * p.basis();
  OrthogonalityResiduals r;
  if (p.rank() == 0) return r;
  r.p_upu = operator_norm(p.basis().adjoint() * moved);
  if (q.rank() > 0) r.upu_q = operator_norm(q.basis().adjoint() * moved);
  return r;
}

Projection disjointify(const Projection& p, const Projection& q, const UnitaryMatrix& u,
                       double tolerance) {
  const OrthogonalityResiduals r = orthogonality_residuals(p, q, u);
  if (r.p_upu > tolerance || r.upu_q > tolerance) {
    throw Error(ErrorCode::OrthogonalityViolated,
                "disjointify: ||p upu*|| = " + std::to_string(r.p_upu) +
                    ", ||upu* q|| = " + std::to_string(r.upu_q));
  }
  const Eigen::Index d = p.dim();
  const ComplexMatrix& pm = p.matrix();
  const ComplexMatrix& um = u.matrix();
  const ComplexMatrix a = ComplexMatrix::Identity(d, d) - pm + um * pm;
  ComplexMatrix out = a * q.matrix() * a.adjoint();
  return Projection(std::move(out), 1e-8);
}

ComplexMatrix disjointify_identity_residual(const Projection& p, const UnitaryMatrix& u) {
  const ComplexMatrix& pm = p.matrix();
  const ComplexMatrix& um = u.matrix();
  return (pm - pm * um.adjoint()) * (pm - um * pm) - 2.0 * pm;
}

UnitaryMatrix find_orthogonalizing_unitary(const Projection& p, const Projection& q) {
  require_same_dim(p, q, "find_orthogonalizing_unitary");
  const Eigen::Index d = p.dim();
  const Eigen::Index rp = p.rank();
  if (d < 2 * rp + q.rank()) {
    throw Error(ErrorCode::DimensionTooSmall,
                "find_orthogonalizing_unitary: need dim >= 2 rk(p) + rk(q) = " +
                    std::to_string(2 * rp + q.rank()) + ", have " + std::to_string(d));
  }
  if (rp == 0) return UnitaryMatrix::identity(d);
  ComplexMatrix both(d, rp + q.rank());
  both << p.basis(), q.basis();
  const ComplexMatrix z = orthonormal_complement(both).leftCols(rp);
  const ComplexMatrix& pb = p.basis();
  ComplexMatrix u = ComplexMatrix::Identity(d, d) - pb * pb.adjoint() - z * z.adjoint() +
                    z * pb.adjoint() + pb * z.adjoint();
  return UnitaryMatrix(std::move(u));
}

}  // namespace hyperlinear
