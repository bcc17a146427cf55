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

#include "hyperlinear/sphere_measure.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

namespace hyperlinear {

namespace {

// Column batches keep the sample matrices in cache-sized pieces.
constexpr std::size_t kBatch = 512;

}  // namespace

ComplexVector sample_sphere(Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::BadParams, "sample_sphere: dim must be >= 1");
  ComplexVector x(dim);
  double norm2 = 0.0;
  // A zero Gaussian vector has probability zero; redraw just in case.
  do {
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = rng.complex_gaussian();
    norm2 = x.squaredNorm();
  } while (norm2 == 0.0);
  return x / std::sqrt(norm2);
}

ComplexVector sample_sphere(Eigen::Index dim, RngSpec spec) {
  Rng rng(spec);
  return sample_sphere(dim, rng);
}

ComplexVector sample_subspace_sphere(const ComplexMatrix& basis, Rng& rng) {
  return basis * sample_sphere(basis.cols(), rng);
}

ComplexMatrix sample_sphere_batch(Eigen::Index dim, std::size_t first, std::size_t count,
                                  const Rng& base) {
  ComplexMatrix xs(dim, static_cast<Eigen::Index>(count));
  for (std::size_t j = 0; j < count; ++j) {
    Rng rng = base.substream(first + j);
    xs.col(static_cast<Eigen::Index>(j)) = sample_sphere(dim, rng);
  }
  return xs;
}

ComplexMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  }
  return g;
}

UnitaryMatrix haar_unitary(Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::BadParams, "haar_unitary: dim must be >= 1");
  const ComplexMatrix g = complex_gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mod = std::abs(rjj);
    if (mod > 0.0) q.col(j) *= rjj / mod;
  }
  return UnitaryMatrix(std::move(q));
}

UnitaryMatrix haar_unitary(Eigen::Index dim, RngSpec spec) {
  Rng rng(spec);
  return haar_unitary(dim, rng);
}

TraceEstimate sphere_trace_integral(const ComplexMatrix& a, std::size_t trials, RngSpec spec) {
  require_square(a, "sphere_trace_integral");
  if (trials < 2) throw Error(ErrorCode::BadParams, "sphere_trace_integral: need >= 2 trials");
  const Rng base(spec);
  std::vector<Complex> values;
  values.reserve(trials);
  for (std::size_t first = 0; first < trials; first += kBatch) {
    const std::size_t count = std::min(kBatch, trials - first);
    const ComplexMatrix xs = sample_sphere_batch(a.rows(), first, count, base);
    const ComplexMatrix ys = a * xs;
    for (Eigen::Index j = 0; j < xs.cols(); ++j) values.push_back(xs.col(j).dot(ys.col(j)));
  }
  Complex mean(0.0, 0.0);
  for (const Complex& z : values) mean += z;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (const Complex& z : values) ss += std::norm(z - mean);
  const double n = static_cast<double>(trials);
  return {mean, std::sqrt(ss / (n * (n - 1.0))), trials};
}

TestFunction::TestFunction(Kind kind, ComplexMatrix a, ComplexVector w)
    : kind_(kind), a_(std::move(a)), w_(std::move(w)) {
  if (a_.size() > 0) {
    require_square(a_, "TestFunction");
    require_finite(a_, "TestFunction");
    a_norm_ = operator_norm(a_);
  }
}

TestFunction TestFunction::re_coord() { return TestFunction(Kind::ReCoord, {}, {}); }

TestFunction TestFunction::dist_to_vector(ComplexVector w) {
  return TestFunction(Kind::DistToVector, {}, std::move(w));
}

TestFunction TestFunction::quad_form(ComplexMatrix a) {
  if (a.size() == 0) throw Error(ErrorCode::BadParams, "quad_form needs a matrix");
  return TestFunction(Kind::QuadForm, std::move(a), {});
}

TestFunction TestFunction::abs_quad_form(ComplexMatrix a) {
  if (a.size() == 0) throw Error(ErrorCode::BadParams, "abs_quad_form needs a matrix");
  return TestFunction(Kind::AbsQuadForm, std::move(a), {});
}

TestFunction TestFunction::from_id(const std::string& id, const ComplexMatrix& a) {
  if (id == "re_coord") return re_coord();
  if (id == "dist_to_vector") return dist_to_vector();
  if (id == "quad_form") return quad_form(a);
  if (id == "abs_quad_form") return abs_quad_form(a);
  throw Error(ErrorCode::UnknownFunction, "unknown test function '" + id + "'");
}

std::string TestFunction::id() const {
  switch (kind_) {
    case Kind::ReCoord: return "re_coord";
    case Kind::DistToVector: return "dist_to_vector";
    case Kind::QuadForm: return "quad_form";
    case Kind::AbsQuadForm: return "abs_quad_form";
  }
  return "unknown";
}

double TestFunction::lipschitz() const {
  switch (kind_) {
    case Kind::ReCoord:
    case Kind::DistToVector:
      return 1.0;
    case Kind::QuadForm:
    case Kind::AbsQuadForm:
      return 2.0 * a_norm_;
  }
  return 0.0;
}

std::optional<Complex> TestFunction::analytic_mean(Eigen::Index dim) const {
  switch (kind_) {
    case Kind::ReCoord:
      return Complex(0.0, 0.0);
    case Kind::QuadForm:
      return a_.trace() / static_cast<double>(dim);
    case Kind::DistToVector:
    case Kind::AbsQuadForm:
      return std::nullopt;
  }
  return std::nullopt;
}

void TestFunction::check_dimension(Eigen::Index dim) const {
  if (a_.size() > 0 && a_.rows() != dim) {
    throw Error(ErrorCode::DimensionMismatch, id() + ": matrix is " + std::to_string(a_.rows()) +
                                                  "-dimensional, sphere is " + std::to_string(dim));
  }
  if (w_.size() > 0 && w_.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, id() + ": reference vector has wrong dimension");
  }
}

Complex TestFunction::operator()(const ComplexVector& x) const {
  switch (kind_) {
    case Kind::ReCoord:
      return x(0).real();
    case Kind::DistToVector: {
      ComplexVector diff = x;
      if (w_.size() > 0) {
        diff -= w_;
      } else {
        diff(0) -= 1.0;
      }
      return diff.norm();
    }
    case Kind::QuadForm:
      return x.dot(a_ * x);
    case Kind::AbsQuadForm:
      return std::abs(x.dot(a_ * x));
  }
  return 0.0;
}

std::vector<Complex> TestFunction::evaluate_columns(const ComplexMatrix& xs) const {
  std::vector<Complex> out(static_cast<std::size_t>(xs.cols()));
  if (kind_ == Kind::QuadForm || kind_ == Kind::AbsQuadForm) {
    const ComplexMatrix ys = a_ * xs;
    for (Eigen::Index j = 0; j < xs.cols(); ++j) {
      const Complex z = xs.col(j).dot(ys.col(j));
      out[static_cast<std::size_t>(j)] = kind_ == Kind::QuadForm ? z : Complex(std::abs(z), 0.0);
    }
    return out;
  }
  for (Eigen::Index j = 0; j < xs.cols(); ++j) {
    out[static_cast<std::size_t>(j)] = (*this)(xs.col(j));
  }
  return out;
}

double concentration_bound(Eigen::Index dim, double lipschitz, double eps, bool complex_valued) {
  const double n = 2.0 * static_cast<double>(dim) - 1.0;
  if (lipschitz == 0.0) return 0.0;
  const double l2 = lipschitz * lipschitz;
  if (complex_valued) return 4.0 * std::exp(-eps * eps * n / (4.0 * l2));
  return 2.0 * std::exp(-eps * eps * n / (2.0 * l2));
}

ConcentrationReport concentration_check(const TestFunction& f, Eigen::Index dim, double eps,
                                        std::size_t trials, RngSpec spec) {
  if (dim < 1) throw Error(ErrorCode::BadParams, "concentration_check: dim must be >= 1");
  if (!(eps > 0.0)) throw Error(ErrorCode::BadParams, "concentration_check: eps must be > 0");
  if (trials < 1) throw Error(ErrorCode::BadParams, "concentration_check: trials must be >= 1");
  f.check_dimension(dim);

  const Rng base(spec);
  const Rng main_stream = base.substream(0);
  const Rng pilot_stream = base.substream(1);

  ConcentrationReport report;
  report.dim = dim;
  report.lipschitz = f.lipschitz();
  report.eps = eps;
  report.trials = trials;
  report.function_id = f.id();
  report.rng = spec;
  report.theoretical_bound = concentration_bound(dim, report.lipschitz, eps, f.complex_valued());

  if (auto mean = f.analytic_mean(dim)) {
    report.center = *mean;
    report.analytic_center = true;
  } else {
    Complex sum(0.0, 0.0);
    for (std::size_t first = 0; first < trials; first += kBatch) {
      const std::size_t count = std::min(kBatch, trials - first);
      for (const Complex& v : f.evaluate_columns(sample_sphere_batch(dim, first, count, pilot_stream))) {
        sum += v;
      }
    }
    report.center = sum / static_cast<double>(trials);
  }

  std::size_t exceed = 0;
  for (std::size_t first = 0; first < trials; first += kBatch) {
    const std::size_t count = std::min(kBatch, trials - first);
    for (const Complex& v : f.evaluate_columns(sample_sphere_batch(dim, first, count, main_stream))) {
      if (std::abs(v - report.center) > eps) ++exceed;
    }
  }
  report.empirical_tail = static_cast<double>(exceed) / static_cast<double>(trials);
  return report;
}

OnbSearch onb_search(const VectorPredicate& in_set, Eigen::Index dim, RngSpec spec,
                     std::size_t max_tries) {
  if (dim < 1) throw Error(ErrorCode::BadParams, "onb_in_set: dim must be >= 1");
  if (max_tries < 1) throw Error(ErrorCode::BadParams, "onb_in_set: max_tries must be >= 1");
  const Rng base(spec);
  OnbSearch result;
  for (std::size_t t = 0; t < max_tries; ++t) {
    Rng rng = base.substream(t);
    const UnitaryMatrix u = haar_unitary(dim, rng);
    std::size_t passed = 0;
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (in_set(u.matrix().col(j))) ++passed;
    }
    result.tries_used = t + 1;
    result.pass_rates.push_back(static_cast<double>(passed) / static_cast<double>(dim));
    if (passed == static_cast<std::size_t>(dim)) {
      result.basis = u.matrix();
      return result;
    }
  }
  return result;
}

OnbSearch onb_in_set(const VectorPredicate& in_set, Eigen::Index dim, RngSpec spec,
                     std::size_t max_tries) {
  OnbSearch result = onb_search(in_set, dim, spec, max_tries);
  if (!result.basis) {
    throw ExhaustedError("no orthonormal basis inside the set after " +
                             std::to_string(max_tries) + " Haar rotations",
                         result.pass_rates);
  }
  return result;
}

MassTransportReport mass_transport_gap(const Projection& p, const Projection& q,
                                       std::size_t family_size, std::size_t samples,
                                       RngSpec spec) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "mass_transport_gap");
  if (p.rank() != q.rank()) {
    throw Error(ErrorCode::RankMismatch, "mass_transport_gap: rk(p) = " +
                                             std::to_string(p.rank()) + ", rk(q) = " +
                                             std::to_string(q.rank()));
  }
  if (p.rank() == 0) throw Error(ErrorCode::ZeroRank, "mass_transport_gap: rank must be >= 1");
  if (family_size < 1 || samples < 1) {
    throw Error(ErrorCode::BadParams, "mass_transport_gap: empty family or sample set");
  }
  const Eigen::Index d = p.dim();
  const Rng base(spec);
  const Rng family_stream = base.substream(0);

  // Even members: clamp(Re<v, x>); odd members: clamp(||x - w|| - c). The
  // anchors v, w alternate between the whole sphere and the sphere of p(H),
  // so part of the family actually sees the difference between the subspaces.
  const auto fsize = static_cast<Eigen::Index>(family_size);
  ComplexMatrix anchors(d, fsize);
  std::vector<double> offsets(family_size, 0.0);
  for (std::size_t k = 0; k < family_size; ++k) {
    Rng rng = family_stream.substream(k);
    const bool from_p = (k / 2) % 2 == 1;
    anchors.col(static_cast<Eigen::Index>(k)) =
        from_p ? sample_subspace_sphere(p.basis(), rng) : sample_sphere(d, rng);
    if (k % 2 == 1) offsets[k] = 2.0 * rng.uniform();
  }

  auto family_means = [&](const ComplexMatrix& basis, const Rng& stream) {
    std::vector<double> sums(family_size, 0.0);
    for (std::size_t first = 0; first < samples; first += kBatch) {
      const std::size_t count = std::min(kBatch, samples - first);
      ComplexMatrix xs(d, static_cast<Eigen::Index>(count));
      for (std::size_t j = 0; j < count; ++j) {
        Rng rng = stream.substream(first + j);
        xs.col(static_cast<Eigen::Index>(j)) = sample_subspace_sphere(basis, rng);
      }
      const ComplexMatrix inner = anchors.adjoint() * xs;
      for (std::size_t k = 0; k < family_size; ++k) {
        for (Eigen::Index j = 0; j < xs.cols(); ++j) {
          const double re = inner(static_cast<Eigen::Index>(k), j).real();
          double value;
          if (k % 2 == 0) {
            value = re;
          } else {
            // Both points are unit vectors: ||x - w||^2 = 2 - 2 Re<w, x>.
            value = std::sqrt(std::max(0.0, 2.0 - 2.0 * re)) - offsets[k];
          }
          sums[k] += std::clamp(value, -1.0, 1.0);
        }
      }
    }
    for (double& s : sums) s /= static_cast<double>(samples);
    return sums;
  };

  const std::vector<double> mean_p = family_means(p.basis(), base.substream(1));
  const std::vector<double> mean_q = family_means(q.basis(), base.substream(2));

  MassTransportReport report;
  report.family_size = family_size;
  report.samples = samples;
  report.slack = statistical_slack(samples);
  for (std::size_t k = 0; k < family_size; ++k) {
    report.gap = std::max(report.gap, std::abs(mean_p[k] - mean_q[k]));
  }
  report.bound = std::sqrt(2.0) / std::sqrt(static_cast<double>(p.rank())) *
                 (q.matrix() - p.matrix()).norm();
  return report;
}

}  // namespace hyperlinear
