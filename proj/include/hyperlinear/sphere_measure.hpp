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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperlinear/mat_core.hpp"
#include "hyperlinear/rng.hpp"

namespace hyperlinear {

/// 5/sqrt(trials): allowance for Monte Carlo noise on a Bernoulli frequency.
inline double statistical_slack(std::size_t trials) {
  return 5.0 / std::sqrt(static_cast<double>(trials));
}

/// Normalized standard complex Gaussian vector in C^dim.
ComplexVector sample_sphere(Eigen::Index dim, Rng& rng);
ComplexVector sample_sphere(Eigen::Index dim, RngSpec spec);

/// Uniform point on the unit sphere of the column span of an orthonormal `basis`.
ComplexVector sample_subspace_sphere(const ComplexMatrix& basis, Rng& rng);

/// `count` sphere samples as columns; column j is drawn from base.substream(first + j).
ComplexMatrix sample_sphere_batch(Eigen::Index dim, std::size_t first, std::size_t count,
                                  const Rng& base);

ComplexMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar unitary: QR of a complex Gaussian matrix, columns rescaled by the
/// phases of diag(R).
UnitaryMatrix haar_unitary(Eigen::Index dim, Rng& rng);
UnitaryMatrix haar_unitary(Eigen::Index dim, RngSpec spec);

struct TraceEstimate {
  Complex mean;
  /// Standard error of the mean of <x, a x> (complex modulus).
  double standard_error = 0.0;
  std::size_t trials = 0;
};

/// Monte Carlo estimate of the sphere average of <x, a x>, which equals tr(a)/dim.
TraceEstimate sphere_trace_integral(const ComplexMatrix& a, std::size_t trials, RngSpec spec);

/// Lipschitz test functions on the unit sphere of C^dim.
class TestFunction {
 public:
  enum class Kind { ReCoord, DistToVector, QuadForm, AbsQuadForm };

  /// f(x) = Re x_0; 1-Lipschitz, mean 0.
  static TestFunction re_coord();
  /// f(x) = ||x - w||; 1-Lipschitz. Defaults to w = e_0 when w is empty.
  static TestFunction dist_to_vector(ComplexVector w = {});
  /// f(x) = <x, a x>; complex valued, 2||a||-Lipschitz, mean tr(a)/dim.
  static TestFunction quad_form(ComplexMatrix a);
  /// f(x) = |<x, a x>|; 2||a||-Lipschitz.
  static TestFunction abs_quad_form(ComplexMatrix a);

  /// Catalog lookup by id: re_coord, dist_to_vector, quad_form, abs_quad_form.
  /// The matrix is used by the quadratic forms and ignored otherwise.
  static TestFunction from_id(const std::string& id, const ComplexMatrix& a = {});

  Kind kind() const noexcept { return kind_; }
  std::string id() const;
  bool complex_valued() const noexcept { return kind_ == Kind::QuadForm; }
  double lipschitz() const;
  std::optional<Complex> analytic_mean(Eigen::Index dim) const;
  Complex operator()(const ComplexVector& x) const;

  /// Values on every column of `xs`.
  std::vector<Complex> evaluate_columns(const ComplexMatrix& xs) const;

  void check_dimension(Eigen::Index dim) const;

 private:
  TestFunction(Kind kind, ComplexMatrix a, ComplexVector w);

  Kind kind_;
  ComplexMatrix a_;
  ComplexVector w_;
  double a_norm_ = 0.0;
};

/// 2 exp(-eps^2 (2 dim - 1) / (2 l^2)) for real f, 4 exp(-eps^2 (2 dim - 1) / (4 l^2))
/// for complex f.
double concentration_bound(Eigen::Index dim, double lipschitz, double eps, bool complex_valued);

struct ConcentrationReport {
  Eigen::Index dim = 0;
  double lipschitz = 0.0;
  double eps = 0.0;
  std::size_t trials = 0;
  double empirical_tail = 0.0;
  double theoretical_bound = 0.0;
  std::string function_id;
  RngSpec rng;
  /// Analytic mean used, or the empirical mean of an independent first pass.
  Complex center;
  bool analytic_center = false;

  bool within_bound() const {
    return empirical_tail <= theoretical_bound + statistical_slack(trials);
  }
};

ConcentrationReport concentration_check(const TestFunction& f, Eigen::Index dim, double eps,
                                        std::size_t trials, RngSpec spec);

using VectorPredicate = std::function<bool(const ComplexVector&)>;

struct OnbSearch {
  /// Columns form the witness basis when the search succeeded.
  std::optional<ComplexMatrix> basis;
  std::size_t tries_used = 0;
  /// Fraction of columns satisfying the predicate, one entry per try.
  std::vector<double> pass_rates;
};

/// Tries up to max_tries Haar rotations of the standard basis (try t uses
/// substream t) and stops at the first whose columns all satisfy `in_set`.
OnbSearch onb_search(const VectorPredicate& in_set, Eigen::Index dim, RngSpec spec,
                     std::size_t max_tries);

/// As onb_search, but throws ExhaustedError (with pass rates) on failure, so
/// the returned basis is always engaged.
OnbSearch onb_in_set(const VectorPredicate& in_set, Eigen::Index dim, RngSpec spec,
                     std::size_t max_tries);

struct MassTransportReport {
  double gap = 0.0;
  /// sqrt(2)/||p||_2 * ||q - p||_2.
  double bound = 0.0;
  double slack = 0.0;
  std::size_t family_size = 0;
  std::size_t samples = 0;

  bool within_bound() const { return gap <= bound + slack; }
};

/// Largest |E_p f - E_q f| over a sampled family of 1-Lipschitz functions
/// S(H) -> [-1, 1], each expectation over the unit sphere of the range.
MassTransportReport mass_transport_gap(const Projection& p, const Projection& q,
                                       std::size_t family_size, std::size_t samples,
                                       RngSpec spec);

}  // namespace hyperlinear
