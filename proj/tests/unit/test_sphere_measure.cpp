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


#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "hyperlinear/sphere_measure.hpp"

namespace hyperlinear {
namespace {

TEST(Rng, DeterministicAndStreamSeparated) {
  Rng a(RngSpec{7, 0}), b(RngSpec{7, 0}), c(RngSpec{7, 1}), d(RngSpec{8, 0});
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
}

TEST(Rng, SubstreamIgnoresConsumption) {
  Rng a(RngSpec{3, 4});
  const Rng fresh(RngSpec{3, 4});
  for (int i = 0; i < 17; ++i) a.next_u64();
  Rng s1 = a.substream(5), s2 = fresh.substream(5), s3 = fresh.substream(6);
  EXPECT_EQ(s1.next_u64(), s2.next_u64());
  EXPECT_NE(fresh.substream(5).next_u64(), s3.next_u64());
}

TEST(Rng, UniformRanges) {
  Rng r(RngSpec{1, 2});
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    const double v = r.uniform_open_zero();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / 100000.0));
}

TEST(SampleSphere, UnitNormAndCircleCase) {
  Rng r(RngSpec{1, 0});
  for (int i = 0; i < 100; ++i) {
    EXPECT_NEAR(sample_sphere(1, r).norm(), 1.0, 1e-15);
    EXPECT_NEAR(sample_sphere(9, r).norm(), 1.0, 1e-14);
  }
  EXPECT_THROW(sample_sphere(0, r), Error);
}

TEST(SampleSphere, FirstCoordinateMoments) {
  const std::size_t trials = 100000;
  const Eigen::Index d = 5;
  const Rng base(RngSpec{42, 0});
  Complex mean(0.0);
  double second = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng r = base.substream(t);
    const ComplexVector x = sample_sphere(d, r);
    mean += x(0);
    second += std::norm(x(0));
  }
  const double n = static_cast<double>(trials);
  EXPECT_LE(std::abs(mean / n), 4.0 / std::sqrt(n));
  EXPECT_NEAR(second / n, 1.0 / static_cast<double>(d), 4.0 / std::sqrt(n));
}

TEST(SampleSphere, BatchMatchesSubstreams) {
  const Rng base(RngSpec{9, 9});
  const ComplexMatrix xs = sample_sphere_batch(4, 10, 3, base);
  for (Eigen::Index j = 0; j < 3; ++j) {
    Rng r = base.substream(10 + static_cast<std::uint64_t>(j));
    EXPECT_EQ(xs.col(j), sample_sphere(4, r));
  }
}

TEST(HaarUnitary, ColumnsOrthonormal) {
  for (Eigen::Index d : {1, 2, 7, 40}) {
    const UnitaryMatrix u = haar_unitary(d, RngSpec{5, static_cast<std::uint64_t>(d)});
    EXPECT_LE(operator_norm(u.matrix().adjoint() * u.matrix() - ComplexMatrix::Identity(d, d)),
              1e-10);
    EXPECT_FALSE(u.repaired());
  }
  const UnitaryMatrix one = haar_unitary(1, RngSpec{5, 0});
  EXPECT_NEAR(std::abs(one.matrix()(0, 0)), 1.0, 1e-15);
}

TEST(HaarUnitary, TraceSecondMoment) {
  const std::size_t trials = 10000;
  const Rng base(RngSpec{77, 0});
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng r = base.substream(t);
    sum += std::norm(haar_unitary(4, r).matrix().trace());
  }
  EXPECT_NEAR(sum / static_cast<double>(trials), 1.0, 0.1);
}

TEST(HaarUnitary, DiagonalEntryBetaMoments) {
  // |<e1, u e1>|^2 ~ Beta(1, d-1): mean 1/d, variance (d-1)/(d^2 (d+1)).
  const std::size_t trials = 5000;
  const Eigen::Index d = 6;
  const Rng base(RngSpec{78, 0});
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng r = base.substream(t);
    sum += std::norm(haar_unitary(d, r).matrix()(0, 0));
  }
  const double dd = static_cast<double>(d);
  const double sigma = std::sqrt((dd - 1.0) / (dd * dd * (dd + 1.0)) / trials);
  EXPECT_NEAR(sum / trials, 1.0 / dd, 4.0 * sigma);
}

TEST(TraceIntegral, IdentityIsExact) {
  const TraceEstimate e = sphere_trace_integral(ComplexMatrix::Identity(6, 6), 1000, RngSpec{1, 1});
  EXPECT_NEAR(std::abs(e.mean - 1.0), 0.0, 1e-13);
  EXPECT_LE(e.standard_error, 1e-13);
}

TEST(TraceIntegral, RankOneProjection) {
  const Eigen::Index d = 8;
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  a(0, 0) = 1.0;
  const TraceEstimate e = sphere_trace_integral(a, 20000, RngSpec{2, 0});
  EXPECT_LE(std::abs(e.mean - 1.0 / d), 4.0 * e.standard_error);
  EXPECT_GT(e.standard_error, 0.0);
}

TEST(TraceIntegral, TracelessPermutation) {
  const Eigen::Index d = 5;
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) s((j + 2) % d, j) = 1.0;
  const TraceEstimate e = sphere_trace_integral(s, 20000, RngSpec{3, 0});
  EXPECT_LE(std::abs(e.mean), 4.0 * e.standard_error);
}

TEST(TraceIntegral, UnbiasedOverRepetitions) {
  testing::Gen gen(31);
  const Eigen::Index d = 6;
  const ComplexMatrix a = gen.matrix(d, d);
  const Complex exact = a.trace() / static_cast<double>(d);
  int inside = 0;
  for (std::uint64_t rep = 0; rep < 30; ++rep) {
    const TraceEstimate e = sphere_trace_integral(a, 2000, RngSpec{100, rep});
    if (std::abs(e.mean - exact) <= 4.0 * e.standard_error) ++inside;
  }
  EXPECT_GE(inside, 28);
}

TEST(ConcentrationBound, ClosedForms) {
  EXPECT_NEAR(concentration_bound(100, 1.0, 0.5, false), 2.0 * std::exp(-0.25 * 199.0 / 2.0),
              1e-24);
  EXPECT_NEAR(concentration_bound(100, 1.0, 0.5, false), 3.147e-11, 1e-14);
  EXPECT_NEAR(concentration_bound(25, 1.0, 0.3, false), 0.221, 5e-4);
  // Quadratic form of a unitary: 4 exp(-eps^2 (2 rk - 1) / 16).
  EXPECT_NEAR(concentration_bound(400, 2.0, 0.5, true), 4.0 * std::exp(-0.25 * 799.0 / 16.0),
              1e-18);
  EXPECT_NEAR(concentration_bound(400, 2.0, 0.5, true), 1.5e-5, 1e-6);
}

TEST(TestFunctionCatalog, Properties) {
  const TestFunction re = TestFunction::re_coord();
  EXPECT_EQ(re.id(), "re_coord");
  EXPECT_EQ(re.lipschitz(), 1.0);
  EXPECT_FALSE(re.complex_valued());
  const ComplexMatrix u = 3.0 * ComplexMatrix::Identity(4, 4);
  const TestFunction q = TestFunction::quad_form(u);
  EXPECT_TRUE(q.complex_valued());
  EXPECT_NEAR(q.lipschitz(), 6.0, 1e-12);
  EXPECT_NEAR(std::abs(*q.analytic_mean(4) - 3.0), 0.0, 1e-14);
  EXPECT_FALSE(TestFunction::abs_quad_form(u).analytic_mean(4).has_value());
  ComplexVector x = ComplexVector::Zero(4);
  x(1) = 1.0;
  EXPECT_NEAR(TestFunction::dist_to_vector()(x).real(), std::sqrt(2.0), 1e-15);
  try {
    TestFunction::from_id("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownFunction);
  }
  EXPECT_THROW(concentration_check(q, 5, 0.1, 10, {}), Error);
}

TEST(Concentration, HighDimensionNoTail) {
  const ConcentrationReport r =
      concentration_check(TestFunction::re_coord(), 100, 0.5, 20000, RngSpec{1, 0});
  EXPECT_EQ(r.empirical_tail, 0.0);
  EXPECT_TRUE(r.within_bound());
}

TEST(Concentration, ModerateDimensionBelowBound) {
  const ConcentrationReport r =
      concentration_check(TestFunction::re_coord(), 25, 0.3, 20000, RngSpec{2, 0});
  EXPECT_LE(r.empirical_tail, r.theoretical_bound + 0.05);
  EXPECT_GT(r.empirical_tail, 0.0);
}

TEST(Concentration, TailsShrinkWithDimension) {
  for (const char* id : {"re_coord", "dist_to_vector"}) {
    double previous = 1.0;
    for (Eigen::Index d : {25, 100, 400}) {
      const ConcentrationReport r =
          concentration_check(TestFunction::from_id(id), d, 0.1, 5000, RngSpec{3, 0});
      EXPECT_LE(r.empirical_tail, previous + statistical_slack(5000)) << id << " d = " << d;
      EXPECT_TRUE(r.within_bound());
      previous = r.empirical_tail;
    }
  }
}

TEST(Concentration, ReportsAreReproducible) {
  testing::Gen gen(4);
  const TestFunction f = TestFunction::abs_quad_form(gen.unitary(30));
  const ConcentrationReport a = concentration_check(f, 30, 0.2, 3000, RngSpec{5, 6});
  const ConcentrationReport b = concentration_check(f, 30, 0.2, 3000, RngSpec{5, 6});
  EXPECT_EQ(a.empirical_tail, b.empirical_tail);
  EXPECT_EQ(a.center, b.center);
  EXPECT_FALSE(a.analytic_center);
}

TEST(OnbSearch, EverythingSucceedsAtOnce) {
  const OnbSearch s = onb_in_set([](const ComplexVector&) { return true; }, 6, RngSpec{}, 3);
  ASSERT_TRUE(s.basis);
  EXPECT_EQ(s.tries_used, 1u);
  EXPECT_LE(operator_norm(s.basis->adjoint() * *s.basis - ComplexMatrix::Identity(6, 6)), 1e-9);
}

TEST(OnbSearch, HalfSpaceCap) {
  const OnbSearch s = onb_in_set([](const ComplexVector& x) { return x(0).real() <= 0.9; }, 8,
                                 RngSpec{6, 0}, 5);
  ASSERT_TRUE(s.basis);
  for (Eigen::Index j = 0; j < 8; ++j) EXPECT_LE((*s.basis)(0, j).real(), 0.9);
}

TEST(OnbSearch, ImpossiblePredicateExhausts) {
  try {
    onb_in_set([](const ComplexVector&) { return false; }, 3, RngSpec{}, 4);
    FAIL() << "expected Exhausted";
  } catch (const ExhaustedError& e) {
    EXPECT_EQ(e.code(), ErrorCode::Exhausted);
    ASSERT_EQ(e.pass_rates().size(), 4u);
    for (double r : e.pass_rates()) EXPECT_EQ(r, 0.0);
  }
  const OnbSearch s = onb_search([](const ComplexVector&) { return false; }, 3, RngSpec{}, 2);
  EXPECT_FALSE(s.basis);
  EXPECT_EQ(s.tries_used, 2u);
}

TEST(MassTransport, EqualProjectionsHaveTinyGap) {
  testing::Gen gen(7);
  const Projection p = gen.projection(12, 3);
  const MassTransportReport r = mass_transport_gap(p, p, 20, 2000, RngSpec{8, 0});
  EXPECT_LE(r.gap, r.slack);
  EXPECT_NEAR(r.bound, 0.0, 1e-12);
}

TEST(MassTransport, OrthogonalLines) {
  const Projection p(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
  const Projection q(ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}});
  const MassTransportReport r = mass_transport_gap(p, q, 10, 1000, RngSpec{9, 0});
  // ||q - p||_2 = sqrt(2), ||p||_2 = 1.
  EXPECT_NEAR(r.bound, 2.0, 1e-12);
  EXPECT_TRUE(r.within_bound());
}

TEST(MassTransport, RandomPairsWithinBound) {
  testing::Gen gen(10);
  for (std::uint64_t t = 0; t < 10; ++t) {
    const Eigen::Index d = gen.integer(2, 24);
    const Eigen::Index k = gen.integer(1, static_cast<int>(d) / 2);
    const Projection p = gen.projection(d, k);
    const Projection q = gen.projection(d, k);
    const MassTransportReport r = mass_transport_gap(p, q, 16, 1000, RngSpec{11, t});
    EXPECT_TRUE(r.within_bound()) << r.gap << " vs " << r.bound;
  }
}

TEST(MassTransport, Errors) {
  testing::Gen gen(12);
  try {
    mass_transport_gap(gen.projection(4, 1), gen.projection(4, 2), 4, 10, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankMismatch);
  }
  EXPECT_THROW(mass_transport_gap(Projection::zero(3), Projection::zero(3), 4, 10, {}), Error);
}

}  // namespace
}  // namespace hyperlinear
