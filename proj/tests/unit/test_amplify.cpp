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
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "hyperlinear/amplify.hpp"

namespace hyperlinear {
namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::Io;
}

// Reference count: the smallest n with b^n <= eps and f^n >= 1/eps, by
// repeated multiplication instead of pow.
std::size_t oracle_power(double b, double eps, double f) {
  double level = 1.0, dim = 1.0;
  for (std::size_t n = 1;; ++n) {
    level *= b;
    dim *= f;
    if (level <= eps * (1.0 + 1e-15) && dim >= 1.0 / eps) return n;
  }
}

TEST(Doubling, LevelOneTraces) {
  const LazyRep chi = double_rep(cyclic_character(4, 1));
  EXPECT_TRUE(chi.doubled());
  EXPECT_EQ(chi.tensor_power(), 1u);
  EXPECT_EQ(chi.effective_dim(), 2);
  EXPECT_NEAR(std::abs(chi.level1_trace(Word({1}))), std::numbers::sqrt2 / 2.0, 1e-15);
  EXPECT_NEAR(std::abs(double_rep(integer_phase(std::numbers::pi)).level1_trace(Word({1}))), 0.0,
              1e-15);
  EXPECT_NEAR(std::abs(double_rep(integer_phase(0.0)).level1_trace(Word({1})) - 1.0), 0.0, 0.0);
}

TEST(Doubling, StrictContraction) {
  // |z + 1|^2 = |z|^2 + 2 Re z + 1 <= 2 + 2 Re z < 4 for |z| <= 1, z != 1.
  testing::Gen gen(401);
  for (int t = 0; t < 1000; ++t) {
    const Complex z = std::polar(std::sqrt(gen.uniform()), gen.uniform(0.0, 2.0 * std::numbers::pi));
    if (z == 1.0) continue;
    const double m = std::abs(z + 1.0);
    EXPECT_LE(m * m, 2.0 + 2.0 * z.real() + 1e-12);
    EXPECT_LT(m, 2.0);
    // 1 - |z+1|/2 >= (1 - Re z)/4 follows from sqrt(1 - x) <= 1 - x/2.
    EXPECT_GE(1.0 - m / 2.0, (1.0 - z.real()) / 4.0 - 1e-12);
  }
}

TEST(Plan, ClosedFormExamples) {
  const AmplificationPlan a = plan(std::numbers::sqrt2 / 2.0, 0.01);
  EXPECT_EQ(a.schedule, Schedule::PaperSlack);
  EXPECT_EQ(a.n, 30u);
  EXPECT_NEAR(a.level_bound, (1.0 + std::numbers::sqrt2 / 2.0) / 2.0, 1e-15);
  const AmplificationPlan b = plan(std::numbers::sqrt2 / 2.0, 0.01, Schedule::ExactTrace);
  EXPECT_EQ(b.n, 14u);
  EXPECT_EQ(plan(0.0, 0.25).n, 2u);
  EXPECT_EQ(plan(0.0, 1.0).n, 1u);
}

TEST(Plan, InvariantsAndMinimality) {
  testing::Gen gen(402);
  for (int t = 0; t < 300; ++t) {
    const double gamma = gen.uniform(0.0, 0.999);
    const double eps = std::exp(gen.uniform(std::log(1e-4), 0.0));
    const Schedule s = gen.integer(0, 1) ? Schedule::PaperSlack : Schedule::ExactTrace;
    const std::uint64_t factor = static_cast<std::uint64_t>(gen.integer(2, 20));
    const AmplificationPlan p = plan(gamma, eps, s, factor);
    const double b = s == Schedule::PaperSlack ? (1.0 + gamma) / 2.0 : gamma;
    const double nn = static_cast<double>(p.n);
    EXPECT_LE(std::pow(b, nn), eps);
    EXPECT_GE(std::pow(static_cast<double>(factor), nn), 1.0 / eps);
    EXPECT_LE(2.0 * std::sqrt(-std::expm1(nn * std::log1p(-p.delta))), eps);
    if (p.n > 1) {
      const double m = nn - 1.0;
      EXPECT_FALSE(std::pow(b, m) <= eps && std::pow(static_cast<double>(factor), m) >= 1.0 / eps);
    }
    EXPECT_EQ(p.n, oracle_power(b, eps, static_cast<double>(factor)));
  }
}

TEST(Plan, Errors) {
  EXPECT_EQ(code_of([] { plan(1.0, 0.1); }), ErrorCode::GammaOutOfRange);
  EXPECT_EQ(code_of([] { plan(-0.1, 0.1); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { plan(0.5, 0.0); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { plan(0.5, 1.5); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { plan(0.5, 0.5, Schedule::ExactTrace, 1); }), ErrorCode::BadParams);
}

TEST(DeltaSchedule, LargestFeasibleDouble) {
  for (double eps : {1e-3, 0.01, 0.1, 0.5, 1.0}) {
    for (std::size_t n : {1u, 2u, 14u, 30u, 1000u}) {
      const double d = delta_schedule(eps, n);
      const double nn = static_cast<double>(n);
      auto ok = [&](double x) {
        return 2.0 * std::sqrt(-std::expm1(nn * std::log1p(-x))) <= eps;
      };
      EXPECT_TRUE(ok(d));
      EXPECT_FALSE(ok(std::nextafter(d, 1.0)));
      EXPECT_NEAR(d, 1.0 - std::pow(1.0 - eps * eps / 4.0, 1.0 / nn), 1e-12);
    }
  }
}

TEST(LazyRep, EffectiveDimensionIsExact) {
  const LazyRep s3(regular_finite(GroupSpec::symmetric(3)), false, 40);
  EXPECT_EQ(s3.effective_dim().str(), "13367494538843734067838845976576");
  const LazyRep doubled(cyclic_character(4, 1), true, 14);
  EXPECT_EQ(doubled.effective_dim(), 16384);
  for (std::size_t n : {1u, 7u, 63u, 200u}) {
    const LazyRep l = doubled.with_power(n);
    EXPECT_GE(boost::multiprecision::msb(l.effective_dim()), n);
    EXPECT_EQ(l.effective_dim(), BigInt(1) << n);
  }
  EXPECT_EQ(code_of([&] { doubled.with_power(0); }), ErrorCode::BadParams);
}

TEST(LazyRep, DecayLaw) {
  const LazyRep chi(cyclic_character(4, 1), true, 14);
  const Complex t = chi.normalized_trace(Word({1}));
  EXPECT_NEAR(std::abs(t), 0.0078125, 1e-15);
  EXPECT_NEAR(std::abs(t), std::pow(std::abs(chi.level1_trace(Word({1}))), 14.0), 1e-16);
}

TEST(Materialize, SmallCases) {
  const ApproxRep base = free_haar(1, 2, 9);
  const Word g({1});
  EXPECT_EQ(materialize(LazyRep(base, false, 1), g).matrix(), base.images()[0].matrix());
  const UnitaryMatrix sq = materialize(LazyRep(base, false, 2), g);
  EXPECT_EQ(sq.dim(), 4);
  const Complex t1 = base.normalized_trace(g);
  EXPECT_NEAR(std::abs(sq.matrix().trace() - t1 * t1 * 4.0), 0.0, 1e-12);

  const Complex z = std::polar(1.0, 0.9);
  const UnitaryMatrix cube = materialize(LazyRep(integer_phase(0.9), true, 3), g);
  EXPECT_EQ(cube.dim(), 8);
  EXPECT_NEAR(std::abs(cube.matrix().trace() - std::pow((z + 1.0) / 2.0, 3) * 8.0), 0.0, 1e-12);
  EXPECT_EQ(code_of([&] { materialize(LazyRep(base, true, 12), g); }),
            ErrorCode::DimensionTooLarge);
}

TEST(Materialize, TraceFactorizationOnShortWords) {
  struct Case {
    ApproxRep rep;
    bool doubled;
    std::size_t n;
  };
  const Case cases[] = {
      {regular_finite(GroupSpec::cyclic(3)), true, 2},
      {regular_finite(GroupSpec::symmetric(3)), false, 2},
      {free_haar(2, 3, 4), true, 2},
      {free_haar(2, 2, 5), false, 5},
      {cyclic_character(4, 1), true, 3},
      {perturbed(regular_finite(GroupSpec::cyclic(2)), 0.2, 6), true, 3},
  };
  for (const Case& c : cases) {
    const LazyRep lazy(c.rep, c.doubled, c.n);
    const double dim = static_cast<double>(lazy.effective_dim().convert_to<long long>());
    ASSERT_LE(dim, 4096.0);
    const std::size_t max_len = c.rep.group().num_generators() > 3 ? 2 : 3;
    for (const Word& w : words_up_to_length(static_cast<int>(c.rep.group().num_generators()),
                                            max_len)) {
      const Complex explicit_trace = materialize(lazy, w).matrix().trace() / dim;
      EXPECT_NEAR(std::abs(lazy.normalized_trace(w) - explicit_trace), 0.0, 1e-8)
          << w.to_string();
    }
  }
}

TEST(Materialize, DefectGrowsAtMostLinearly) {
  const ApproxRep rep = perturbed(regular_finite(GroupSpec::cyclic(2)), 0.1, 8);
  const std::vector<Word> elems = rep.group().all_elements();
  for (bool doubled : {false, true}) {
    for (std::size_t n : {1u, 2u, 3u}) {
      const LazyRep lazy(rep, doubled, n);
      for (const Word& g : elems) {
        for (const Word& h : elems) {
          const ComplexMatrix d = materialize(lazy, g * h).matrix() -
                                  materialize(lazy, g).matrix() * materialize(lazy, h).matrix();
          const double level_n = hs_norm(d);
          EXPECT_LE(level_n, lazy.defect_bound(g, h) + 1e-12);
          if (n == 1) EXPECT_NEAR(level_n, lazy.level1_defect(g, h), 1e-12);
        }
      }
    }
  }
}

TEST(AmplifyToTolerance, CyclicCharacter) {
  const AmplificationResult r = amplify_to_tolerance(cyclic_character(4, 1), {Word({1})}, 0.01);
  EXPECT_TRUE(r.lazy.doubled());
  EXPECT_EQ(r.plan.n, 14u);
  EXPECT_EQ(r.lazy.effective_dim(), 16384);
  ASSERT_EQ(r.per_element.size(), 1u);
  EXPECT_NEAR(r.per_element[0].tau_modulus, 0.0078125, 1e-15);
  EXPECT_LE(r.per_element[0].tau_modulus, 0.01);
  EXPECT_TRUE(r.certificate.pass);
  EXPECT_TRUE(r.certificate.dim_bound_met);
  EXPECT_EQ(r.certificate.dim, 16384);
  EXPECT_TRUE(r.certificate.strict_dim);
}

TEST(AmplifyToTolerance, HalfTurnPhase) {
  const AmplificationResult r =
      amplify_to_tolerance(integer_phase(std::numbers::pi), {Word({1})}, 0.5);
  EXPECT_TRUE(r.lazy.doubled());
  EXPECT_EQ(r.plan.n, 1u);
  EXPECT_EQ(r.lazy.effective_dim(), 2);
  EXPECT_NEAR(r.per_element[0].tau_modulus, 0.0, 1e-15);
  EXPECT_TRUE(r.certificate.pass);
}

TEST(AmplifyToTolerance, RegularRepresentationNeedsNoDecay) {
  const GroupSpec g = GroupSpec::symmetric(3);
  const ApproxRep rep = regular_finite(g);
  const AmplificationResult r = amplify_to_tolerance(rep, g.all_elements(), 0.2);
  EXPECT_FALSE(r.lazy.doubled());
  EXPECT_EQ(r.plan.n, 1u);
  EXPECT_TRUE(r.certificate.pass);
  // Plain: 6^3 >= 100. Doubling would move every trace to 1/2 and need 0.5^7 <= 0.01.
  const AmplificationResult small = amplify_to_tolerance(rep, g.all_elements(), 0.01);
  EXPECT_EQ(small.plan.n, 3u);
  EXPECT_FALSE(small.lazy.doubled());
  EXPECT_TRUE(small.certificate.pass);
}

TEST(AmplifyToTolerance, Errors) {
  try {
    amplify_to_tolerance(integer_phase(0.0), {Word(), Word({1})}, 0.1);
    FAIL();
  } catch (const GammaOutOfRangeError& e) {
    EXPECT_EQ(e.element(), "1");
  }
  const ApproxRep rough = perturbed(regular_finite(GroupSpec::cyclic(3)), 0.3, 1);
  EXPECT_EQ(code_of([&] { amplify_to_tolerance(rough, rough.group().all_elements(), 0.05); }),
            ErrorCode::DefectBudgetExceeded);
  EXPECT_EQ(code_of([] { amplify_to_tolerance(cyclic_character(4, 1), {}, 0.1); }),
            ErrorCode::EmptyE);
}

TEST(AmplifyToTolerance, PerturbedWithinBudget) {
  const ApproxRep rep = perturbed(regular_finite(GroupSpec::cyclic(3)), 1e-4, 2);
  const AmplificationResult r = amplify_to_tolerance(rep, rep.group().all_elements(), 0.05);
  EXPECT_LE(r.max_base_defect, r.defect_budget);
  EXPECT_LE(r.defect_bound, 0.05);
  EXPECT_TRUE(r.certificate.pass);
  for (const ElementTau& t : r.per_element) EXPECT_LE(t.tau_modulus, 0.05);
}

}  // namespace
}  // namespace hyperlinear
