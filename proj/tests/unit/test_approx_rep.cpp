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
#include "hyperlinear/approx_rep.hpp"

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

std::vector<Word> table_words(const GroupSpec& g, std::size_t max_length) {
  return words_up_to_length(static_cast<int>(g.num_generators()), max_length);
}

TEST(Evaluate, EmptyWordAndCancellation) {
  const ApproxRep rep = free_haar(2, 5, 1);
  EXPECT_LE(operator_norm(rep.evaluate(Word()).matrix() - ComplexMatrix::Identity(5, 5)), 0.0);
  EXPECT_LE(operator_norm(rep.evaluate(Word({1, -1})).matrix() - ComplexMatrix::Identity(5, 5)),
            0.0);
  const ComplexMatrix ab = rep.images()[0].matrix() * rep.images()[1].matrix().adjoint();
  EXPECT_LE(operator_norm(rep.evaluate(Word({1, -2})).matrix() - ab), 1e-14);
  EXPECT_EQ(code_of([&] { rep.evaluate(Word({3})); }), ErrorCode::UnknownGenerator);
}

TEST(Evaluate, SpellingsOfOneElementAgree) {
  // In a genuine representation of a table group every word multiplying out
  // to the same element evaluates to the same unitary.
  for (const char* name : {"Z3", "S3"}) {
    const GroupSpec g = GroupSpec::named(name);
    const ApproxRep rep = regular_finite(g);
    const std::size_t max_length = g.order() <= 3 ? 4 : 3;
    for (const Word& w : table_words(g, max_length)) {
      const ComplexMatrix& expected = rep.images()[g.element_of(w)].matrix();
      EXPECT_LE(operator_norm(rep.evaluate(w).matrix() - expected), 1e-10) << w.to_string();
      EXPECT_LE(operator_norm(rep.element_image(w).matrix() - expected), 0.0);
    }
  }
}

TEST(HomDefect, GenuineRepresentationsVanish) {
  for (const char* name : {"Z2", "Z3", "S3", "D4"}) {
    const GroupSpec g = GroupSpec::named(name);
    const ApproxRep rep = regular_finite(g);
    const std::vector<Word> words = table_words(g, g.order() <= 4 ? 3 : 2);
    for (const Word& a : words) {
      for (const Word& b : words) EXPECT_LE(rep.hom_defect(a, b), 1e-10);
    }
  }
}

TEST(HomDefect, ExhaustiveOverS4Elements) {
  const GroupSpec g = GroupSpec::symmetric(4);
  const ApproxRep rep = regular_finite(g);
  for (const Word& a : g.all_elements()) {
    for (const Word& b : g.all_elements()) ASSERT_LE(rep.hom_defect(a, b), 1e-10);
  }
}

TEST(HomDefect, OneDimensionalTrivialImages) {
  const ApproxRep rep(GroupSpec::presentation({"a", "b"}, {}),
                      {UnitaryMatrix::identity(1), UnitaryMatrix::identity(1)});
  EXPECT_EQ(rep.hom_defect(Word({1}), Word({2})), 0.0);
}

TEST(HomDefect, PerturbationBound) {
  const GroupSpec g = GroupSpec::symmetric(3);
  const ApproxRep exact = regular_finite(g);
  for (double delta : {1e-3, 0.05, 0.3}) {
    const ApproxRep rep = perturbed(exact, delta, 7);
    for (int k = 0; k < 6; ++k) {
      const ComplexMatrix kick = exact.images()[k].matrix().adjoint() * rep.images()[k].matrix();
      EXPECT_NEAR(operator_norm(kick - ComplexMatrix::Identity(6, 6)),
                  2.0 * std::sin(delta / 2.0), 1e-12);
    }
    // Three kicked factors appear in pi(gh) - pi(g) pi(h).
    double worst = 0.0;
    for (const Word& a : g.all_elements()) {
      for (const Word& b : g.all_elements()) {
        const double d = rep.hom_defect(a, b);
        const ComplexMatrix brute = rep.images()[g.element_of(a * b)].matrix() -
                                    rep.images()[g.element_of(a)].matrix() *
                                        rep.images()[g.element_of(b)].matrix();
        EXPECT_NEAR(d, brute.norm() / std::sqrt(6.0), 1e-12);
        worst = std::max(worst, d);
      }
    }
    EXPECT_LE(worst, 3.0 * 2.0 * std::sin(delta / 2.0) + 1e-12);
    EXPECT_GT(worst, 0.0);
  }
}

TEST(TraceObstruction, RegularRepresentations) {
  for (const char* name : {"Z2", "Z5", "S3", "D4", "S4"}) {
    const GroupSpec g = GroupSpec::named(name);
    const ApproxRep rep = regular_finite(g);
    for (const Word& w : g.all_elements()) {
      const double t = rep.trace_obstruction(w);
      if (g.is_identity(w)) {
        EXPECT_EQ(t, 1.0);
      } else {
        EXPECT_EQ(t, 0.0) << name << " " << w.to_string();
      }
    }
  }
}

TEST(TraceObstruction, PhasesAndCharacters) {
  EXPECT_NEAR(integer_phase(0.83).trace_obstruction(Word({1})), 1.0, 1e-15);
  EXPECT_EQ(integer_phase(0.83).trace_obstruction(Word()), 1.0);
  const ApproxRep chi = cyclic_character(4, 1);
  EXPECT_NEAR(std::abs(chi.images()[0].matrix()(0, 0) - Complex(0.0, 1.0)), 0.0, 1e-15);
  for (int m = 1; m <= 8; ++m) {
    EXPECT_NEAR(chi.trace_obstruction(Word(std::vector<int>(m, 1))), 1.0, 1e-14);
  }
  EXPECT_NEAR(chi.relator_defect(Word(std::vector<int>(4, 1))), 0.0, 1e-14);
}

TEST(Zoo, Fixtures) {
  ZooParams params;
  params.group = "Z2";
  const ApproxRep z2 = zoo("regular_finite", params);
  ASSERT_EQ(z2.images().size(), 2u);
  EXPECT_EQ(z2.images()[0].matrix(), ComplexMatrix::Identity(2, 2));
  ComplexMatrix flip(2, 2);
  flip << 0.0, 1.0, 1.0, 0.0;
  EXPECT_EQ(z2.images()[1].matrix(), flip);

  params.rank = 2;
  params.dim = 64;
  params.seed = 5;
  const ApproxRep f2 = zoo("free_haar", params);
  EXPECT_EQ(f2.dim(), 64);
  EXPECT_EQ(f2.group().generators(), (std::vector<std::string>{"a", "b"}));
  EXPECT_GT(operator_norm(f2.images()[0].matrix() - f2.images()[1].matrix()), 0.5);
  EXPECT_EQ(zoo("free_haar", params).images()[1].matrix(), f2.images()[1].matrix());

  params.group = "S3";
  params.delta = 0.01;
  EXPECT_EQ(zoo("perturbed", params).dim(), 6);
  EXPECT_EQ(code_of([&] { zoo("nonsense", params); }), ErrorCode::UnknownFixture);
  EXPECT_EQ(code_of([] { cyclic_character(0, 1); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { regular_finite(GroupSpec::presentation({"a"}, {})); }),
            ErrorCode::BadParams);
}

TEST(Certify, RegularS3) {
  const GroupSpec g = GroupSpec::symmetric(3);
  const Certificate c = certify(regular_finite(g), g.all_elements(), 1e-6, CertMode::Hs);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.pair_defects.size(), 36u);
  EXPECT_EQ(c.obstructions.size(), 5u);
  EXPECT_EQ(c.max_pair_defect(), 0.0);
  EXPECT_EQ(c.max_obstruction(), 0.0);
  EXPECT_FALSE(c.dim_bound_met);
  EXPECT_FALSE(c.word_level);
}

TEST(Certify, FreeHaarRank2) {
  const ApproxRep rep = free_haar(2, 256, 11);
  const std::vector<Word> E = words_up_to_length(2, 2);
  const Certificate c = certify(rep, E, 0.25, CertMode::Hs);
  EXPECT_TRUE(c.pass);
  EXPECT_TRUE(c.word_level);
  EXPECT_LE(c.max_pair_defect(), 1e-12);
  EXPECT_EQ(c.obstructions.size(), E.size() - 1);
  // E|tr u|^2 = 1 for Haar u, so |tr u|/d is of order 1/d.
  EXPECT_LE(c.max_obstruction(), 8.0 / std::sqrt(256.0));
}

TEST(Certify, TrivialPhaseFails) {
  const Certificate c = certify(integer_phase(0.0), {Word({1})}, 0.5, CertMode::Hs);
  EXPECT_FALSE(c.pass);
  EXPECT_NEAR(c.max_obstruction(), 1.0, 1e-15);
}

TEST(Certify, MonotoneInEps) {
  const ApproxRep rep = perturbed(regular_finite(GroupSpec::dihedral(3)), 0.02, 3);
  const std::vector<Word> E = rep.group().all_elements();
  bool passed = false;
  for (double eps : {1e-4, 1e-3, 0.01, 0.03, 0.1, 0.5, 1.0}) {
    const bool pass = certify(rep, E, eps, CertMode::Hs).pass;
    if (passed) EXPECT_TRUE(pass) << eps;
    passed = passed || pass;
  }
  EXPECT_TRUE(passed);
}

TEST(Certify, StrictDimension) {
  const GroupSpec g = GroupSpec::cyclic(4);
  const ApproxRep rep = regular_finite(g);
  MonteCarloConfig mc;
  mc.strict_dim = true;
  EXPECT_TRUE(certify(rep, g.all_elements(), 0.25, CertMode::Hs, mc).pass);
  const Certificate c = certify(rep, g.all_elements(), 0.2, CertMode::Hs, mc);
  EXPECT_FALSE(c.dim_bound_met);
  EXPECT_FALSE(c.pass);
  EXPECT_TRUE(certify(rep, g.all_elements(), 0.2, CertMode::Hs).pass);
}

TEST(Certify, Errors) {
  const ApproxRep rep = regular_finite(GroupSpec::cyclic(3));
  EXPECT_EQ(code_of([&] { certify(rep, {}, 0.1, CertMode::Hs); }), ErrorCode::EmptyE);
  EXPECT_EQ(code_of([&] { certify(rep, {Word({1})}, 0.0, CertMode::Hs); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([&] { certify(rep, {Word({4})}, 0.1, CertMode::Hs); }),
            ErrorCode::UnknownGenerator);
  MonteCarloConfig mc;
  mc.max_dim = 2;
  EXPECT_EQ(code_of([&] { certify(rep, {Word({2})}, 0.1, CertMode::Sphere, mc); }),
            ErrorCode::ModeUnavailable);
  EXPECT_NO_THROW(certify(rep, {Word({2})}, 0.1, CertMode::Hs, mc));
  EXPECT_EQ(parse_cert_mode("onb"), CertMode::Onb);
  EXPECT_EQ(code_of([] { parse_cert_mode("HS"); }), ErrorCode::BadParams);
}

TEST(Certify, SphereModeExactRepresentation) {
  const ApproxRep rep = regular_finite(GroupSpec::cyclic(50));
  const std::vector<Word> E = {Word(), Word({2}), Word({3})};
  MonteCarloConfig mc;
  mc.trials = 4000;
  const Certificate c = certify(rep, E, 0.5, CertMode::Sphere, mc, RngSpec{4, 0});
  EXPECT_EQ(c.max_pair_defect(), 0.0);
  EXPECT_EQ(c.trials, 4000u);
  EXPECT_NEAR(c.slack, 5.0 / std::sqrt(4000.0), 1e-15);
  // |<x, u x>| for a fixed-point-free permutation concentrates at 0.
  EXPECT_LE(c.max_obstruction(), 0.5);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.rng, (RngSpec{4, 0}));
}

TEST(Certify, SphereAndHsCoherence) {
  testing::Gen gen(301);
  for (int t = 0; t < 10; ++t) {
    const double delta = gen.uniform(0.01, 0.4);
    const double eps = gen.uniform(0.2, 0.9);
    const ApproxRep rep = perturbed(regular_finite(GroupSpec::symmetric(3)), delta,
                                    static_cast<std::uint64_t>(t));
    const std::vector<Word> E = rep.group().all_elements();
    MonteCarloConfig mc;
    mc.trials = 4000;
    const Certificate sphere =
        certify(rep, E, eps / std::numbers::sqrt2, CertMode::Sphere, mc, RngSpec{5, 0});
    const Certificate hs = certify(rep, E, eps, CertMode::Hs);
    for (std::size_t k = 0; k < hs.pair_defects.size(); ++k) {
      if (sphere.pair_defects[k].value > eps * eps / 8.0) continue;
      const double v = hs.pair_defects[k].value;
      EXPECT_LE(v * v, eps * eps + 1e-12) << "delta " << delta << " eps " << eps;
    }
  }
}

TEST(Certify, OnbPassImpliesHsPass) {
  testing::Gen gen(302);
  int witnessed = 0;
  for (int t = 0; t < 8; ++t) {
    const double delta = gen.uniform(0.0, 0.2);
    const ApproxRep rep = perturbed(regular_finite(GroupSpec::cyclic(64)), delta,
                                    static_cast<std::uint64_t>(t));
    const std::vector<Word> E = {Word(), Word({2}), Word({5})};
    MonteCarloConfig mc;
    mc.trials = 1000;
    mc.max_tries = 5;
    const Certificate onb = certify(rep, E, 0.6, CertMode::Onb, mc, RngSpec{6, 0});
    ASSERT_EQ(onb.pass_rates.size(), onb.tries_used);
    if (!onb.pass) {
      EXPECT_FALSE(onb.witness);
      continue;
    }
    ++witnessed;
    ASSERT_TRUE(onb.witness);
    const ComplexMatrix& x = *onb.witness;
    EXPECT_LE(operator_norm(x.adjoint() * x - ComplexMatrix::Identity(64, 64)), 1e-9);
    EXPECT_TRUE(certify(rep, E, 0.6, CertMode::Hs).pass);
    EXPECT_GE(onb.complement_mass, 0.0);
  }
  EXPECT_GT(witnessed, 0);
}

TEST(Certify, OnbWithoutWitness) {
  const Certificate c = certify(integer_phase(0.0), {Word({1})}, 0.5, CertMode::Onb,
                                MonteCarloConfig{100, 3, false, kDefaultMaxDim});
  EXPECT_FALSE(c.pass);
  EXPECT_FALSE(c.witness);
  EXPECT_EQ(c.tries_used, 3u);
  EXPECT_NEAR(c.complement_mass, 1.0, 1e-15);
}

}  // namespace
}  // namespace hyperlinear
