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
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hyperlinear/approx_rep.hpp"

namespace hyperlinear {

using BigInt = boost::multiprecision::cpp_int;

/// The n-th tensor power of the base representation, optionally doubled to
/// pi (+) id first. Traces and defects are computed from the base without
/// building the large matrices.
class LazyRep {
 public:
  LazyRep(ApproxRep base, bool doubled, std::size_t tensor_power);

  const ApproxRep& base() const noexcept { return *base_; }
  bool doubled() const noexcept { return doubled_; }
  std::size_t tensor_power() const noexcept { return n_; }
  /// (doubled ? 2 d : d)^n.
  const BigInt& effective_dim() const noexcept { return effective_dim_; }
  Eigen::Index level1_dim() const noexcept;

  /// Normalized trace of the level-1 image: (tau_base + 1) / 2 when doubled.
  Complex level1_trace(const Word& g) const;
  /// level1_trace(g)^n.
  Complex normalized_trace(const Word& g) const;
  /// HS defect after doubling: the base defect, divided by sqrt(2) when doubled.
  double level1_defect(const Word& g, const Word& h) const;
  /// n * level1_defect(g, h), an upper bound on the HS defect at level n.
  double defect_bound(const Word& g, const Word& h) const;

  LazyRep with_power(std::size_t tensor_power) const;

 private:
  std::shared_ptr<const ApproxRep> base_;
  bool doubled_ = false;
  std::size_t n_ = 1;
  BigInt effective_dim_;
};

LazyRep double_rep(const ApproxRep& rep);

/// Explicit Kronecker power of the level-1 image of w. Throws
/// DimensionTooLarge when effective_dim exceeds max_dim.
UnitaryMatrix materialize(const LazyRep& lazy, const Word& w, std::size_t max_dim = kDefaultMaxDim);

/// Level-1 decay bound used by the schedule: (1 + gamma)/2 for PaperSlack,
/// gamma itself for ExactTrace (the trace factorizes exactly at finite size).
enum class Schedule { PaperSlack, ExactTrace };

std::string_view to_string(Schedule schedule);

struct AmplificationPlan {
  double gamma = 0.0;
  double eps = 0.0;
  std::size_t n = 1;
  double delta = 0.0;
  Schedule schedule = Schedule::PaperSlack;
  /// Growth factor of the dimension per tensor factor.
  std::uint64_t dim_factor = 2;
  double level_bound = 0.0;
};

/// Smallest n with level_bound^n <= eps and dim_factor^n >= 1/eps, and the
/// largest double delta with 2 sqrt(1 - (1 - delta)^n) <= eps.
AmplificationPlan plan(double gamma, double eps, Schedule schedule = Schedule::PaperSlack,
                       std::uint64_t dim_factor = 2);

/// Largest delta with 2 sqrt(1 - (1 - delta)^n) <= eps.
double delta_schedule(double eps, std::size_t n);

struct ElementTau {
  /// Index into E.
  std::size_t g = 0;
  Complex tau_base;
  Complex tau_level1;
  /// |tau_level1|^n.
  double tau_modulus = 0.0;
};

struct AmplificationResult {
  LazyRep lazy;
  AmplificationPlan plan;
  Certificate certificate;
  std::vector<ElementTau> per_element;
  double max_base_defect = 0.0;
  /// eps / (2 n): largest base HS defect the schedule tolerates.
  double defect_budget = 0.0;
  /// n times the largest level-1 defect.
  double defect_bound = 0.0;
};

/// Doubles when some |tau_base(g)| = 1, otherwise keeps whichever of the
/// plain and doubled pipelines needs fewer tensor factors. Throws
/// GammaOutOfRangeError if tau_base(g) = 1 for some g in E \ {e}, and
/// DefectBudgetExceeded if the base defects exceed eps / (2 n).
AmplificationResult amplify_to_tolerance(const ApproxRep& rep, const std::vector<Word>& E,
                                         double eps);

}  // namespace hyperlinear
