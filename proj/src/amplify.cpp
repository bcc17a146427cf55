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


#include "hyperlinear/amplify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace hyperlinear {

LazyRep::LazyRep(ApproxRep base, bool doubled, std::size_t tensor_power)
    : base_(std::make_shared<const ApproxRep>(std::move(base))),
      doubled_(doubled),
      n_(tensor_power) {
  if (n_ < 1) throw Error(ErrorCode::BadParams, "tensor power must be >= 1");
  effective_dim_ = boost::multiprecision::pow(BigInt(level1_dim()), static_cast<unsigned>(n_));
}

Eigen::Index LazyRep::level1_dim() const noexcept {
  return doubled_ ? 2 * base_->dim() : base_->dim();
}

Complex LazyRep::level1_trace(const Word& g) const {
  const Complex t = base_->normalized_trace(g);
  return doubled_ ? (t + 1.0) / 2.0 : t;
}

Complex LazyRep::normalized_trace(const Word& g) const {
  const Complex t = level1_trace(g);
  Complex out(1.0, 0.0);
  for (std::size_t i = 0; i < n_; ++i) out *= t;
  return out;
}

double LazyRep::level1_defect(const Word& g, const Word& h) const {
  const double base = base_->hom_defect(g, h);
  return doubled_ ? base / std::numbers::sqrt2 : base;
}

double LazyRep::defect_bound(const Word& g, const Word& h) const {
  return static_cast<double>(n_) * level1_defect(g, h);
}

LazyRep LazyRep::with_power(std::size_t tensor_power) const {
  LazyRep out = *this;
  if (tensor_power < 1) throw Error(ErrorCode::BadParams, "tensor power must be >= 1");
  out.n_ = tensor_power;
  out.effective_dim_ =
      boost::multiprecision::pow(BigInt(level1_dim()), static_cast<unsigned>(tensor_power));
  return out;
}

LazyRep double_rep(const ApproxRep& rep) { return LazyRep(rep, true, 1); }

UnitaryMatrix materialize(const LazyRep& lazy, const Word& w, std::size_t max_dim) {
  if (lazy.effective_dim() > max_dim) {
    throw Error(ErrorCode::DimensionTooLarge, "effective dimension " + lazy.effective_dim().str() +
                                                  " exceeds max_dim " + std::to_string(max_dim));
  }
  const ComplexMatrix u = lazy.base().element_image(w).matrix();
  const ComplexMatrix level1 =
      lazy.doubled() ? direct_sum(u, ComplexMatrix::Identity(u.rows(), u.cols())) : u;
  ComplexMatrix out = level1;
  for (std::size_t i = 1; i < lazy.tensor_power(); ++i) out = tensor(out, level1, max_dim);
  return UnitaryMatrix(std::move(out));
}

std::string_view to_string(Schedule schedule) {
  switch (schedule) {
    case Schedule::PaperSlack: return "paper_slack";
    case Schedule::ExactTrace: return "exact_trace";
  }
  return "unknown";
}

double delta_schedule(double eps, std::size_t n) {
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::BadParams, "eps must lie in (0, 1]");
  if (n < 1) throw Error(ErrorCode::BadParams, "n must be >= 1");
  const double nn = static_cast<double>(n);
  // 1 - (1 - d)^n through log1p/expm1, so the test is monotone in d at every scale.
  auto ok = [&](double d) {
    return 2.0 * std::sqrt(-std::expm1(nn * std::log1p(-d))) <= eps;
  };
  double d = -std::expm1(std::log1p(-eps * eps / 4.0) / nn);
  for (int i = 0; i < 1024 && d > 0.0 && !ok(d); ++i) d = std::nextafter(d, 0.0);
  for (int i = 0; i < 1024; ++i) {
    const double up = std::nextafter(d, 1.0);
    if (!ok(up)) break;
    d = up;
  }
  return d;
}

AmplificationPlan plan(double gamma, double eps, Schedule schedule, std::uint64_t dim_factor) {
  if (!(gamma >= 0.0)) throw Error(ErrorCode::BadParams, "gamma must be >= 0");
  if (gamma >= 1.0) {
    throw Error(ErrorCode::GammaOutOfRange,
                "gamma = " + std::to_string(gamma) + " >= 1, tensor powers cannot decay");
  }
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::BadParams, "eps must lie in (0, 1]");
  if (dim_factor < 2 && eps < 1.0) {
    throw Error(ErrorCode::BadParams, "dimension factor 1 cannot reach dim >= 1/eps");
  }
  AmplificationPlan p;
  p.gamma = gamma;
  p.eps = eps;
  p.schedule = schedule;
  p.dim_factor = dim_factor;
  p.level_bound = schedule == Schedule::PaperSlack ? (1.0 + gamma) / 2.0 : gamma;
  const double target_dim = 1.0 / eps;
  const double factor = static_cast<double>(dim_factor);
  std::size_t n = 1;
  constexpr std::size_t kMaxPower = 1u << 20;
  while (!(std::pow(p.level_bound, static_cast<double>(n)) <= eps &&
           std::pow(factor, static_cast<double>(n)) >= target_dim)) {
    if (++n > kMaxPower) throw Error(ErrorCode::BadParams, "no tensor power below 2^20 suffices");
  }
  p.n = n;
  p.delta = delta_schedule(eps, n);
  return p;
}

namespace {

bool at_least(const BigInt& value, double bound) {
  if (value > BigInt(1) << 60) return true;
  return static_cast<double>(value.convert_to<long long>()) >= bound;
}

}  // namespace

AmplificationResult amplify_to_tolerance(const ApproxRep& rep, const std::vector<Word>& E,
                                         double eps) {
  if (E.empty()) throw Error(ErrorCode::EmptyE, "amplify: E must be nonempty");
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::BadParams, "eps must lie in (0, 1]");
  for (const Word& w : E) rep.group().check_word(w);

  struct Entry {
    std::size_t g;
    Complex tau;
  };
  std::vector<Entry> entries;
  bool needs_doubling = false;
  for (std::size_t i = 0; i < E.size(); ++i) {
    if (rep.group().is_identity(E[i])) continue;
    const Complex tau = rep.normalized_trace(E[i]);
    if (std::abs(tau - 1.0) <= kReportTol) {
      throw GammaOutOfRangeError("element '" + E[i].to_string() +
                                     "' has normalized trace 1; doubling cannot move it",
                                 E[i].to_string());
    }
    if (std::abs(tau) >= 1.0 - kReportTol) needs_doubling = true;
    entries.push_back({i, tau});
  }

  const auto d = static_cast<std::uint64_t>(rep.dim());
  double gamma_plain = 0.0;
  double gamma_doubled = 0.0;
  std::size_t worst_doubled = 0;
  for (const Entry& e : entries) {
    gamma_plain = std::max(gamma_plain, std::abs(e.tau));
    const double m = std::abs((e.tau + 1.0) / 2.0);
    if (m > gamma_doubled) {
      gamma_doubled = m;
      worst_doubled = e.g;
    }
  }
  if (gamma_doubled >= 1.0) {
    throw GammaOutOfRangeError("element '" + E[worst_doubled].to_string() +
                                   "' keeps modulus 1 after doubling",
                               E[worst_doubled].to_string());
  }

  const AmplificationPlan doubled_plan = plan(gamma_doubled, eps, Schedule::ExactTrace, 2 * d);
  std::optional<AmplificationPlan> plain_plan;
  if (!needs_doubling && (d >= 2 || eps == 1.0)) {
    plain_plan = plan(gamma_plain, eps, Schedule::ExactTrace, d);
  }
  const bool doubled = !plain_plan || doubled_plan.n < plain_plan->n;
  const AmplificationPlan chosen = doubled ? doubled_plan : *plain_plan;

  double max_defect = 0.0;
  for (const Word& g : E) {
    for (const Word& h : E) max_defect = std::max(max_defect, rep.hom_defect(g, h));
  }
  const double budget = eps / (2.0 * static_cast<double>(chosen.n));
  if (max_defect > budget) {
    throw Error(ErrorCode::DefectBudgetExceeded,
                "largest base defect " + std::to_string(max_defect) + " exceeds eps/(2n) = " +
                    std::to_string(budget) + " for n = " + std::to_string(chosen.n));
  }

  AmplificationResult out{LazyRep(rep, doubled, chosen.n), chosen, Certificate{}, {}, max_defect,
                          budget, 0.0};
  const LazyRep& lazy = out.lazy;
  for (const Entry& e : entries) {
    const Complex t1 = doubled ? (e.tau + 1.0) / 2.0 : e.tau;
    out.per_element.push_back(
        {e.g, e.tau, t1, std::pow(std::abs(t1), static_cast<double>(chosen.n))});
  }

  Certificate& cert = out.certificate;
  cert.E = E;
  cert.eps = eps;
  cert.mode = CertMode::Hs;
  cert.word_level = rep.group().kind() == GroupSpec::Kind::Presentation;
  cert.dim = lazy.effective_dim() <= BigInt(1) << 60
                 ? static_cast<Eigen::Index>(lazy.effective_dim().convert_to<long long>())
                 : 0;
  cert.dim_bound_met = at_least(lazy.effective_dim(), 1.0 / eps);
  cert.strict_dim = true;
  const double scale = doubled ? 1.0 / std::numbers::sqrt2 : 1.0;
  const double n = static_cast<double>(chosen.n);
  bool ok = cert.dim_bound_met;
  for (std::size_t i = 0; i < E.size(); ++i) {
    for (std::size_t j = 0; j < E.size(); ++j) {
      const double bound = n * scale * rep.hom_defect(E[i], E[j]);
      out.defect_bound = std::max(out.defect_bound, bound);
      cert.pair_defects.push_back({i, j, bound});
      ok = ok && bound <= eps;
    }
  }
  for (const ElementTau& t : out.per_element) {
    cert.obstructions.push_back({t.g, t.tau_modulus});
    ok = ok && t.tau_modulus <= eps;
  }
  cert.pass = ok;
  return out;
}

}  // namespace hyperlinear
