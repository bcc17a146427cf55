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


#include "hyperlinear/approx_rep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "hyperlinear/sphere_measure.hpp"

namespace hyperlinear {

namespace {

constexpr std::size_t kBatch = 512;
// Substream of the certificate seed used for the complement-mass estimate in
// onb mode; the basis search itself uses the low substream indices.
constexpr std::uint64_t kMassStream = 1ULL << 62;

std::string generator_name(int k) {
  if (k < 26) return std::string(1, static_cast<char>('a' + k));
  return "x" + std::to_string(k);
}

}  // namespace

ApproxRep::ApproxRep(GroupSpec group, std::vector<UnitaryMatrix> images)
    : group_(std::move(group)), images_(std::move(images)) {
  if (images_.size() != group_.num_generators()) {
    throw Error(ErrorCode::Schema, "need one image per generator: " +
                                       std::to_string(group_.num_generators()) + " generators, " +
                                       std::to_string(images_.size()) + " images");
  }
  if (images_.empty()) throw Error(ErrorCode::Schema, "group has no generators");
  dim_ = images_.front().dim();
  for (const UnitaryMatrix& u : images_) {
    if (u.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "images differ in dimension");
  }
}

UnitaryMatrix ApproxRep::evaluate(const Word& w) const {
  group_.check_word(w);
  if (w.empty()) return UnitaryMatrix::identity(dim_);
  ComplexMatrix m;
  for (int k : w.letters()) {
    const ComplexMatrix& g = images_[static_cast<std::size_t>(std::abs(k) - 1)].matrix();
    if (m.size() == 0) {
      m = k > 0 ? g : ComplexMatrix(g.adjoint());
    } else if (k > 0) {
      m = m * g;
    } else {
      m = m * g.adjoint();
    }
  }
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix ApproxRep::element_image(const Word& w) const {
  if (group_.kind() == GroupSpec::Kind::Table) {
    return images_[static_cast<std::size_t>(group_.element_of(w))];
  }
  return evaluate(w);
}

Complex ApproxRep::normalized_trace(const Word& g) const {
  return element_image(g).matrix().trace() / static_cast<double>(dim_);
}

double ApproxRep::hom_defect(const Word& g, const Word& h) const {
  const ComplexMatrix gh = element_image(g * h).matrix();
  return hs_norm(gh - element_image(g).matrix() * element_image(h).matrix());
}

double ApproxRep::trace_obstruction(const Word& g) const { return std::abs(normalized_trace(g)); }

double ApproxRep::relator_defect(const Word& r) const {
  return hs_norm(evaluate(r).matrix() - ComplexMatrix::Identity(dim_, dim_));
}

std::string_view to_string(CertMode mode) {
  switch (mode) {
    case CertMode::Hs: return "hs";
    case CertMode::Sphere: return "sphere";
    case CertMode::Onb: return "onb";
  }
  return "unknown";
}

CertMode parse_cert_mode(std::string_view text) {
  if (text == "hs") return CertMode::Hs;
  if (text == "sphere") return CertMode::Sphere;
  if (text == "onb") return CertMode::Onb;
  throw Error(ErrorCode::BadParams, "unknown certificate mode '" + std::string(text) + "'");
}

double Certificate::max_pair_defect() const {
  double m = 0.0;
  for (const PairDefect& p : pair_defects) m = std::max(m, p.value);
  return m;
}

double Certificate::max_obstruction() const {
  double m = 0.0;
  for (const ElementObstruction& o : obstructions) m = std::max(m, o.value);
  return m;
}

namespace {

/// Defect matrices pi(gh) - pi(g) pi(h) and element images, shared by all modes.
struct CertInputs {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<ComplexMatrix> defects;
  /// Pairs whose defect has operator norm <= eps violate nothing pointwise.
  std::vector<bool> trivially_fine;
  std::vector<std::size_t> elements;
  std::vector<ComplexMatrix> element_images;
};

CertInputs prepare(const ApproxRep& rep, const std::vector<Word>& E, double eps) {
  std::map<Word, ComplexMatrix> cache;
  const bool table = rep.group().kind() == GroupSpec::Kind::Table;
  // Presentation words are built from their cached prefix, one product per new word.
  std::function<const ComplexMatrix&(const Word&)> image =
      [&](const Word& w) -> const ComplexMatrix& {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    ComplexMatrix m;
    if (table || w.length() <= 1) {
      m = rep.element_image(w).matrix();
    } else {
      const std::vector<int>& letters = w.letters();
      const Word prefix(std::vector<int>(letters.begin(), letters.end() - 1));
      const int k = letters.back();
      const ComplexMatrix& g = rep.images()[static_cast<std::size_t>(std::abs(k) - 1)].matrix();
      m = k > 0 ? ComplexMatrix(image(prefix) * g) : ComplexMatrix(image(prefix) * g.adjoint());
    }
    return cache.emplace(w, std::move(m)).first->second;
  };
  CertInputs in;
  for (std::size_t i = 0; i < E.size(); ++i) {
    for (std::size_t j = 0; j < E.size(); ++j) {
      ComplexMatrix d = image(E[i] * E[j]) - image(E[i]) * image(E[j]);
      const double frobenius = d.norm();
      const bool fine = frobenius <= eps || operator_norm(d) <= eps;
      in.pairs.emplace_back(i, j);
      in.defects.push_back(std::move(d));
      in.trivially_fine.push_back(fine);
    }
  }
  for (std::size_t i = 0; i < E.size(); ++i) {
    if (rep.group().is_identity(E[i])) continue;
    in.elements.push_back(i);
    in.element_images.push_back(image(E[i]));
  }
  return in;
}

bool pointwise_ok(const CertInputs& in, const ComplexVector& x, double eps) {
  for (std::size_t k = 0; k < in.defects.size(); ++k) {
    if (in.trivially_fine[k]) continue;
    if ((in.defects[k] * x).norm() > eps) return false;
  }
  for (const ComplexMatrix& u : in.element_images) {
    if (std::abs(x.dot(u * x)) > eps) return false;
  }
  return true;
}

}  // namespace

Certificate certify(const ApproxRep& rep, const std::vector<Word>& E, double eps, CertMode mode,
                    const MonteCarloConfig& mc, RngSpec spec) {
  if (E.empty()) throw Error(ErrorCode::EmptyE, "certify: E must be nonempty");
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::BadParams, "certify: eps must be positive");
  }
  for (const Word& w : E) rep.group().check_word(w);
  const Eigen::Index d = rep.dim();
  if (mode != CertMode::Hs && static_cast<std::size_t>(d) > mc.max_dim) {
    throw Error(ErrorCode::ModeUnavailable, std::string(to_string(mode)) + " mode needs dim <= " +
                                                std::to_string(mc.max_dim) + ", have " +
                                                std::to_string(d));
  }
  if (mode != CertMode::Hs && mc.trials < 1) {
    throw Error(ErrorCode::BadParams, "certify: trials must be >= 1");
  }

  Certificate cert;
  cert.E = E;
  cert.eps = eps;
  cert.mode = mode;
  cert.dim = d;
  cert.strict_dim = mc.strict_dim;
  cert.word_level = rep.group().kind() == GroupSpec::Kind::Presentation;
  cert.dim_bound_met = static_cast<double>(d) >= 1.0 / eps;
  cert.rng = spec;

  const CertInputs in = prepare(rep, E, eps);
  bool ok = true;

  switch (mode) {
    case CertMode::Hs: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(d));
      for (std::size_t k = 0; k < in.pairs.size(); ++k) {
        cert.pair_defects.push_back({in.pairs[k].first, in.pairs[k].second,
                                     in.defects[k].norm() * scale});
      }
      for (std::size_t k = 0; k < in.elements.size(); ++k) {
        const double t = std::abs(in.element_images[k].trace()) / static_cast<double>(d);
        cert.obstructions.push_back({in.elements[k], t});
      }
      for (const PairDefect& p : cert.pair_defects) ok = ok && p.value <= eps;
      for (const ElementObstruction& o : cert.obstructions) ok = ok && o.value <= eps;
      break;
    }
    case CertMode::Sphere: {
      cert.trials = mc.trials;
      cert.slack = statistical_slack(mc.trials);
      std::vector<std::size_t> pair_hits(in.pairs.size(), 0);
      std::vector<std::size_t> elem_hits(in.elements.size(), 0);
      const Rng base(spec);
      for (std::size_t first = 0; first < mc.trials; first += kBatch) {
        const std::size_t count = std::min(kBatch, mc.trials - first);
        const ComplexMatrix xs = sample_sphere_batch(d, first, count, base);
        for (std::size_t k = 0; k < in.pairs.size(); ++k) {
          if (in.trivially_fine[k]) continue;
          const ComplexMatrix dx = in.defects[k] * xs;
          for (Eigen::Index j = 0; j < dx.cols(); ++j) {
            if (dx.col(j).norm() > eps) ++pair_hits[k];
          }
        }
        for (std::size_t k = 0; k < in.elements.size(); ++k) {
          const ComplexMatrix ux = in.element_images[k] * xs;
          for (Eigen::Index j = 0; j < ux.cols(); ++j) {
            if (std::abs(xs.col(j).dot(ux.col(j))) > eps) ++elem_hits[k];
          }
        }
      }
      const double n = static_cast<double>(mc.trials);
      for (std::size_t k = 0; k < in.pairs.size(); ++k) {
        cert.pair_defects.push_back({in.pairs[k].first, in.pairs[k].second,
                                     static_cast<double>(pair_hits[k]) / n});
      }
      for (std::size_t k = 0; k < in.elements.size(); ++k) {
        cert.obstructions.push_back({in.elements[k], static_cast<double>(elem_hits[k]) / n});
      }
      for (const PairDefect& p : cert.pair_defects) ok = ok && p.value <= eps;
      for (const ElementObstruction& o : cert.obstructions) ok = ok && o.value <= eps;
      break;
    }
    case CertMode::Onb: {
      cert.trials = mc.trials;
      cert.slack = statistical_slack(mc.trials);
      const VectorPredicate pred = [&](const ComplexVector& x) { return pointwise_ok(in, x, eps); };
      const OnbSearch search = onb_search(pred, d, spec, mc.max_tries);
      cert.tries_used = search.tries_used;
      cert.pass_rates = search.pass_rates;

      const Rng mass_base = Rng(spec).substream(kMassStream);
      std::size_t misses = 0;
      for (std::size_t first = 0; first < mc.trials; first += kBatch) {
        const std::size_t count = std::min(kBatch, mc.trials - first);
        const ComplexMatrix xs = sample_sphere_batch(d, first, count, mass_base);
        for (Eigen::Index j = 0; j < xs.cols(); ++j) {
          if (!pointwise_ok(in, xs.col(j), eps)) ++misses;
        }
      }
      cert.complement_mass =
          static_cast<double>(d) * static_cast<double>(misses) / static_cast<double>(mc.trials);

      if (search.basis) {
        const ComplexMatrix& xs = *search.basis;
        for (std::size_t k = 0; k < in.pairs.size(); ++k) {
          const ComplexMatrix dx = in.defects[k] * xs;
          cert.pair_defects.push_back({in.pairs[k].first, in.pairs[k].second,
                                       dx.colwise().norm().maxCoeff()});
        }
        for (std::size_t k = 0; k < in.elements.size(); ++k) {
          const ComplexMatrix ux = in.element_images[k] * xs;
          double worst = 0.0;
          for (Eigen::Index j = 0; j < xs.cols(); ++j) {
            worst = std::max(worst, std::abs(xs.col(j).dot(ux.col(j))));
          }
          cert.obstructions.push_back({in.elements[k], worst});
        }
        cert.witness = xs;
      } else {
        ok = false;
      }
      break;
    }
  }
  if (cert.strict_dim && !cert.dim_bound_met) ok = false;
  cert.pass = ok;
  return cert;
}

ApproxRep regular_finite(const GroupSpec& group) {
  if (group.kind() != GroupSpec::Kind::Table) {
    throw Error(ErrorCode::BadParams, "regular_finite needs a table group");
  }
  const auto n = static_cast<Eigen::Index>(group.order());
  std::vector<UnitaryMatrix> images;
  images.reserve(group.order());
  for (Eigen::Index g = 0; g < n; ++g) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index x = 0; x < n; ++x) m(group.table()[g][x], x) = 1.0;
    images.emplace_back(std::move(m));
  }
  return ApproxRep(group, std::move(images));
}

ApproxRep cyclic_character(int n, int k) {
  if (n < 1) throw Error(ErrorCode::BadParams, "cyclic_character: n must be >= 1");
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  std::vector<UnitaryMatrix> images{UnitaryMatrix::phase(std::polar(1.0, angle))};
  return ApproxRep(GroupSpec::presentation({"a"}, {Word(std::vector<int>(n, 1))}),
                   std::move(images));
}

ApproxRep free_haar(int rank, Eigen::Index dim, std::uint64_t seed) {
  if (rank < 1) throw Error(ErrorCode::BadParams, "free_haar: rank must be >= 1");
  if (dim < 1) throw Error(ErrorCode::BadParams, "free_haar: dim must be >= 1");
  const Rng base(RngSpec{seed, 0});
  std::vector<std::string> names;
  std::vector<UnitaryMatrix> images;
  for (int k = 0; k < rank; ++k) {
    names.push_back(generator_name(k));
    Rng rng = base.substream(static_cast<std::uint64_t>(k));
    images.push_back(haar_unitary(dim, rng));
  }
  return ApproxRep(GroupSpec::presentation(std::move(names), {}), std::move(images));
}

ApproxRep integer_phase(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::BadParams, "integer_phase: theta must be finite");
  std::vector<UnitaryMatrix> images{UnitaryMatrix::phase(std::polar(1.0, theta))};
  return ApproxRep(GroupSpec::presentation({"a"}, {}), std::move(images));
}

ApproxRep perturbed(const ApproxRep& base, double delta, std::uint64_t seed) {
  if (!std::isfinite(delta)) throw Error(ErrorCode::BadParams, "perturbed: delta must be finite");
  const Eigen::Index d = base.dim();
  const Rng root(RngSpec{seed, 1});
  std::vector<UnitaryMatrix> images;
  for (std::size_t k = 0; k < base.images().size(); ++k) {
    Rng rng = root.substream(k);
    const ComplexMatrix g = complex_gaussian_matrix(d, d, rng);
    ComplexMatrix h = (g + g.adjoint()) / 2.0;
    const double hn = operator_norm(h);
    if (hn > 0.0) h /= hn;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    ComplexVector phases(d);
    for (Eigen::Index i = 0; i < d; ++i) phases(i) = std::polar(1.0, delta * eig.eigenvalues()(i));
    const ComplexMatrix& v = eig.eigenvectors();
    const ComplexMatrix kick = v * phases.asDiagonal() * v.adjoint();
    images.emplace_back(base.images()[k].matrix() * kick);
  }
  return ApproxRep(base.group(), std::move(images));
}

ApproxRep zoo(std::string_view name, const ZooParams& params) {
  if (name == "regular_finite") return regular_finite(GroupSpec::named(params.group));
  if (name == "cyclic_character") return cyclic_character(params.n, params.k);
  if (name == "free_haar") return free_haar(params.rank, params.dim, params.seed);
  if (name == "integer_phase") return integer_phase(params.theta);
  if (name == "perturbed") {
    return perturbed(regular_finite(GroupSpec::named(params.group)), params.delta, params.seed);
  }
  throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + std::string(name) + "'");
}

}  // namespace hyperlinear
