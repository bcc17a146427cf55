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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperlinear/group.hpp"
#include "hyperlinear/mat_core.hpp"
#include "hyperlinear/rng.hpp"

namespace hyperlinear {

/// A map from the generators of a group to unitaries of one dimension.
class ApproxRep {
 public:
  /// One image per generator, all of the same dimension.
  ApproxRep(GroupSpec group, std::vector<UnitaryMatrix> images);

  const GroupSpec& group() const noexcept { return group_; }
  Eigen::Index dim() const noexcept { return dim_; }
  const std::vector<UnitaryMatrix>& images() const noexcept { return images_; }

  /// Left-to-right product of generator images and adjoints; I for the empty word.
  UnitaryMatrix evaluate(const Word& w) const;

  /// The unitary assigned to the group element w stands for: the image of the
  /// element w multiplies out to for table groups, evaluate(w) for presentations.
  UnitaryMatrix element_image(const Word& w) const;

  /// tr(element_image(g)) / dim.
  Complex normalized_trace(const Word& g) const;

  /// ||pi(gh) - pi(g) pi(h)||_HS with pi = element_image.
  double hom_defect(const Word& g, const Word& h) const;

  /// |tr(pi(g))| / dim.
  double trace_obstruction(const Word& g) const;

  /// ||evaluate(r) - I||_HS, how far the images are from satisfying relator r.
  double relator_defect(const Word& r) const;

 private:
  GroupSpec group_;
  std::vector<UnitaryMatrix> images_;
  Eigen::Index dim_ = 0;
};

enum class CertMode { Hs, Sphere, Onb };

std::string_view to_string(CertMode mode);
/// "hs", "sphere" or "onb". Throws BadParams.
CertMode parse_cert_mode(std::string_view text);

struct MonteCarloConfig {
  std::size_t trials = 20000;
  std::size_t max_tries = 10;
  /// Require dim >= 1/eps for a pass.
  bool strict_dim = false;
  std::size_t max_dim = kDefaultMaxDim;
};

struct PairDefect {
  /// Indices into Certificate::E.
  std::size_t g = 0;
  std::size_t h = 0;
  double value = 0.0;
};

struct ElementObstruction {
  std::size_t g = 0;
  double value = 0.0;
};

/// Outcome of certify. In hs mode the values are HS defects and trace
/// obstructions; in sphere mode they are Monte Carlo measures of the
/// violation sets; in onb mode they are maxima over the witness basis.
struct Certificate {
  std::vector<Word> E;
  double eps = 0.0;
  CertMode mode = CertMode::Hs;
  Eigen::Index dim = 0;
  std::vector<PairDefect> pair_defects;
  std::vector<ElementObstruction> obstructions;
  bool dim_bound_met = false;
  bool strict_dim = false;
  /// Presentation groups are evaluated on words, not on group elements.
  bool word_level = false;
  bool pass = false;

  RngSpec rng;
  std::size_t trials = 0;
  double slack = 0.0;

  std::optional<ComplexMatrix> witness;
  std::size_t tries_used = 0;
  std::vector<double> pass_rates;
  /// Monte Carlo estimate of dim * nu(complement of the ONB condition set).
  double complement_mass = 0.0;

  double max_pair_defect() const;
  double max_obstruction() const;
};

Certificate certify(const ApproxRep& rep, const std::vector<Word>& E, double eps, CertMode mode,
                    const MonteCarloConfig& mc = {}, RngSpec spec = {});

/// Left regular representation of a table group: pi(g) e_x = e_{gx}.
ApproxRep regular_finite(const GroupSpec& group);
/// <a | a^n> acting on C by exp(2 pi i k / n).
ApproxRep cyclic_character(int n, int k);
/// Free group of the given rank with independent Haar images.
ApproxRep free_haar(int rank, Eigen::Index dim, std::uint64_t seed);
/// Z = <a | > acting on C by exp(i theta).
ApproxRep integer_phase(double theta);
/// Every image multiplied by exp(i delta K) with K random Hermitian, ||K||_op = 1.
ApproxRep perturbed(const ApproxRep& base, double delta, std::uint64_t seed);

struct ZooParams {
  std::string group = "S3";
  int n = 4;
  int k = 1;
  int rank = 2;
  Eigen::Index dim = 64;
  std::uint64_t seed = 0;
  double theta = 0.0;
  double delta = 0.0;
};

/// Fixture lookup: regular_finite (uses group), cyclic_character (n, k),
/// free_haar (rank, dim, seed), integer_phase (theta), perturbed (regular
/// representation of group, delta, seed). Throws UnknownFixture.
ApproxRep zoo(std::string_view name, const ZooParams& params);

}  // namespace hyperlinear
