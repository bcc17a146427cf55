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

#include <functional>
#include <vector>

#include "hyperlinear/mat_core.hpp"

namespace hyperlinear {

using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// C = sum_ij E_ij (x) Phi(E_ij) for a map Phi: M_{n_in} -> M_{n_out}; the
/// input factor comes first, so block (i, j) of C is Phi(E_ij).
class ChoiMatrix {
 public:
  ChoiMatrix(ComplexMatrix m, Eigen::Index n_in, Eigen::Index n_out);

  static ChoiMatrix from_map(const LinearMap& phi, Eigen::Index n_in, Eigen::Index n_out);
  /// Phi(a) = sum_k K_k a K_k*, each K_k of size n_out x n_in.
  static ChoiMatrix from_kraus(const std::vector<ComplexMatrix>& kraus);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index n_in() const noexcept { return n_in_; }
  Eigen::Index n_out() const noexcept { return n_out_; }

  double min_eigenvalue() const;
  /// ||Phi(I) - I||_op, i.e. the partial trace over the input minus I.
  double unital_residual() const;
  bool unital(double tol = 1e-9) const { return unital_residual() <= tol; }

  /// Phi(a) = sum_ij a_ij Phi(E_ij).
  ComplexMatrix apply(const ComplexMatrix& a) const;

 private:
  ComplexMatrix m_;
  Eigen::Index n_in_;
  Eigen::Index n_out_;
};

struct Dilation {
  /// Isometry C^{n_out} -> C^r (x) C^{n_in} with block k equal to K_k*.
  ComplexMatrix isometry;
  std::vector<ComplexMatrix> kraus;
  RealVector retained_eigenvalues;

  Eigen::Index environment_dim() const noexcept {
    return static_cast<Eigen::Index>(kraus.size());
  }
  /// sum_k K_k a K_k*.
  ComplexMatrix apply(const ComplexMatrix& a) const;
  /// V* (I_r (x) a) V.
  ComplexMatrix apply_dilated(const ComplexMatrix& a) const;
};

/// Kraus operators from the eigendecomposition of the Choi matrix
/// (eigenvalues below `cutoff` dropped) and the isometry stacking them.
/// Throws NotPSD or NotUnital.
Dilation stinespring_dilate(const ChoiMatrix& choi, double cutoff = 1e-10);

}  // namespace hyperlinear
