// Copyright 2026 The mosaic Authors
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

#include <cstdint>
#include <vector>

#include "mosaic/adam.hpp"
#include "mosaic/channel.hpp"
#include "mosaic/partition.hpp"
#include "mosaic/superop.hpp"

namespace mosaic {

struct FitConfig {
  double learning_rate = 0.05;
  int max_iters = 2000;
  double tolerance = 1e-6;  // on the controllable (diagonal) residual
  int restarts = 3;
  std::uint64_t seed = 7;
  AdamParams adam;  // beta/epsilon defaults; learning_rate field above wins
};

struct FitResult {
  PauliChannel channel{0};    // over the scope width, physical by construction
  double final_loss = 0.0;    // Frobenius norm ||T - B(theta)||_F of the best run
  double diag_residual = 0.0; // the part the diagonal ansatz can control
  double offdiag_residual = 0.0;  // irreducible off-diagonal mass of T
  std::vector<double> loss_trace;
  bool converged = false;
  int iterations = 0;
  int restarts_used = 0;
};

// Least-squares fit of a physical Pauli channel to the trailing-noise target
// T in PTM space. Probabilities are parameterized as softmax(theta) over the
// 4^n scope Paulis, so the result is CPTP with strictly positive eigenvalues
// for weak noise. Loss is the squared Frobenius distance; its off-diagonal
// part is constant in theta and reported, never hidden.
class FitProblem {
 public:
  explicit FitProblem(BlockSuperop target);

  int n() const { return n_; }
  Eigen::Index dim() const { return diag_.size(); }
  double offdiag_sq() const { return offdiag_sq_; }

  double loss_sq(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd grad(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd probabilities(const Eigen::VectorXd& theta) const;  // softmax
  double diag_residual_sq(const Eigen::VectorXd& theta) const;

 private:
  int n_ = 0;
  Eigen::VectorXd diag_;
  double offdiag_sq_ = 0.0;
};

// Warm start: the composition of the block's first-order layer channels on
// the scope, ignoring unitary conjugation.
PauliChannel warm_start_channel(const Block& b, const Scope& scope);

// Fits one scope of a block.
FitResult fit_scope_channel(const Block& b, const Scope& scope, const FitConfig& cfg);

struct ScopeFit {
  Scope scope;
  FitResult fit;
};

// Fits every scope of the block. For single-scope blocks this is the one
// effective block channel; multi-scope blocks factorize exactly because
// disjoint scopes never interact inside a block.
std::vector<ScopeFit> fit_block_channels(const Block& b, const FitConfig& cfg);

}  // namespace mosaic
