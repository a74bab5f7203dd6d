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

#include <vector>

#include <Eigen/Dense>

#include "mosaic/channel.hpp"
#include "mosaic/circuit.hpp"
#include "mosaic/partition.hpp"

namespace mosaic {

// Dense real operator in the Pauli transfer basis over a scope of n qubits.
// Trace preservation shows up as a first row equal to (1, 0, ..., 0).
struct BlockSuperop {
  int n = 0;
  Eigen::MatrixXd matrix;

  static BlockSuperop identity(int n);
  double trace_row_deviation() const;
};

// PTM of one gate over its own qubits (4x4 or 16x16), exact for the gate set.
Eigen::MatrixXd gate_ptm(const Gate& g);

// Left-multiplies `op` by the gate's PTM embedded on tensor slots `positions`
// (positions index the scope, qubit 0 of the scope most significant).
void apply_gate_ptm_left(BlockSuperop& op, const std::vector<int>& positions, const Eigen::MatrixXd& small);

// PTM of a layer's unitary restricted to the scope qubits; gates outside the
// scope are ignored (they act on other scopes by construction).
BlockSuperop layer_superop(const Layer& layer, const std::vector<int>& scope);

// Diagonal PTM of the first-order channel of a Pauli-Lindblad model, embedded
// on the scope. The model support must lie inside the scope.
Eigen::VectorXd noise_superop_diag(const PauliLindbladModel& m, const std::vector<int>& scope);
BlockSuperop noise_superop(const PauliLindbladModel& m, const std::vector<int>& scope);

// Alternating product A_N S_N ... A_1 S_1 over one scope of the block.
BlockSuperop compose_noisy_block(const Block& b, const Scope& scope);

// PTM of the block's noiseless unitary restricted to the scope.
BlockSuperop block_unitary_ptm(const Block& b, const Scope& scope);

// Trailing-noise fit target: T = S_noisy * S_ideal^T (PTMs of unitaries are
// orthogonal, so the transpose is the inverse).
BlockSuperop block_fit_target(const Block& b, const Scope& scope);

// Restricts a full-width Pauli to scope coordinates / embeds it back.
PauliString restrict_to_scope(const PauliString& p, const std::vector<int>& scope);
PauliString embed_from_scope(const PauliString& local, int n, const std::vector<int>& scope);

}  // namespace mosaic
