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

#include <string>
#include <vector>

#include "mosaic/channel.hpp"
#include "mosaic/circuit.hpp"

namespace mosaic {

// A noise scope: a connected component of the qubits a block's gates and
// noise terms touch. Channel learning and inversion run densely per scope,
// so each scope is capped at kDenseLimit qubits; disjoint scopes never
// interact within the block and factorize exactly.
struct Scope {
  std::vector<int> qubits;  // sorted ascending
};

// Contiguous run of layers treated as one mitigation unit.
struct Block {
  int id = 0;
  int layer_begin = 0;  // half-open range into the layer sequence
  int layer_end = 0;
  std::vector<Layer> layers;
  std::vector<std::vector<PauliLindbladModel>> layer_noise;  // per contained layer
  std::vector<int> footprint;                                // union of touched qubits, sorted
  std::vector<Scope> scopes;                                 // connected noise scopes

  int depth() const { return layer_end - layer_begin; }
};

struct PartitionPlan {
  std::vector<Block> blocks;
  std::vector<int> grain_schedule;  // resolved per-block grain budgets
};

struct PartitionOptions {
  // Uniform grain; ignored when schedule is non-empty.
  int grain = 5;
  // Heterogeneous per-block grain budgets; cycled if shorter than the plan.
  std::vector<int> schedule;
  // Maximum connected-scope width; defaults to the dense Pauli limit.
  int scope_limit = kDenseLimit;
};

// Single forward pass: accumulate layers into the current block until the
// grain budget is reached or admitting the next layer would grow a connected
// scope past the scope limit; layers are never split. O(m n) in gates x
// qubits. Throws a capacity error if one layer alone exceeds the scope limit.
PartitionPlan partition(const CircuitIR& c, const std::vector<std::vector<PauliLindbladModel>>& noise,
                        const PartitionOptions& options);

// Convenience: layerizes and synthesizes per-gate noise first.
PartitionPlan partition_with_synth_noise(const CircuitIR& c, double p1, double p2,
                                         std::uint64_t noise_seed, const PartitionOptions& options);

struct PartitionReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks coverage, ordering, per-qubit gate-order preservation, and (n <= 4)
// unitary equivalence of the concatenated blocks against the original.
PartitionReport validate_partition(const PartitionPlan& plan, const CircuitIR& c);

}  // namespace mosaic
