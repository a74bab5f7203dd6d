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

#include <optional>
#include <string>
#include <vector>

#include "mosaic/learner.hpp"
#include "mosaic/partition.hpp"
#include "mosaic/pec.hpp"
#include "mosaic/simulator.hpp"

namespace mosaic {

enum class Backend { Dense, Trajectory };

struct RunConfig {
  // circuit source: a file path, or "tfim:<n>:<depth>" / "random:<n>:<depth>:<seed>"
  std::string circuit = "tfim:4:2";
  std::string observable = "tfim";  // see parse_observable grammar
  double p1 = 0.006;
  double p2 = 0.06;
  bool p1_explicit = false;  // when false, p1 follows p2 / 10
  std::uint64_t noise_seed = 1;
  std::string noise_file;  // optional: load layer noise instead of synthesizing
  int grain = 5;
  std::vector<int> schedule;  // optional heterogeneous grain
  std::int64_t n_samples = 10000;
  int shots = 4096;
  std::uint64_t seed = 1;
  Backend backend = Backend::Dense;
  bool exact_expectation = false;  // dense backend: trace formula instead of shots
  bool noisy_corrections = false;
  int threads = 1;
  bool run_layerwise = true;  // also run the w = 1 baseline for comparison
  std::string out_path;
};

struct BlockReport {
  int id = 0;
  int layer_begin = 0;
  int layer_end = 0;
  double gamma = 1.0;
  double fit_loss = 0.0;       // max Frobenius loss over the block's scopes
  double fit_residual = 0.0;   // max off-diagonal (irreducible) residual
  int iterations = 0;
  bool converged = true;
  std::vector<std::vector<int>> scopes;
};

struct PipelineResult {
  int n = 0;
  double ideal = 0.0;        // noiseless exact expectation
  double unmitigated = 0.0;  // noisy, no corrections (same backend as runs)
  MitigationResult mosaic;
  std::vector<BlockReport> block_reports;
  std::optional<MitigationResult> layerwise;
  std::vector<BlockReport> layerwise_reports;

  double gamma_mosaic() const { return mosaic.gamma_total; }
  // 1 - |x - ideal| / |unmitigated - ideal|
  double error_removed(double x) const;
};

// Learned per-block recoveries for a plan: fit every scope, invert, package.
struct PlanRecovery {
  std::vector<BlockRecovery> recoveries;
  std::vector<BlockReport> reports;
  double gamma_total = 1.0;
  bool all_converged = true;
};

PlanRecovery learn_plan_recoveries(const PartitionPlan& plan, const FitConfig& fit_cfg);

// Executes the sampled circuits (deduplicated) and combines the estimator.
// Deterministic for any thread count: per-unique values land in first-seen
// slots and the reduction runs in that order.
MitigationResult execute_and_estimate(const NoisyCircuit& nc, const Observable& obs,
                                      const std::vector<BlockRecovery>& recoveries,
                                      std::int64_t n_samples, const RunConfig& cfg);

// Builds the circuit from RunConfig.circuit (generator spec or file).
CircuitIR resolve_circuit(const RunConfig& cfg);

// Full workflow: partition -> learn -> invert -> sample -> execute -> combine,
// plus the ideal / unmitigated / layerwise reference values.
PipelineResult run_mitigation(const RunConfig& cfg);

// Structured-text emitters used by the CLI and kept byte-stable under a seed.
std::string pipeline_result_to_json(const PipelineResult& r, const RunConfig& cfg);
std::string partition_plan_to_text(const PartitionPlan& plan);

}  // namespace mosaic
