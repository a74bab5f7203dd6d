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
#include <string>
#include <unordered_map>
#include <vector>

#include "mosaic/channel.hpp"
#include "mosaic/partition.hpp"

namespace mosaic {

// Signed decomposition of an inverse Pauli channel, with derived sampling
// primitives: gamma = sum |eta|, p_r = |eta_r| / gamma, s_r = sign(eta_r).
class QuasiProbability {
 public:
  QuasiProbability() = default;
  QuasiProbability(int n, Eigen::VectorXd etas);

  int n() const { return n_; }
  const Eigen::VectorXd& etas() const { return etas_; }
  double eta(const PauliString& p) const { return etas_[static_cast<Eigen::Index>(p.canonical_index())]; }
  double gamma() const { return gamma_; }
  double prob(Eigen::Index r) const { return std::abs(etas_[r]) / gamma_; }
  int sign(Eigen::Index r) const { return etas_[r] < 0 ? -1 : +1; }
  double eta_sum() const { return etas_.sum(); }

  // Inverse-CDF draw over p_r.
  Eigen::Index sample(double uniform01) const;

  // The quasi-probability reinterpreted as a (generally non-physical) Pauli
  // channel, for composition checks and deterministic-limit evaluation.
  PauliChannel as_channel() const;

 private:
  int n_ = 0;
  Eigen::VectorXd etas_;
  double gamma_ = 1.0;
  std::vector<double> cdf_;
};

// Inverts a physical Pauli channel in PTM space: reciprocal eigenvalues, then
// the chi back-transform. Fails if any eigenvalue is at or below threshold,
// naming the offending Pauli.
QuasiProbability invert_channel(const PauliChannel& ch, double eigenvalue_threshold = 1e-9);

// Per-block recovery: one quasi-probability per noise scope. Scopes are
// disjoint, so the block recovery is their product; gamma multiplies exactly.
struct ScopeRecovery {
  std::vector<int> qubits;  // scope, sorted
  QuasiProbability inverse;
};

struct BlockRecovery {
  int block_id = 0;
  int insert_after_layer = 0;  // global layer index of the block's last layer
  std::vector<ScopeRecovery> scopes;
  double gamma() const {
    double g = 1.0;
    for (const auto& s : scopes) g *= s.inverse.gamma();
    return g;
  }
};

// One Monte Carlo draw: per block, the merged full-width correction Pauli
// (identity entries dropped) and the product sign.
struct SampledCircuit {
  // (block ordinal, full-width pauli) for blocks with a non-identity draw
  std::vector<std::pair<int, PauliString>> corrections;
  int sign = +1;
  std::uint64_t canonical_key = 0;  // stable content hash
};

// N independent draws via counter-based per-sample substreams; sample k is
// reproducible regardless of worker count or draw order.
std::vector<SampledCircuit> sample_corrections(const std::vector<BlockRecovery>& recoveries, int n,
                                               std::int64_t n_samples, std::uint64_t seed);

struct DedupEntry {
  SampledCircuit representative;
  std::int64_t multiplicity = 0;
};

// Hash dictionary of unique sampled circuits in first-seen order. Grouping
// compares full correction content; a sign mismatch inside a group would mean
// the key function is broken and raises an internal error.
std::vector<DedupEntry> deduplicate(const std::vector<SampledCircuit>& samples);

struct MitigationRecord {
  std::uint64_t canonical_key = 0;
  std::int64_t multiplicity = 0;
  int sign = +1;
  double value = 0.0;  // observable estimate r for this unique circuit
};

struct MitigationResult {
  double estimate = 0.0;
  double gamma_total = 1.0;
  std::int64_t n_samples = 0;
  std::int64_t unique_circuits = 0;
  double std_error = 0.0;
  std::vector<MitigationRecord> records;  // first-seen order
};

// E = (Gamma / N) sum m s r over the dedup table, with compensated summation
// in first-seen order; std_error = Gamma * stddev(signed per-sample values)
// / sqrt(N).
MitigationResult mitigated_estimate(const std::vector<DedupEntry>& table,
                                    const std::vector<double>& values, double gamma_total,
                                    std::int64_t n_samples);

// N = ceil(Gamma^2 / epsilon^2), reading epsilon as additive standard error.
std::int64_t required_samples(double gamma_total, double epsilon);

}  // namespace mosaic
