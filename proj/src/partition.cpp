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

#include "mosaic/partition.hpp"

#include <algorithm>
#include <numeric>

#include "mosaic/errors.hpp"
#include "mosaic/simulator.hpp"

namespace mosaic {

namespace {

// Union-find over qubit indices for scope tracking.
class ScopeTracker {
 public:
  explicit ScopeTracker(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int q) {
    while (parent_[static_cast<std::size_t>(q)] != q) {
      parent_[static_cast<std::size_t>(q)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(q)])];
      q = parent_[static_cast<std::size_t>(q)];
    }
    return q;
  }

  void touch(int q) {
    if (size_[static_cast<std::size_t>(find(q))] == 0) size_[static_cast<std::size_t>(find(q))] = 1;
  }

  void join(int a, int b) {
    touch(a);
    touch(b);
    int ra = find(a), rb = find(b);
    if (ra == rb) return;
    size_[static_cast<std::size_t>(rb)] += size_[static_cast<std::size_t>(ra)];
    size_[static_cast<std::size_t>(ra)] = 0;
    parent_[static_cast<std::size_t>(ra)] = rb;
  }

  void add_support(const std::vector<int>& qubits) {
    if (qubits.empty()) return;
    touch(qubits[0]);
    for (std::size_t i = 1; i < qubits.size(); ++i) join(qubits[0], qubits[i]);
  }

  int max_scope() const {
    int m = 0;
    for (int s : size_) m = std::max(m, s);
    return m;
  }

  std::vector<Scope> scopes() {
    std::vector<std::vector<int>> groups(parent_.size());
    for (int q = 0; q < static_cast<int>(parent_.size()); ++q) {
      if (size_[static_cast<std::size_t>(find(q))] > 0) groups[static_cast<std::size_t>(find(q))].push_back(q);
    }
    std::vector<Scope> out;
    for (auto& g : groups) {
      if (!g.empty()) out.push_back(Scope{std::move(g)});
    }
    // group keyed by root already yields ascending first-qubit order
    std::sort(out.begin(), out.end(),
              [](const Scope& a, const Scope& b) { return a.qubits[0] < b.qubits[0]; });
    return out;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

std::vector<std::vector<int>> layer_supports(const Layer& layer,
                                             const std::vector<PauliLindbladModel>& noise) {
  std::vector<std::vector<int>> supports;
  for (const auto& g : layer.gates) supports.push_back(g.qubits);
  for (const auto& m : noise) {
    if (!m.support().empty()) supports.push_back(m.support());
  }
  return supports;
}

Block finish_block(int id, int begin, std::vector<Layer> layers,
                   std::vector<std::vector<PauliLindbladModel>> noise, int n) {
  Block b;
  b.id = id;
  b.layer_begin = begin;
  b.layer_end = begin + static_cast<int>(layers.size());
  b.layers = std::move(layers);
  b.layer_noise = std::move(noise);
  ScopeTracker tracker(n);
  for (std::size_t i = 0; i < b.layers.size(); ++i) {
    for (const auto& s : layer_supports(b.layers[i], b.layer_noise[i])) tracker.add_support(s);
  }
  b.scopes = tracker.scopes();
  for (const auto& s : b.scopes) b.footprint.insert(b.footprint.end(), s.qubits.begin(), s.qubits.end());
  std::sort(b.footprint.begin(), b.footprint.end());
  return b;
}

}  // namespace

PartitionPlan partition(const CircuitIR& c, const std::vector<std::vector<PauliLindbladModel>>& noise,
                        const PartitionOptions& options) {
  auto layers = layerize(c);
  if (noise.size() != layers.size()) {
    throw config_error("partition: need one noise model list per layer (" +
                       std::to_string(layers.size()) + " layers, " + std::to_string(noise.size()) +
                       " given)");
  }
  if (options.grain < 1 && options.schedule.empty()) throw config_error("partition: grain must be >= 1");
  for (int w : options.schedule) {
    if (w < 1) throw config_error("partition: schedule entries must be >= 1");
  }
  int limit = options.scope_limit;
  if (limit < 1 || limit > kDenseLimit) {
    throw config_error("partition: scope limit must be in [1, " + std::to_string(kDenseLimit) + "]");
  }

  auto grain_for = [&](std::size_t block_index) {
    if (options.schedule.empty()) return options.grain;
    return options.schedule[block_index % options.schedule.size()];
  };

  PartitionPlan plan;
  std::vector<Layer> cur_layers;
  std::vector<std::vector<PauliLindbladModel>> cur_noise;
  ScopeTracker tracker(c.n);
  int begin = 0;

  auto close_block = [&](int next_begin) {
    plan.grain_schedule.push_back(grain_for(plan.blocks.size()));
    plan.blocks.push_back(finish_block(static_cast<int>(plan.blocks.size()), begin,
                                       std::move(cur_layers), std::move(cur_noise), c.n));
    cur_layers.clear();
    cur_noise.clear();
    tracker = ScopeTracker(c.n);
    begin = next_begin;
  };

  for (std::size_t li = 0; li < layers.size(); ++li) {
    const auto supports = layer_supports(layers[li], noise[li]);
    {
      // a single layer must fit a fresh tracker on its own
      ScopeTracker solo(c.n);
      for (const auto& s : supports) solo.add_support(s);
      if (solo.max_scope() > limit) {
        throw capacity_error("partition: layer " + std::to_string(li) + " alone has a noise scope of " +
                             std::to_string(solo.max_scope()) + " qubits, over the limit " +
                             std::to_string(limit) + "; lower n or raise the dense limit");
      }
    }
    if (!cur_layers.empty()) {
      ScopeTracker trial = tracker;
      for (const auto& s : supports) trial.add_support(s);
      bool over_grain = static_cast<int>(cur_layers.size()) >= grain_for(plan.blocks.size());
      if (over_grain || trial.max_scope() > limit) close_block(static_cast<int>(li));
    }
    for (const auto& s : supports) tracker.add_support(s);
    cur_layers.push_back(layers[li]);
    cur_noise.push_back(noise[li]);
  }
  if (!cur_layers.empty()) close_block(static_cast<int>(layers.size()));
  return plan;
}

PartitionPlan partition_with_synth_noise(const CircuitIR& c, double p1, double p2,
                                         std::uint64_t noise_seed, const PartitionOptions& options) {
  auto layers = layerize(c);
  std::vector<std::vector<PauliLindbladModel>> noise;
  noise.reserve(layers.size());
  for (const auto& layer : layers) noise.push_back(synth_layer_noise(layer, c.n, p1, p2, noise_seed));
  return partition(c, noise, options);
}

PartitionReport validate_partition(const PartitionPlan& plan, const CircuitIR& c) {
  PartitionReport report;
  auto layers = layerize(c);
  std::size_t expected_layers = layers.size();
  std::size_t covered = 0;
  int cursor = 0;
  for (const auto& b : plan.blocks) {
    if (b.layer_begin != cursor) {
      report.violations.push_back("block " + std::to_string(b.id) + " starts at layer " +
                                  std::to_string(b.layer_begin) + ", expected " + std::to_string(cursor));
    }
    if (b.layer_end - b.layer_begin != static_cast<int>(b.layers.size())) {
      report.violations.push_back("block " + std::to_string(b.id) + " range/layer count mismatch");
    }
    covered += b.layers.size();
    cursor = b.layer_end;
  }
  if (covered != expected_layers) {
    report.violations.push_back("plan covers " + std::to_string(covered) + " layers, circuit has " +
                                std::to_string(expected_layers));
  }

  // per-qubit gate order must match the original program order
  std::vector<Layer> flat;
  for (const auto& b : plan.blocks) flat.insert(flat.end(), b.layers.begin(), b.layers.end());
  CircuitIR rebuilt = concat_layers(c.n, flat);
  for (int q = 0; q < c.n; ++q) {
    std::vector<Gate> orig, got;
    for (const auto& g : c.gates) {
      if (std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end()) orig.push_back(g);
    }
    for (const auto& g : rebuilt.gates) {
      if (std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end()) got.push_back(g);
    }
    if (orig != got) {
      report.violations.push_back("qubit " + std::to_string(q) + ": gate order not preserved");
    }
  }

  if (c.n <= 4 && report.violations.empty()) {
    double dev = unitary_distance(c, rebuilt);
    if (dev > 1e-12) {
      report.violations.push_back("concatenated blocks deviate from original unitary by " +
                                  std::to_string(dev));
    }
  }
  return report;
}

}  // namespace mosaic
