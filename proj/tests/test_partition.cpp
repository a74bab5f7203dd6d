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

#include "doctest.h"
#include "mosaic/errors.hpp"

using namespace mosaic;

namespace {
PartitionPlan plan_of(const CircuitIR& c, int grain, double p1 = 0.006, double p2 = 0.06) {
  PartitionOptions opt;
  opt.grain = grain;
  return partition_with_synth_noise(c, p1, p2, 1, opt);
}
}  // namespace

TEST_CASE("uniform slicing") {
  // 6 layers of single-qubit gates
  CircuitIR c{1, {}};
  for (int i = 0; i < 6; ++i) c.gates.push_back(Gate::g1(GateKind::H, 0));
  auto plan = plan_of(c, 2);
  REQUIRE(plan.blocks.size() == 3);
  for (const auto& b : plan.blocks) CHECK(b.depth() == 2);
  CHECK(validate_partition(plan, c).ok());
}

TEST_CASE("two dependent CX layers fit one block of grain 2") {
  CircuitIR c{4, {Gate::g2(GateKind::CX, 0, 1), Gate::g2(GateKind::CX, 2, 3), Gate::g2(GateKind::CX, 1, 2)}};
  auto plan = plan_of(c, 2);
  REQUIRE(plan.blocks.size() == 1);
  CHECK(plan.blocks[0].depth() == 2);
  CHECK(plan.blocks[0].footprint == std::vector<int>{0, 1, 2, 3});
  REQUIRE(plan.blocks[0].scopes.size() == 1);
  CHECK(plan.blocks[0].scopes[0].qubits == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("grain one gives one block per layer") {
  CircuitIR c = gen_random_circuit(4, 3, 5);
  auto layers = layerize(c);
  auto plan = plan_of(c, 1);
  CHECK(plan.blocks.size() == layers.size());
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
    CHECK(plan.blocks[static_cast<std::size_t>(i)].depth() == 1);
  }
}

TEST_CASE("scope cap closes blocks early and keeps scopes dense") {
  // 8-qubit TFIM ansatz layers: even and odd entangler layers would merge
  // into one 8-qubit scope, over the dense limit, so blocks break there
  auto c = gen_tfim_ansatz(8, 2, std::vector<double>(tfim_param_count(8, 2), 0.3));
  auto plan = plan_of(c, 5);
  CHECK(validate_partition(plan, c).ok());
  for (const auto& b : plan.blocks) {
    for (const auto& s : b.scopes) CHECK(static_cast<int>(s.qubits.size()) <= kDenseLimit);
  }
  // footprints may exceed the dense limit; scopes never do
  bool some_wide_footprint = false;
  for (const auto& b : plan.blocks) {
    if (static_cast<int>(b.footprint.size()) > kDenseLimit) some_wide_footprint = true;
  }
  CHECK(some_wide_footprint);
}

TEST_CASE("single layer over the scope limit is a capacity error") {
  CircuitIR c{2, {Gate::g2(GateKind::CX, 0, 1)}};
  PartitionOptions opt;
  opt.grain = 1;
  opt.scope_limit = 1;
  CHECK_THROWS_AS(partition_with_synth_noise(c, 0.0, 0.06, 1, opt), Error);
}

TEST_CASE("coverage and determinism") {
  CircuitIR c = gen_random_circuit(5, 6, 11);
  auto layers = layerize(c);
  for (int grain : {1, 2, 3, 5}) {
    auto plan = plan_of(c, grain);
    int covered = 0;
    for (const auto& b : plan.blocks) covered += b.depth();
    CHECK(covered == static_cast<int>(layers.size()));
    // deterministic
    auto plan2 = plan_of(c, grain);
    REQUIRE(plan.blocks.size() == plan2.blocks.size());
    for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
      CHECK(plan.blocks[i].layer_begin == plan2.blocks[i].layer_begin);
      CHECK(plan.blocks[i].footprint == plan2.blocks[i].footprint);
    }
    CHECK(validate_partition(plan, c).ok());
  }
}

TEST_CASE("heterogeneous schedule cycles per block") {
  CircuitIR c{1, {}};
  for (int i = 0; i < 7; ++i) c.gates.push_back(Gate::g1(GateKind::H, 0));
  PartitionOptions opt;
  opt.schedule = {2, 1};
  auto plan = partition_with_synth_noise(c, 0.006, 0.06, 1, opt);
  REQUIRE(plan.blocks.size() == 5);
  CHECK(plan.blocks[0].depth() == 2);
  CHECK(plan.blocks[1].depth() == 1);
  CHECK(plan.blocks[2].depth() == 2);
  CHECK(plan.blocks[3].depth() == 1);
  CHECK(plan.blocks[4].depth() == 1);
}

TEST_CASE("validator flags dropped layers and swapped blocks") {
  CircuitIR c = gen_random_circuit(3, 4, 2);
  auto plan = plan_of(c, 2);
  REQUIRE(plan.blocks.size() >= 2);

  PartitionPlan dropped = plan;
  dropped.blocks.pop_back();
  CHECK_FALSE(validate_partition(dropped, c).ok());

  PartitionPlan swapped = plan;
  std::swap(swapped.blocks[0], swapped.blocks[1]);
  CHECK_FALSE(validate_partition(swapped, c).ok());
}

TEST_CASE("blocks carry their layer noise slices") {
  CircuitIR c = gen_random_circuit(4, 4, 3);
  auto layers = layerize(c);
  std::vector<std::vector<PauliLindbladModel>> noise;
  for (const auto& layer : layers) noise.push_back(synth_layer_noise(layer, c.n, 0.006, 0.06, 1));
  PartitionOptions opt;
  opt.grain = 3;
  auto plan = partition(c, noise, opt);
  for (const auto& b : plan.blocks) {
    REQUIRE(b.layer_noise.size() == b.layers.size());
    for (std::size_t i = 0; i < b.layers.size(); ++i) {
      CHECK(b.layer_noise[i].size() == noise[static_cast<std::size_t>(b.layer_begin) + i].size());
    }
  }
}
