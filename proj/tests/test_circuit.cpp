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

#include "mosaic/circuit.hpp"

#include <set>

#include "doctest.h"
#include "mosaic/errors.hpp"
#include "mosaic/rng.hpp"
#include "mosaic/simulator.hpp"

using namespace mosaic;

TEST_CASE("layerize groups disjoint gates and splits dependent ones") {
  CircuitIR c{4, {Gate::g2(GateKind::CX, 0, 1), Gate::g2(GateKind::CX, 2, 3)}};
  auto layers = layerize(c);
  REQUIRE(layers.size() == 1);
  CHECK(layers[0].gates.size() == 2);

  CircuitIR c2{3, {Gate::g2(GateKind::CX, 0, 1), Gate::g2(GateKind::CX, 1, 2)}};
  CHECK(layerize(c2).size() == 2);

  CircuitIR c3{2, {Gate::g1(GateKind::H, 0), Gate::g2(GateKind::CX, 0, 1), Gate::g1(GateKind::H, 1)}};
  auto l3 = layerize(c3);
  REQUIRE(l3.size() == 3);
  CHECK(l3[0].gates[0].kind == GateKind::H);
  CHECK(l3[1].gates[0].kind == GateKind::CX);
  CHECK(l3[2].gates[0].qubits[0] == 1);
}

TEST_CASE("layerize preserves per-qubit gate order on random circuits") {
  for (int n = 2; n <= 5; ++n) {
    for (int depth = 1; depth <= 6; ++depth) {
      CircuitIR c = gen_random_circuit(n, depth, 1000 * static_cast<std::uint64_t>(n) + depth);
      CircuitIR flat = concat_layers(n, layerize(c));
      for (int q = 0; q < n; ++q) {
        std::vector<Gate> orig, got;
        for (const auto& g : c.gates) {
          for (int gq : g.qubits) {
            if (gq == q) orig.push_back(g);
          }
        }
        for (const auto& g : flat.gates) {
          for (int gq : g.qubits) {
            if (gq == q) got.push_back(g);
          }
        }
        REQUIRE(orig == got);
      }
    }
  }
}

TEST_CASE("layer concatenation is unitarily equivalent to the program") {
  for (int n = 2; n <= 4; ++n) {
    CircuitIR c = gen_random_circuit(n, 5, 77 + static_cast<std::uint64_t>(n));
    CircuitIR flat = concat_layers(n, layerize(c));
    CHECK(unitary_distance(c, flat) < 1e-12);
  }
}

TEST_CASE("tfim ansatz shape and parameter count") {
  CHECK(tfim_param_count(4, 2) == 18);
  CHECK(tfim_param_count(2, 1) == 5);
  CHECK_THROWS_AS(gen_tfim_ansatz(4, 2, std::vector<double>(17, 0.0)), Error);

  // all angles zero acts as identity on |0...0>
  auto c = gen_tfim_ansatz(2, 1, std::vector<double>(5, 0.0));
  auto psi = simulate_statevector(c);
  CHECK(std::abs(psi[0]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tfim ansatz with optimized parameters reaches the n=2 ground energy") {
  // frozen optimum for n=2 depth=1 (ground energy -sqrt(5)); the leading RY
  // column prepares |+>^2, then one entangler/field repetition
  std::vector<double> params = {1.5707963267948966, 1.5707963267948966, -0.46364760900080615,
                                -0.78539816339744831, -0.78539816339744831};
  auto psi = simulate_statevector(gen_tfim_ansatz(2, 1, params));
  double energy = expectation(psi, 2, Observable::tfim_energy(2, 1.0, 1.0));
  CHECK(energy / 2 == doctest::Approx(-std::sqrt(5.0) / 2).epsilon(1e-6));
}

TEST_CASE("random circuit generator") {
  CircuitIR a = gen_random_circuit(3, 2, 7);
  CircuitIR b = gen_random_circuit(3, 2, 7);
  CHECK(a == b);
  CHECK(gen_random_circuit(4, 0, 1).gates.empty());
  CHECK_THROWS_AS(gen_random_circuit(1, 2, 1), Error);

  // matching is maximal: no two adjacent free qubits remain in a CX step
  CircuitIR c = gen_random_circuit(6, 4, 99);
  auto layers = layerize(c);
  for (const auto& layer : layers) {
    if (layer.gates[0].kind != GateKind::CX) continue;
    std::set<int> used;
    for (const auto& g : layer.gates) used.insert(g.qubits.begin(), g.qubits.end());
    for (int q = 0; q + 1 < 6; ++q) {
      CHECK((used.count(q) || used.count(q + 1)));
    }
  }
}

TEST_CASE("circuit text round-trip") {
  CircuitIR c = parse_circuit("qubits 2\ncx 0 1\n");
  REQUIRE(c.gates.size() == 1);
  CHECK(c.n == 2);
  CHECK(c.gates[0].kind == GateKind::CX);

  CircuitIR z = parse_circuit("qubits 2\nrzz 0 1 0.5\n# comment\n");
  CHECK(z.gates[0].kind == GateKind::RZZ);
  CHECK(z.gates[0].angle == 0.5);

  CircuitIR r = gen_random_circuit(3, 2, 7);
  CHECK(parse_circuit(serialize_circuit(r)) == r);
  auto t = gen_tfim_ansatz(4, 2, std::vector<double>(18, 0.25));
  CHECK(parse_circuit(serialize_circuit(t)) == t);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_circuit("qubits 2\nbogus 0\n");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_circuit("cx 0 1\n"), Error);
  CHECK_THROWS_AS(parse_circuit("qubits 2\ncx 0 5\n"), Error);
  CHECK_THROWS_AS(parse_circuit("qubits 2\ncx 0 0\n"), Error);
  CHECK_THROWS_AS(parse_circuit("qubits 2\ncx 0 1 3.0\n"), Error);
}
