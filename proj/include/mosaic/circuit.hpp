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
#include <optional>
#include <string>
#include <vector>

namespace mosaic {

enum class GateKind { RX, RY, RZ, H, X, Y, Z, S, CX, CZ, RZZ };

bool gate_is_clifford(GateKind kind);
bool gate_has_angle(GateKind kind);
int gate_arity(GateKind kind);
const char* gate_mnemonic(GateKind kind);
std::optional<GateKind> gate_from_mnemonic(const std::string& mnemonic);

struct Gate {
  GateKind kind;
  std::vector<int> qubits;  // 1 or 2 distinct site indices, order significant
  double angle = 0.0;       // radians; meaningful for RX/RY/RZ/RZZ only

  static Gate g1(GateKind kind, int q, double angle = 0.0) { return Gate{kind, {q}, angle}; }
  static Gate g2(GateKind kind, int q0, int q1, double angle = 0.0) {
    return Gate{kind, {q0, q1}, angle};
  }
  bool operator==(const Gate& o) const;
};

// Ordered gate list; gate order is program order and is never permuted across
// shared-qubit dependencies.
struct CircuitIR {
  int n = 0;
  std::vector<Gate> gates;

  void validate() const;  // throws on out-of-range or malformed gates
  bool operator==(const CircuitIR& o) const { return n == o.n && gates == o.gates; }
};

// Gates with pairwise-disjoint qubit footprints, executable simultaneously.
struct Layer {
  int index = 0;
  std::vector<Gate> gates;

  std::vector<int> footprint() const;  // sorted distinct qubits
};

// Greedy as-soon-as-possible layering: each gate lands in the earliest layer
// after every gate it shares a qubit with. Deterministic.
std::vector<Layer> layerize(const CircuitIR& c);

// Flattens layers back to a circuit (layer order, then in-layer order).
CircuitIR concat_layers(int n, const std::vector<Layer>& layers);

// Hardware-efficient TFIM ansatz: per repetition RY on all qubits, RZZ on
// even bonds, RZZ on odd bonds; trailing RY layer. Parameter count is
// n*(depth+1) + depth*(n-1), consumed in program order.
CircuitIR gen_tfim_ansatz(int n, int depth, const std::vector<double>& params);
int tfim_param_count(int n, int depth);

// Per depth step: a uniformly random RX/RY/RZ on each qubit (angle in
// [0, 2pi)), then CX on a random maximal matching of the line.
CircuitIR gen_random_circuit(int n, int depth, std::uint64_t seed);

// Line-oriented text format: "qubits <n>" then one gate per line,
// "<mnemonic> <q0> [q1] [angle]"; '#' starts a comment.
CircuitIR parse_circuit(const std::string& text);
std::string serialize_circuit(const CircuitIR& c);

}  // namespace mosaic
