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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "mosaic/errors.hpp"
#include "mosaic/rng.hpp"

namespace mosaic {

namespace {
struct GateInfo {
  GateKind kind;
  const char* mnemonic;
  int arity;
  bool has_angle;
  bool clifford;
};
constexpr std::array<GateInfo, 11> kGateTable{{
    {GateKind::RX, "rx", 1, true, false},
    {GateKind::RY, "ry", 1, true, false},
    {GateKind::RZ, "rz", 1, true, false},
    {GateKind::H, "h", 1, false, true},
    {GateKind::X, "x", 1, false, true},
    {GateKind::Y, "y", 1, false, true},
    {GateKind::Z, "z", 1, false, true},
    {GateKind::S, "s", 1, false, true},
    {GateKind::CX, "cx", 2, false, true},
    {GateKind::CZ, "cz", 2, false, true},
    {GateKind::RZZ, "rzz", 2, true, false},
}};
const GateInfo& info(GateKind kind) { return kGateTable[static_cast<std::size_t>(kind)]; }
}  // namespace

bool gate_is_clifford(GateKind kind) { return info(kind).clifford; }
bool gate_has_angle(GateKind kind) { return info(kind).has_angle; }
int gate_arity(GateKind kind) { return info(kind).arity; }
const char* gate_mnemonic(GateKind kind) { return info(kind).mnemonic; }

std::optional<GateKind> gate_from_mnemonic(const std::string& mnemonic) {
  for (const auto& g : kGateTable) {
    if (mnemonic == g.mnemonic) return g.kind;
  }
  return std::nullopt;
}

bool Gate::operator==(const Gate& o) const {
  return kind == o.kind && qubits == o.qubits && angle == o.angle;
}

void CircuitIR::validate() const {
  if (n < 1) throw config_error("circuit must have at least one qubit");
  for (const auto& g : gates) {
    if (static_cast<int>(g.qubits.size()) != gate_arity(g.kind)) {
      throw config_error(std::string("gate ") + gate_mnemonic(g.kind) + ": wrong qubit count");
    }
    for (int q : g.qubits) {
      if (q < 0 || q >= n) throw config_error("gate qubit index out of range");
    }
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
      throw config_error("two-qubit gate with repeated qubit index");
    }
  }
}

std::vector<int> Layer::footprint() const {
  std::vector<int> qs;
  for (const auto& g : gates) qs.insert(qs.end(), g.qubits.begin(), g.qubits.end());
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  return qs;
}

std::vector<Layer> layerize(const CircuitIR& c) {
  c.validate();
  std::vector<int> frontier(static_cast<std::size_t>(c.n), 0);  // first free layer per qubit
  std::vector<Layer> layers;
  for (const auto& g : c.gates) {
    int at = 0;
    for (int q : g.qubits) at = std::max(at, frontier[static_cast<std::size_t>(q)]);
    if (at == static_cast<int>(layers.size())) layers.push_back(Layer{at, {}});
    layers[static_cast<std::size_t>(at)].gates.push_back(g);
    for (int q : g.qubits) frontier[static_cast<std::size_t>(q)] = at + 1;
  }
  return layers;
}

CircuitIR concat_layers(int n, const std::vector<Layer>& layers) {
  CircuitIR c{n, {}};
  for (const auto& layer : layers) {
    c.gates.insert(c.gates.end(), layer.gates.begin(), layer.gates.end());
  }
  return c;
}

int tfim_param_count(int n, int depth) { return n * (depth + 1) + depth * (n - 1); }

CircuitIR gen_tfim_ansatz(int n, int depth, const std::vector<double>& params) {
  if (n < 1 || depth < 0) throw config_error("gen_tfim_ansatz: bad shape");
  int expected = tfim_param_count(n, depth);
  if (static_cast<int>(params.size()) != expected) {
    throw config_error("gen_tfim_ansatz: expected " + std::to_string(expected) + " parameters, got " +
                       std::to_string(params.size()));
  }
  // Leading RY column, then per repetition: RZZ on even bonds, RZZ on odd
  // bonds, RX column. At all-zero angles the circuit acts as the identity on
  // |0...0>; per-gate angles subsume the Hamiltonian-variational family, which
  // represents the critical TFIM ground state exactly at depth n/2.
  CircuitIR c{n, {}};
  std::size_t p = 0;
  for (int q = 0; q < n; ++q) c.gates.push_back(Gate::g1(GateKind::RY, q, params[p++]));
  for (int rep = 0; rep < depth; ++rep) {
    for (int q = 0; q + 1 < n; q += 2) c.gates.push_back(Gate::g2(GateKind::RZZ, q, q + 1, params[p++]));
    for (int q = 1; q + 1 < n; q += 2) c.gates.push_back(Gate::g2(GateKind::RZZ, q, q + 1, params[p++]));
    for (int q = 0; q < n; ++q) c.gates.push_back(Gate::g1(GateKind::RX, q, params[p++]));
  }
  return c;
}

CircuitIR gen_random_circuit(int n, int depth, std::uint64_t seed) {
  if (n < 2) throw config_error("gen_random_circuit: need n >= 2");
  Rng rng(seed);
  CircuitIR c{n, {}};
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (int step = 0; step < depth; ++step) {
    for (int q = 0; q < n; ++q) {
      GateKind kind = std::array{GateKind::RX, GateKind::RY, GateKind::RZ}[rng.next_below(3)];
      c.gates.push_back(Gate::g1(kind, q, rng.next_double() * kTwoPi));
    }
    // Random maximal matching of the line: visit bonds in a random order,
    // greedily taking every bond whose endpoints are still free.
    std::vector<int> bonds(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n - 1; ++i) bonds[static_cast<std::size_t>(i)] = i;
    for (std::size_t i = bonds.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng.next_below(i));
      std::swap(bonds[i - 1], bonds[j]);
    }
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<int> chosen;
    for (int b : bonds) {
      if (!used[static_cast<std::size_t>(b)] && !used[static_cast<std::size_t>(b + 1)]) {
        chosen.push_back(b);
        used[static_cast<std::size_t>(b)] = used[static_cast<std::size_t>(b + 1)] = true;
      }
    }
    std::sort(chosen.begin(), chosen.end());
    for (int b : chosen) c.gates.push_back(Gate::g2(GateKind::CX, b, b + 1));
  }
  return c;
}

namespace {
std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}
}  // namespace

CircuitIR parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  CircuitIR c;
  bool have_header = false;
  auto fail = [&](const std::string& msg) {
    throw config_error("circuit parse error at line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (!have_header) {
      if (word != "qubits") fail("expected 'qubits <n>' header");
      if (!(ls >> c.n) || c.n < 1) fail("bad qubit count");
      have_header = true;
      continue;
    }
    auto kind = gate_from_mnemonic(word);
    if (!kind) fail("unknown gate '" + word + "'");
    Gate g{*kind, {}, 0.0};
    for (int i = 0; i < gate_arity(*kind); ++i) {
      int q;
      if (!(ls >> q)) fail("missing qubit operand");
      g.qubits.push_back(q);
    }
    if (gate_has_angle(*kind)) {
      if (!(ls >> g.angle)) fail("missing angle");
    }
    std::string extra;
    if (ls >> extra) fail("trailing token '" + extra + "'");
    c.gates.push_back(g);
  }
  if (!have_header) {
    lineno = 1;
    fail("empty circuit file");
  }
  c.validate();
  return c;
}

std::string serialize_circuit(const CircuitIR& c) {
  std::string out = "qubits " + std::to_string(c.n) + "\n";
  for (const auto& g : c.gates) {
    out += gate_mnemonic(g.kind);
    for (int q : g.qubits) out += " " + std::to_string(q);
    if (gate_has_angle(g.kind)) out += " " + format_double(g.angle);
    out += "\n";
  }
  return out;
}

}  // namespace mosaic
