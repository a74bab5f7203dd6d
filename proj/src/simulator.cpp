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

#include "mosaic/simulator.hpp"

#include <algorithm>
#include <cmath>

#include <cassert>

#include "mosaic/errors.hpp"
#include "mosaic/rng.hpp"

namespace mosaic {

using complexd = std::complex<double>;

namespace {

// Qubit q occupies bit (n-1-q) of a basis index.
inline std::int64_t qubit_bit(int n, int q) { return std::int64_t{1} << (n - 1 - q); }

// Index-space masks of a Pauli string.
struct PauliMasks {
  std::int64_t x = 0;
  std::int64_t z = 0;
  int y_count = 0;
};

PauliMasks masks_of(int n, const PauliString& p) {
  PauliMasks m;
  for (int q = 0; q < n; ++q) {
    int d = p.digit(q);
    if (d == 1 || d == 2) m.x |= qubit_bit(n, q);
    if (d == 2 || d == 3) m.z |= qubit_bit(n, q);
    if (d == 2) ++m.y_count;
  }
  return m;
}

inline int parity(std::int64_t v) { return __builtin_parityll(static_cast<unsigned long long>(v)); }

Eigen::Matrix2cd u1(GateKind kind, double angle) {
  const complexd i(0, 1);
  Eigen::Matrix2cd u;
  switch (kind) {
    case GateKind::RX: {
      double c = std::cos(angle / 2), s = std::sin(angle / 2);
      u << c, -i * s, -i * s, c;
      return u;
    }
    case GateKind::RY: {
      double c = std::cos(angle / 2), s = std::sin(angle / 2);
      u << c, -s, s, c;
      return u;
    }
    case GateKind::RZ:
      u << std::exp(-i * angle / 2.0), 0, 0, std::exp(i * angle / 2.0);
      return u;
    case GateKind::H:
      u << 1, 1, 1, -1;
      return u / std::sqrt(2.0);
    case GateKind::X:
      u << 0, 1, 1, 0;
      return u;
    case GateKind::Y:
      u << 0, -i, i, 0;
      return u;
    case GateKind::Z:
      u << 1, 0, 0, -1;
      return u;
    case GateKind::S:
      u << 1, 0, 0, i;
      return u;
    default:
      throw internal_error("u1: not a single-qubit gate");
  }
}

Eigen::Matrix4cd u2(GateKind kind, double angle) {
  const complexd i(0, 1);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  switch (kind) {
    case GateKind::CX:
      u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1;
      return u;
    case GateKind::CZ:
      u(0, 0) = u(1, 1) = u(2, 2) = 1;
      u(3, 3) = -1;
      return u;
    case GateKind::RZZ: {
      complexd e = std::exp(-i * angle / 2.0), f = std::exp(i * angle / 2.0);
      u(0, 0) = e;
      u(1, 1) = f;
      u(2, 2) = f;
      u(3, 3) = e;
      return u;
    }
    default:
      throw internal_error("u2: not a two-qubit gate");
  }
}

// Applies a 1-qubit unitary to the row index of a square matrix or to a vector.
template <typename Mat>
void apply_1q_rows(Mat& m, int n, int q, const Eigen::Matrix2cd& u) {
  const std::int64_t dim = std::int64_t{1} << n;
  const std::int64_t bit = qubit_bit(n, q);
  const std::int64_t cols = m.cols();
  for (std::int64_t j = 0; j < cols; ++j) {
    for (std::int64_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      complexd a = m(i, j), b = m(i | bit, j);
      m(i, j) = u(0, 0) * a + u(0, 1) * b;
      m(i | bit, j) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

template <typename Mat>
void apply_2q_rows(Mat& m, int n, int q0, int q1, const Eigen::Matrix4cd& u) {
  const std::int64_t dim = std::int64_t{1} << n;
  const std::int64_t b0 = qubit_bit(n, q0);
  const std::int64_t b1 = qubit_bit(n, q1);
  const std::int64_t cols = m.cols();
  for (std::int64_t j = 0; j < cols; ++j) {
    for (std::int64_t i = 0; i < dim; ++i) {
      if (i & (b0 | b1)) continue;
      complexd v[4] = {m(i, j), m(i | b1, j), m(i | b0, j), m(i | b0 | b1, j)};
      for (int r = 0; r < 4; ++r) {
        complexd acc = 0;
        for (int c = 0; c < 4; ++c) acc += u(r, c) * v[c];
        std::int64_t idx = i | ((r & 2) ? b0 : 0) | ((r & 1) ? b1 : 0);
        m(idx, j) = acc;
      }
    }
  }
}

void apply_gate_rows(Eigen::MatrixXcd& m, int n, const Gate& g) {
  if (g.qubits.size() == 1) {
    apply_1q_rows(m, n, g.qubits[0], u1(g.kind, g.angle));
  } else {
    apply_2q_rows(m, n, g.qubits[0], g.qubits[1], u2(g.kind, g.angle));
  }
}

}  // namespace

DensityState DensityState::zero_state(int n) {
  if (n < 1 || n > kDensityLimit) {
    throw capacity_error("density simulator limited to " + std::to_string(kDensityLimit) + " qubits");
  }
  DensityState s;
  s.n = n;
  const std::int64_t dim = std::int64_t{1} << n;
  s.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  s.matrix(0, 0) = 1.0;
  return s;
}

double DensityState::trace_deviation() const { return std::abs(matrix.trace().real() - 1.0) + std::abs(matrix.trace().imag()); }

double DensityState::hermiticity_deviation() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

Observable Observable::zero_projector() { return Observable{Kind::ZeroProjector, {}}; }

Observable Observable::pauli_sum(std::vector<std::pair<double, PauliString>> terms) {
  return Observable{Kind::PauliSum, std::move(terms)};
}

Observable Observable::tfim_energy(int n, double J, double h) {
  std::vector<std::pair<double, PauliString>> terms;
  for (int q = 0; q + 1 < n; ++q) {
    terms.emplace_back(-J, pauli_mul(PauliString::single(n, q, 'Z'), PauliString::single(n, q + 1, 'Z')));
  }
  for (int q = 0; q < n; ++q) terms.emplace_back(-h, PauliString::single(n, q, 'X'));
  return pauli_sum(std::move(terms));
}

double Observable::max_abs_value() const {
  if (kind == Kind::ZeroProjector) return 1.0;
  double s = 0.0;
  for (const auto& [c, p] : terms) s += std::abs(c);
  return s;
}

NoisyCircuit NoisyCircuit::noiseless(const CircuitIR& c) {
  NoisyCircuit nc;
  nc.n = c.n;
  nc.layers = layerize(c);
  nc.layer_noise.assign(nc.layers.size(), {});
  return nc;
}

NoisyCircuit NoisyCircuit::with_synth_noise(const CircuitIR& c, double p1, double p2, std::uint64_t seed) {
  NoisyCircuit nc;
  nc.n = c.n;
  nc.layers = layerize(c);
  nc.layer_noise.reserve(nc.layers.size());
  for (const auto& layer : nc.layers) nc.layer_noise.push_back(synth_layer_noise(layer, c.n, p1, p2, seed));
  return nc;
}

void apply_gate(DensityState& rho, const Gate& g) {
  if (g.qubits.size() == 1) {
    Eigen::Matrix2cd u = u1(g.kind, g.angle);
    apply_1q_rows(rho.matrix, rho.n, g.qubits[0], u);
    Eigen::MatrixXcd t = rho.matrix.transpose();
    apply_1q_rows(t, rho.n, g.qubits[0], u.conjugate());
    rho.matrix = t.transpose();
  } else {
    Eigen::Matrix4cd u = u2(g.kind, g.angle);
    apply_2q_rows(rho.matrix, rho.n, g.qubits[0], g.qubits[1], u);
    Eigen::MatrixXcd t = rho.matrix.transpose();
    apply_2q_rows(t, rho.n, g.qubits[0], g.qubits[1], u.conjugate());
    rho.matrix = t.transpose();
  }
}

void apply_pauli(DensityState& rho, const PauliString& p) {
  if (p.n() != rho.n) throw config_error("apply_pauli: width mismatch");
  if (p.is_identity()) return;
  auto m = masks_of(rho.n, p);
  const std::int64_t dim = std::int64_t{1} << rho.n;
  // (P rho P)[i, j] = (-1)^{parity(z & (i xor j))} rho[i^x, j^x]; the Y phases
  // cancel because P appears on both sides.
  if (m.x == 0) {
    for (std::int64_t j = 0; j < dim; ++j) {
      for (std::int64_t i = 0; i < dim; ++i) {
        if (parity(m.z & (i ^ j))) rho.matrix(i, j) = -rho.matrix(i, j);
      }
    }
    return;
  }
  for (std::int64_t j = 0; j < dim; ++j) {
    std::int64_t j2 = j ^ m.x;
    for (std::int64_t i = 0; i < dim; ++i) {
      std::int64_t i2 = i ^ m.x;
      if (i2 < i || (i2 == i && j2 < j)) continue;  // visit each pair once
      if (i == i2 && j == j2) continue;
      double s = parity(m.z & (i ^ j)) ? -1.0 : 1.0;
      complexd a = rho.matrix(i, j);
      rho.matrix(i, j) = s * rho.matrix(i2, j2);
      rho.matrix(i2, j2) = s * a;
    }
  }
}

void apply_pauli_channel(DensityState& rho, const PauliChannel& ch) {
  if (ch.n() != rho.n) throw config_error("apply_pauli_channel: width mismatch");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho.matrix.rows(), rho.matrix.cols());
  DensityState scratch;
  scratch.n = rho.n;
  for (const auto& [p, c] : ch.coeffs()) {
    if (c == 0.0) continue;
    if (p.is_identity()) {
      acc += c * rho.matrix;
      continue;
    }
    scratch.matrix = rho.matrix;
    apply_pauli(scratch, p);
    acc += c * scratch.matrix;
  }
  rho.matrix = std::move(acc);
}

void apply_gate(Eigen::VectorXcd& psi, int n, const Gate& g) {
  if (g.qubits.size() == 1) {
    apply_1q_rows(psi, n, g.qubits[0], u1(g.kind, g.angle));
  } else {
    apply_2q_rows(psi, n, g.qubits[0], g.qubits[1], u2(g.kind, g.angle));
  }
}

void apply_pauli(Eigen::VectorXcd& psi, int n, const PauliString& p) {
  if (p.is_identity()) return;
  auto m = masks_of(n, p);
  const std::int64_t dim = std::int64_t{1} << n;
  const complexd phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  complexd yphase = phases[m.y_count & 3];
  // P = i^{#Y} X^x Z^z with (X^x Z^z)|j> = (-1)^{parity(z & j)} |j ^ x>
  if (m.x == 0) {
    for (std::int64_t j = 0; j < dim; ++j) {
      psi[j] *= yphase * (parity(m.z & j) ? -1.0 : 1.0);
    }
    return;
  }
  for (std::int64_t j = 0; j < dim; ++j) {
    std::int64_t j2 = j ^ m.x;
    if (j2 < j) continue;
    complexd a = psi[j], b = psi[j2];
    psi[j2] = yphase * (parity(m.z & j) ? -a : a);
    psi[j] = yphase * (parity(m.z & j2) ? -b : b);
  }
}

namespace {

void apply_insertion(DensityState& rho, const PauliString& p, const SimOptions& options) {
  apply_pauli(rho, p);
  if (options.noisy_correction_p1 > 0.0) {
    for (int q : p.support()) {
      std::vector<std::pair<PauliString, double>> terms;
      for (char s : {'X', 'Y', 'Z'}) {
        terms.emplace_back(PauliString::single(rho.n, q, s), options.noisy_correction_p1 / 3.0);
      }
      apply_pauli_channel(rho, pl_to_pauli_channel(PauliLindbladModel(rho.n, std::move(terms))));
    }
  }
}

}  // namespace

DensityState simulate_density(const NoisyCircuit& nc, const std::vector<PauliInsertion>& insertions,
                              const SimOptions& options) {
  DensityState rho = DensityState::zero_state(nc.n);
  for (std::size_t li = 0; li < nc.layers.size(); ++li) {
    for (const auto& g : nc.layers[li].gates) apply_gate(rho, g);
    if (li < nc.layer_noise.size()) {
      for (const auto& m : nc.layer_noise[li]) {
        if (m.terms().empty()) continue;
        apply_pauli_channel(rho, pl_to_pauli_channel(m));
      }
    }
    for (const auto& ins : insertions) {
      if (ins.after_layer == static_cast<int>(li)) apply_insertion(rho, ins.pauli, options);
    }
    assert(rho.trace_deviation() < 1e-10);
    assert(rho.hermiticity_deviation() < 1e-10);
  }
  return rho;
}

Eigen::VectorXcd simulate_statevector(const CircuitIR& c) {
  if (c.n > kTrajectoryLimit) throw capacity_error("statevector limited to 20 qubits");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(std::int64_t{1} << c.n);
  psi[0] = 1.0;
  for (const auto& g : c.gates) apply_gate(psi, c.n, g);
  return psi;
}

namespace {

complexd pauli_trace(const DensityState& rho, const PauliString& p) {
  auto m = masks_of(rho.n, p);
  const std::int64_t dim = std::int64_t{1} << rho.n;
  const complexd phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  complexd acc = 0;
  for (std::int64_t j = 0; j < dim; ++j) {
    complexd v = rho.matrix(j, j ^ m.x);
    acc += parity(m.z & j) ? -v : v;
  }
  return phases[m.y_count & 3] * acc;
}

complexd pauli_expect(const Eigen::VectorXcd& psi, int n, const PauliString& p) {
  auto m = masks_of(n, p);
  const std::int64_t dim = std::int64_t{1} << n;
  const complexd phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  complexd acc = 0;
  for (std::int64_t j = 0; j < dim; ++j) {
    complexd v = std::conj(psi[j ^ m.x]) * psi[j];
    acc += parity(m.z & j) ? -v : v;
  }
  return phases[m.y_count & 3] * acc;
}

}  // namespace

double expectation(const DensityState& rho, const Observable& obs) {
  if (obs.kind == Observable::Kind::ZeroProjector) return rho.matrix(0, 0).real();
  double acc = 0.0;
  for (const auto& [c, p] : obs.terms) {
    if (p.n() != rho.n) throw config_error("observable width mismatch");
    acc += c * pauli_trace(rho, p).real();
  }
  return acc;
}

double expectation(const Eigen::VectorXcd& psi, int n, const Observable& obs) {
  if (obs.kind == Observable::Kind::ZeroProjector) return std::norm(psi[0]);
  double acc = 0.0;
  for (const auto& [c, p] : obs.terms) acc += c * pauli_expect(psi, n, p).real();
  return acc;
}

namespace {

// Greedy qubit-wise-commuting grouping: a term joins a group when every qubit
// where both are non-identity carries the same symbol.
struct MeasGroup {
  std::vector<int> basis;  // per qubit: 0 = free/Z, 1 = X, 2 = Y, 3 = Z
  std::vector<std::size_t> term_indices;
};

std::vector<MeasGroup> group_terms(int n, const Observable& obs) {
  std::vector<MeasGroup> groups;
  for (std::size_t t = 0; t < obs.terms.size(); ++t) {
    const auto& p = obs.terms[t].second;
    bool placed = false;
    for (auto& g : groups) {
      bool ok = true;
      for (int q = 0; q < n && ok; ++q) {
        int d = p.digit(q);
        if (d != 0 && g.basis[static_cast<std::size_t>(q)] != 0 &&
            g.basis[static_cast<std::size_t>(q)] != d) {
          ok = false;
        }
      }
      if (ok) {
        for (int q = 0; q < n; ++q) {
          int d = p.digit(q);
          if (d != 0) g.basis[static_cast<std::size_t>(q)] = d;
        }
        g.term_indices.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) {
      MeasGroup g;
      g.basis.assign(static_cast<std::size_t>(n), 0);
      for (int q = 0; q < n; ++q) {
        int d = p.digit(q);
        if (d != 0) g.basis[static_cast<std::size_t>(q)] = d;
      }
      g.term_indices.push_back(t);
      groups.push_back(std::move(g));
    }
  }
  return groups;
}

}  // namespace

ShotEstimate sample_shots(const DensityState& rho, const Observable& obs, int shots, std::uint64_t seed) {
  if (shots < 1) throw config_error("sample_shots: shots must be >= 1");
  Rng rng(seed);
  const std::int64_t dim = std::int64_t{1} << rho.n;

  if (obs.kind == Observable::Kind::ZeroProjector) {
    double p0 = std::clamp(rho.matrix(0, 0).real(), 0.0, 1.0);
    std::int64_t hits = 0;
    for (int s = 0; s < shots; ++s) hits += rng.next_double() < p0 ? 1 : 0;
    double mean = static_cast<double>(hits) / shots;
    double var = mean * (1.0 - mean) / std::max(1, shots - 1);
    return ShotEstimate{mean, std::sqrt(var)};
  }

  auto groups = group_terms(rho.n, obs);
  int per_group = shots / std::max<std::size_t>(1, groups.size());
  int extra = shots - per_group * static_cast<int>(groups.size());
  KahanSum total;
  double var_acc = 0.0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    int s_count = per_group + (static_cast<int>(gi) < extra ? 1 : 0);
    if (s_count == 0) s_count = 1;
    // rotate a copy into the measurement basis
    DensityState rot{rho.n, rho.matrix};
    for (int q = 0; q < rho.n; ++q) {
      int b = g.basis[static_cast<std::size_t>(q)];
      if (b == 1) {
        apply_gate(rot, Gate::g1(GateKind::H, q));
      } else if (b == 2) {
        // S^dag then H maps Y eigenstates onto the computational basis
        apply_gate(rot, Gate::g1(GateKind::Z, q));
        apply_gate(rot, Gate::g1(GateKind::S, q));
        apply_gate(rot, Gate::g1(GateKind::H, q));
      }
    }
    std::vector<double> cdf(static_cast<std::size_t>(dim));
    double run = 0.0;
    for (std::int64_t i = 0; i < dim; ++i) {
      run += std::max(0.0, rot.matrix(i, i).real());
      cdf[static_cast<std::size_t>(i)] = run;
    }
    double norm = run;
    // accumulate per-term +-1 means over the drawn bitstrings
    std::vector<KahanSum> tsum(g.term_indices.size());
    std::vector<double> tsq(g.term_indices.size(), 0.0);
    for (int s = 0; s < s_count; ++s) {
      double r = rng.next_double() * norm;
      auto it = std::lower_bound(cdf.begin(), cdf.end(), r);
      std::int64_t outcome = it == cdf.end() ? dim - 1 : static_cast<std::int64_t>(it - cdf.begin());
      for (std::size_t ti = 0; ti < g.term_indices.size(); ++ti) {
        const auto& p = obs.terms[g.term_indices[ti]].second;
        std::int64_t support_bits = 0;
        for (int q : p.support()) support_bits |= qubit_bit(rho.n, q);
        double v = parity(outcome & support_bits) ? -1.0 : 1.0;
        tsum[ti].add(v);
        tsq[ti] += 1.0;
      }
    }
    for (std::size_t ti = 0; ti < g.term_indices.size(); ++ti) {
      double coeff = obs.terms[g.term_indices[ti]].first;
      double mean = tsum[ti].value() / s_count;
      total.add(coeff * mean);
      double var = (1.0 - mean * mean) / std::max(1, s_count - 1);
      var_acc += coeff * coeff * std::max(0.0, var);
    }
  }
  return ShotEstimate{total.value(), std::sqrt(var_acc)};
}

ShotEstimate trajectory_expectation(const NoisyCircuit& nc, const Observable& obs, int trajectories,
                                    std::uint64_t seed, const std::vector<PauliInsertion>& insertions,
                                    const SimOptions& options) {
  if (nc.n > kTrajectoryLimit) throw capacity_error("trajectory simulator limited to 20 qubits");
  if (trajectories < 1) throw config_error("trajectory_expectation: need >= 1 trajectory");
  Rng base(seed);
  KahanSum sum;
  double sq = 0.0;
  const std::int64_t dim = std::int64_t{1} << nc.n;
  for (int t = 0; t < trajectories; ++t) {
    Rng rng = base.substream(static_cast<std::uint64_t>(t));
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[0] = 1.0;
    for (std::size_t li = 0; li < nc.layers.size(); ++li) {
      for (const auto& g : nc.layers[li].gates) apply_gate(psi, nc.n, g);
      if (li < nc.layer_noise.size()) {
        for (const auto& m : nc.layer_noise[li]) {
          if (m.terms().empty()) continue;
          double r = rng.next_double();
          double acc = 0.0;
          // identity with probability 1 - total rate, else the matching term
          const PauliString* chosen = nullptr;
          for (const auto& [p, rate] : m.terms()) {
            acc += rate;
            if (r < acc) {
              chosen = &p;
              break;
            }
          }
          if (chosen != nullptr) apply_pauli(psi, nc.n, *chosen);
        }
      }
      for (const auto& ins : insertions) {
        if (ins.after_layer != static_cast<int>(li)) continue;
        apply_pauli(psi, nc.n, ins.pauli);
        if (options.noisy_correction_p1 > 0.0) {
          for (int q : ins.pauli.support()) {
            double r = rng.next_double();
            double step = options.noisy_correction_p1 / 3.0;
            if (r < step) {
              apply_pauli(psi, nc.n, PauliString::single(nc.n, q, 'X'));
            } else if (r < 2 * step) {
              apply_pauli(psi, nc.n, PauliString::single(nc.n, q, 'Y'));
            } else if (r < 3 * step) {
              apply_pauli(psi, nc.n, PauliString::single(nc.n, q, 'Z'));
            }
          }
        }
      }
    }
    double v = expectation(psi, nc.n, obs);
    sum.add(v);
    sq += v * v;
  }
  double mean = sum.value() / trajectories;
  double var = (sq / trajectories - mean * mean) / std::max(1, trajectories - 1);
  return ShotEstimate{mean, std::sqrt(std::max(0.0, var))};
}

namespace {

// H|v> for the open-chain TFIM without materializing H.
Eigen::VectorXd tfim_matvec(int n, double J, double h, const Eigen::VectorXd& v) {
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    double diag = 0.0;
    for (int q = 0; q + 1 < n; ++q) {
      bool za = (i & qubit_bit(n, q)) != 0;
      bool zb = (i & qubit_bit(n, q + 1)) != 0;
      diag += (za == zb) ? -J : J;
    }
    out[i] += diag * v[i];
    for (int q = 0; q < n; ++q) out[i ^ qubit_bit(n, q)] -= h * v[i];
  }
  return out;
}

}  // namespace

double tfim_ground_energy_lanczos(int n, double J, double h) {
  const std::int64_t dim = std::int64_t{1} << n;
  int m = std::min<std::int64_t>(dim, 120);
  Rng rng(12345);
  Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(dim, [&](Eigen::Index) { return rng.next_double() - 0.5; });
  v.normalize();
  std::vector<Eigen::VectorXd> basis;
  Eigen::VectorXd alpha(m), beta(m);
  alpha.setZero();
  beta.setZero();
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(dim);
  double prev_beta = 0.0;
  int built = 0;
  for (int k = 0; k < m; ++k) {
    basis.push_back(v);
    Eigen::VectorXd w = tfim_matvec(n, J, h, v);
    alpha[k] = v.dot(w);
    w -= alpha[k] * v + prev_beta * prev;
    for (const auto& b : basis) w -= b.dot(w) * b;  // full reorthogonalization
    double nb = w.norm();
    built = k + 1;
    if (nb < 1e-13) break;
    beta[k] = nb;
    prev = v;
    prev_beta = nb;
    v = w / nb;
  }
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(built, built);
  for (int k = 0; k < built; ++k) {
    tri(k, k) = alpha[k];
    if (k + 1 < built) tri(k, k + 1) = tri(k + 1, k) = beta[k];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
  return es.eigenvalues()(0);
}

TfimReference tfim_reference(int n, double J, double h) {
  if (n < 1 || n > 12) throw capacity_error("tfim_reference limited to 12 qubits");
  double e0;
  if (n == 1) {
    e0 = -h;  // single spin in a transverse field; no bond term contributes
  } else if (n <= 10) {
    const std::int64_t dim = std::int64_t{1} << n;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (std::int64_t i = 0; i < dim; ++i) {
      for (int q = 0; q + 1 < n; ++q) {
        bool za = (i & qubit_bit(n, q)) != 0;
        bool zb = (i & qubit_bit(n, q + 1)) != 0;
        H(i, i) += (za == zb) ? -J : J;
      }
      for (int q = 0; q < n; ++q) H(i ^ qubit_bit(n, q), i) -= h;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    e0 = es.eigenvalues()(0);
  } else {
    e0 = tfim_ground_energy_lanczos(n, J, h);
  }
  return TfimReference{e0, e0 / n};
}

VqeResult classical_vqe(int n, int depth, const VqeConfig& config) {
  if (n > kDensityLimit) throw capacity_error("classical_vqe limited to 10 qubits");
  Observable ham = Observable::tfim_energy(n, config.J, config.h);
  int npar = tfim_param_count(n, depth);

  auto energy = [&](const std::vector<double>& params) {
    auto psi = simulate_statevector(gen_tfim_ansatz(n, depth, params));
    return expectation(psi, n, ham);
  };

  Rng rng(config.seed);
  std::vector<double> best_params(static_cast<std::size_t>(npar), 0.0);
  // structured init: |+>^n preparation then small entangler/field angles
  for (int q = 0; q < n; ++q) best_params[static_cast<std::size_t>(q)] = 1.5707963267948966;
  for (int i = n; i < npar; ++i) best_params[static_cast<std::size_t>(i)] = -0.4;
  double best_energy = energy(best_params);
  if (config.budget == 0) {
    return VqeResult{best_params, best_energy, best_energy / n};
  }

  constexpr double kHalfPi = 1.5707963267948966;
  for (int restart = 0; restart < std::max(1, config.restarts); ++restart) {
    std::vector<double> params = best_params;
    if (restart > 0) {
      for (auto& p : params) p += 0.2 * rng.next_normal();
    }
    std::vector<double> m1(static_cast<std::size_t>(npar), 0.0), m2(static_cast<std::size_t>(npar), 0.0);
    double lr = config.learning_rate;
    std::vector<double> run_best = params;
    double run_best_e = energy(params);
    for (int it = 1; it <= config.budget; ++it) {
      std::vector<double> grad(static_cast<std::size_t>(npar));
      for (int k = 0; k < npar; ++k) {
        double saved = params[static_cast<std::size_t>(k)];
        params[static_cast<std::size_t>(k)] = saved + kHalfPi;
        double ep = energy(params);
        params[static_cast<std::size_t>(k)] = saved - kHalfPi;
        double em = energy(params);
        params[static_cast<std::size_t>(k)] = saved;
        grad[static_cast<std::size_t>(k)] = 0.5 * (ep - em);
      }
      double step_lr = lr / (1.0 + 2.0 * static_cast<double>(it) / config.budget);
      for (int k = 0; k < npar; ++k) {
        auto ku = static_cast<std::size_t>(k);
        m1[ku] = 0.9 * m1[ku] + 0.1 * grad[ku];
        m2[ku] = 0.999 * m2[ku] + 0.001 * grad[ku] * grad[ku];
        double c1 = m1[ku] / (1.0 - std::pow(0.9, it));
        double c2 = m2[ku] / (1.0 - std::pow(0.999, it));
        params[ku] -= step_lr * c1 / (std::sqrt(c2) + 1e-8);
      }
      if (it % 25 == 0 || it == config.budget) {
        double e = energy(params);
        if (e < run_best_e) {
          run_best_e = e;
          run_best = params;
        }
      }
    }
    if (run_best_e < best_energy) {
      best_energy = run_best_e;
      best_params = run_best;
    }
  }
  return VqeResult{best_params, best_energy, best_energy / n};
}

double unitary_distance(const CircuitIR& a, const CircuitIR& b) {
  if (a.n != b.n) throw config_error("unitary_distance: width mismatch");
  if (a.n > 4) throw capacity_error("unitary_distance limited to 4 qubits");
  const std::int64_t dim = std::int64_t{1} << a.n;
  Eigen::MatrixXcd ua = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd ub = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : a.gates) apply_gate_rows(ua, a.n, g);
  for (const auto& g : b.gates) apply_gate_rows(ub, b.n, g);
  double overlap = std::abs((ua.adjoint() * ub).trace()) / static_cast<double>(dim);
  return std::abs(1.0 - overlap);
}

}  // namespace mosaic
