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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mosaic/channel.hpp"
#include "mosaic/circuit.hpp"
#include "mosaic/pauli.hpp"

namespace mosaic {

inline constexpr int kDensityLimit = 10;     // 2^n x 2^n dense density matrices
inline constexpr int kTrajectoryLimit = 20;  // statevector trajectories

// 2^n x 2^n Hermitian, trace one. Qubit 0 maps to the most significant bit of
// the basis index, matching the canonical Pauli order and text form.
struct DensityState {
  int n = 0;
  Eigen::MatrixXcd matrix;

  static DensityState zero_state(int n);
  double trace_deviation() const;
  double hermiticity_deviation() const;
};

// Hermitian observable: a real-coefficient Pauli sum, or the projector onto
// the all-zero computational state (rho_00).
struct Observable {
  enum class Kind { PauliSum, ZeroProjector };
  Kind kind = Kind::ZeroProjector;
  std::vector<std::pair<double, PauliString>> terms;  // PauliSum only

  static Observable zero_projector();
  static Observable pauli_sum(std::vector<std::pair<double, PauliString>> terms);
  // H = -J sum Z_i Z_{i+1} - h sum X_i on the open chain.
  static Observable tfim_energy(int n, double J, double h);
  double max_abs_value() const;  // bound on |<obs>|; sum |coeff| or 1
};

// A Pauli inserted right after layer `after_layer` finishes (gates + noise).
struct PauliInsertion {
  int after_layer = 0;
  PauliString pauli;
};

// Layered circuit plus per-layer noise; the unit every simulator entry point
// consumes. `layer_noise` may be empty for a noiseless run.
struct NoisyCircuit {
  int n = 0;
  std::vector<Layer> layers;
  std::vector<std::vector<PauliLindbladModel>> layer_noise;

  static NoisyCircuit noiseless(const CircuitIR& c);
  static NoisyCircuit with_synth_noise(const CircuitIR& c, double p1, double p2, std::uint64_t seed);
};

struct SimOptions {
  // When >= 0, each non-identity single-qubit site of an inserted correction
  // is followed by {X,Y,Z} noise at this strength / 3.
  double noisy_correction_p1 = -1.0;
};

// In-place primitives.
void apply_gate(DensityState& rho, const Gate& g);
void apply_pauli(DensityState& rho, const PauliString& p);
// Works for quasi-probability channels too (signed coefficients).
void apply_pauli_channel(DensityState& rho, const PauliChannel& ch);
void apply_gate(Eigen::VectorXcd& psi, int n, const Gate& g);
void apply_pauli(Eigen::VectorXcd& psi, int n, const PauliString& p);

// Layer-by-layer evolution from |0...0>: gates, then the layer's noise
// channels, then any insertions registered after that layer.
DensityState simulate_density(const NoisyCircuit& nc, const std::vector<PauliInsertion>& insertions = {},
                              const SimOptions& options = {});

Eigen::VectorXcd simulate_statevector(const CircuitIR& c);

double expectation(const DensityState& rho, const Observable& obs);
double expectation(const Eigen::VectorXcd& psi, int n, const Observable& obs);

struct ShotEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Finite-shot estimate: terms are grouped qubit-wise-commuting, each group
// measured in its product basis, shots split evenly across groups.
ShotEstimate sample_shots(const DensityState& rho, const Observable& obs, int shots, std::uint64_t seed);

// Stochastic Pauli-trajectory estimate of the density-matrix expectation:
// per trajectory, sample one Pauli per noise model and evolve a statevector;
// each trajectory contributes its exact observable value.
ShotEstimate trajectory_expectation(const NoisyCircuit& nc, const Observable& obs, int trajectories,
                                    std::uint64_t seed, const std::vector<PauliInsertion>& insertions = {},
                                    const SimOptions& options = {});

struct TfimReference {
  double ground_energy = 0.0;
  double energy_per_site = 0.0;
};

// Lowest eigenvalue of the open-chain TFIM Hamiltonian; dense diagonalization
// up to 10 qubits, Lanczos above (n <= 12).
TfimReference tfim_reference(int n, double J, double h);
// Independent Lanczos path, used to cross-check the dense result.
double tfim_ground_energy_lanczos(int n, double J, double h);

struct VqeConfig {
  int budget = 1200;       // Adam iterations per restart; 0 returns the init
  int restarts = 4;
  double learning_rate = 0.1;
  std::uint64_t seed = 1;
  double J = 1.0;
  double h = 1.0;
};

struct VqeResult {
  std::vector<double> params;
  double energy = 0.0;
  double energy_per_site = 0.0;
};

// Classical optimization of the noiseless TFIM ansatz energy with Adam and
// parameter-shift gradients; deterministic given the seed.
VqeResult classical_vqe(int n, int depth, const VqeConfig& config = {});

// 1 - |Tr(U1^dag U2)| / 2^n: zero iff the circuits agree up to global phase.
// Dense unitary comparison, n <= 4 scale.
double unitary_distance(const CircuitIR& a, const CircuitIR& b);

}  // namespace mosaic
