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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mosaic/circuit.hpp"
#include "mosaic/pauli.hpp"

namespace mosaic {

// Pauli-Lindblad layer noise model: local Pauli generators P_k with rates
// lambda_k >= 0. The first-order reading treats each rate as the occurrence
// probability of its Pauli, so sum(lambda_k) < 1 is required at construction.
class PauliLindbladModel {
 public:
  PauliLindbladModel(int n, std::vector<std::pair<PauliString, double>> terms);

  int n() const { return n_; }
  const std::vector<std::pair<PauliString, double>>& terms() const { return terms_; }
  const std::vector<int>& support() const { return support_; }
  double total_rate() const { return total_rate_; }

  // w_k = (1 + exp(-2 lambda_k)) / 2, the no-fire weight of the exact
  // product-form channel.
  static double fire_weight(double rate) { return 0.5 * (1.0 + std::exp(-2.0 * rate)); }

 private:
  int n_ = 0;
  std::vector<std::pair<PauliString, double>> terms_;
  std::vector<int> support_;
  double total_rate_ = 0.0;
};

// Diagonal of a Pauli channel's transfer matrix, canonical Pauli order.
struct PtmEigenvalues {
  int n = 0;
  Eigen::VectorXd values;
};

// rho -> sum_a c_a P_a rho P_a with sum c_a = 1. Physical channels have all
// c_a >= 0; quasi-probability channels may carry negative coefficients.
// Entries are kept sorted by canonical Pauli order so iteration, composition
// and serialization are reproducible.
class PauliChannel {
 public:
  explicit PauliChannel(int n) : n_(n) {}
  PauliChannel(int n, std::vector<std::pair<PauliString, double>> coeffs);

  static PauliChannel identity(int n);

  int n() const { return n_; }
  const std::vector<std::pair<PauliString, double>>& coeffs() const { return coeffs_; }
  double coeff(const PauliString& p) const;  // 0 when absent
  double coeff_sum() const;
  bool is_physical(double tol = 1e-12) const;

  // Drops entries with |c| <= tol; keeps the identity entry.
  PauliChannel pruned(double tol = 1e-15) const;

 private:
  int n_ = 0;
  std::vector<std::pair<PauliString, double>> coeffs_;
};

// First-order channel: c_{P_k} = lambda_k, c_I = 1 - sum lambda_k.
PauliChannel pl_to_pauli_channel(const PauliLindbladModel& m);

// Exact product-form channel of the Lindblad generator: the composition of
// two-outcome channels {w_k, (1-w_k) P_k}. Cross-check path for the
// first-order reading.
PauliChannel pl_to_pauli_channel_exact(const PauliLindbladModel& m);

// Forward: eigenvalue_j = sum_i chi(P_j, P_i) c_i. Backward is the same
// transform scaled by 4^-n. Dense; requires n <= kDenseLimit.
PtmEigenvalues channel_to_ptm(const PauliChannel& ch);
PauliChannel ptm_to_channel(const PtmEigenvalues& e);

// Coefficient convolution over the phase-free Pauli product; equals the
// entrywise product in PTM view. Works at any width (sparse).
PauliChannel compose_channels(const PauliChannel& a, const PauliChannel& b);

// Relabels every Pauli by u P u^dagger (phase discarded) for a Clifford gate
// or gate list; coefficients carry over, so gamma is preserved exactly.
PauliString conjugate_pauli_by_clifford(const PauliString& p, const Gate& g);
PauliChannel conjugate_by_clifford(const PauliChannel& ch, const Gate& g);
PauliChannel conjugate_by_clifford(const PauliChannel& ch, const std::vector<Gate>& gates);

// sum |c_a|; equals 1 for physical channels.
double gamma_of(const PauliChannel& ch);

// {I: 1-p, X: p/3, Y: p/3, Z: p/3}; PTM eigenvalues (1, 1-4p/3, ...).
PauliChannel depolarizing_channel(double p);

// Synthetic per-gate noise: {X,Y,Z} at p1/3 on each single-qubit gate site,
// {XX,ZZ,XY} at p2/3 on each two-qubit gate pair (symbols positional on the
// gate's qubit order). One model per gate, in layer gate order.
std::vector<PauliLindbladModel> synth_layer_noise(const Layer& layer, int n, double p1, double p2,
                                                  std::uint64_t seed);

// Default single-qubit strength: one order of magnitude below p2.
inline double default_p1(double p2) { return p2 / 10.0; }

}  // namespace mosaic
