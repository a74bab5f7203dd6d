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
#include <vector>

#include "mosaic/channel.hpp"

namespace mosaic {

struct GammaValue {
  double exact = 0.0;   // (1 + 2p/3) / (1 - 4p/3) from PTM inversion
  double series = 0.0;  // 1 + 2p + (8/3) p^2
};

// Overhead of inverting one single-qubit depolarizing layer.
GammaValue gamma_depolarizing(double p);

struct EtaValue {
  double exact = 0.0;   // gamma_layer^L / gamma_block(L)
  double series = 0.0;  // 1 + L(L-1) p^2 / 3
};

// Blockwise improvement factor for L identical depolarizing layers:
// gamma_block comes from inverting the L-fold composed channel,
// (3 f^-L - 1)/2 with f = 1 - 4p/3.
EtaValue eta_improvement(int depth, double p);

enum class ScanAxis { SystemSize, Depth, NoiseStrength };
enum class ScanFamily { Depolarizing, Correlated };

struct ScanSpec {
  ScanAxis axis = ScanAxis::NoiseStrength;
  std::vector<double> values;  // axis values, positive and sorted
  // fixed parameters (the swept one is ignored)
  int system_size = 4;
  int depth = 8;
  double noise = 0.02;
  int grain = 5;
  ScanFamily family = ScanFamily::Depolarizing;
  std::uint64_t seed = 11;  // circuit seed for the correlated family
};

struct OverheadRow {
  double axis_value = 0.0;
  double gamma_pec = 0.0;
  double gamma_mosaic = 0.0;
  double ratio = 0.0;
};

// gamma_PEC = (gamma_layer^L)^{m} versus gamma_MoSAIC = gamma_block^{m}.
// Depolarizing family: closed form, N independent qubit columns. Correlated
// family: random circuits with the per-gate noise model, overheads computed
// through the partition/fit/invert pipeline (no sampling).
std::vector<OverheadRow> overhead_scan(const ScanSpec& spec);

std::string scan_to_csv(const std::vector<OverheadRow>& rows);

struct LemmaReport {
  int trials = 0;
  int submultiplicativity_violations = 0;
  int unitary_invariance_violations = 0;
  int strictness_checks = 0;
  int strictness_failures = 0;
  std::vector<std::string> violations;  // inputs of any failed check
  bool ok() const { return violations.empty(); }
};

// Randomized verification of the overhead calculus: gamma(A o B) <=
// gamma(A) gamma(B) on signed coefficient vectors, gamma invariance under
// random Clifford conjugation, and strict submultiplicativity on constructed
// mixed-sign pairs.
LemmaReport lemma_suite(std::uint64_t seed, int trials);

}  // namespace mosaic
