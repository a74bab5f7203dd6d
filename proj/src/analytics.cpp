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

#include "mosaic/analytics.hpp"

#include <charconv>
#include <cmath>

#include "mosaic/errors.hpp"
#include "mosaic/learner.hpp"
#include "mosaic/partition.hpp"
#include "mosaic/pec.hpp"
#include "mosaic/rng.hpp"

namespace mosaic {

GammaValue gamma_depolarizing(double p) {
  if (p < 0.0 || p >= 0.5) throw config_error("gamma_depolarizing: p must be in [0, 0.5)");
  GammaValue g;
  g.exact = (1.0 + 2.0 * p / 3.0) / (1.0 - 4.0 * p / 3.0);
  g.series = 1.0 + 2.0 * p + (8.0 / 3.0) * p * p;
  return g;
}

EtaValue eta_improvement(int depth, double p) {
  if (depth < 1) throw config_error("eta_improvement: depth must be >= 1");
  GammaValue layer = gamma_depolarizing(p);
  double f = 1.0 - 4.0 * p / 3.0;
  double gamma_block = (3.0 * std::pow(f, -depth) - 1.0) / 2.0;
  EtaValue e;
  e.exact = std::pow(layer.exact, depth) / gamma_block;
  e.series = 1.0 + static_cast<double>(depth) * (depth - 1) * p * p / 3.0;
  return e;
}

namespace {

// Closed-form overheads for one qubit column of L depolarizing layers cut
// into blocks of w layers.
void depolarizing_column(double p, int depth, int grain, double* gamma_pec, double* gamma_mosaic) {
  GammaValue layer = gamma_depolarizing(p);
  *gamma_pec = std::pow(layer.exact, depth);
  double f = 1.0 - 4.0 * p / 3.0;
  double g = 1.0;
  int remaining = depth;
  while (remaining > 0) {
    int w = std::min(grain, remaining);
    g *= (3.0 * std::pow(f, -w) - 1.0) / 2.0;
    remaining -= w;
  }
  *gamma_mosaic = g;
}

void correlated_overheads(int n, int depth, double p2, int grain, std::uint64_t seed,
                          double* gamma_pec, double* gamma_mosaic) {
  CircuitIR c = gen_random_circuit(n, depth, seed);
  FitConfig fit_cfg;
  auto run = [&](int w) {
    PartitionOptions opt;
    opt.grain = w;
    PartitionPlan plan = partition_with_synth_noise(c, default_p1(p2), p2, seed, opt);
    double gamma = 1.0;
    for (const auto& b : plan.blocks) {
      for (const auto& sf : fit_block_channels(b, fit_cfg)) {
        gamma *= invert_channel(sf.fit.channel).gamma();
      }
    }
    return gamma;
  };
  *gamma_pec = run(1);
  *gamma_mosaic = run(grain);
}

}  // namespace

std::vector<OverheadRow> overhead_scan(const ScanSpec& spec) {
  if (spec.values.empty()) throw config_error("overhead_scan: no axis values");
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    if (spec.values[i] <= 0.0) throw config_error("overhead_scan: axis values must be positive");
    if (i > 0 && spec.values[i] < spec.values[i - 1]) {
      throw config_error("overhead_scan: axis values must be sorted");
    }
  }
  std::vector<OverheadRow> rows;
  for (double v : spec.values) {
    int n = spec.system_size;
    int depth = spec.depth;
    double p = spec.noise;
    switch (spec.axis) {
      case ScanAxis::SystemSize: n = static_cast<int>(v); break;
      case ScanAxis::Depth: depth = static_cast<int>(v); break;
      case ScanAxis::NoiseStrength: p = v; break;
    }
    OverheadRow row;
    row.axis_value = v;
    if (spec.family == ScanFamily::Depolarizing) {
      // N independent qubit columns with identical per-qubit noise
      double col_pec, col_mosaic;
      depolarizing_column(p, depth, spec.grain, &col_pec, &col_mosaic);
      row.gamma_pec = std::pow(col_pec, n);
      row.gamma_mosaic = std::pow(col_mosaic, n);
    } else {
      correlated_overheads(n, depth, p, spec.grain, spec.seed, &row.gamma_pec, &row.gamma_mosaic);
    }
    row.ratio = row.gamma_pec / row.gamma_mosaic;
    rows.push_back(row);
  }
  return rows;
}

namespace {
std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}
}  // namespace

std::string scan_to_csv(const std::vector<OverheadRow>& rows) {
  std::string out = "axis,gamma_pec,gamma_mosaic,ratio\n";
  for (const auto& r : rows) {
    out += fmt(r.axis_value) + "," + fmt(r.gamma_pec) + "," + fmt(r.gamma_mosaic) + "," + fmt(r.ratio) + "\n";
  }
  return out;
}

namespace {

// Random trace-preserving coefficient vector with random signs.
PauliChannel random_signed_channel(Rng& rng, int n) {
  Eigen::Index dim = Eigen::Index{1} << (2 * n);
  std::vector<std::pair<PauliString, double>> coeffs;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    double v = rng.next_double() * 0.3;
    if (i > 0 && rng.next_double() < 0.5) v = -v;
    coeffs.emplace_back(pauli_from_index(n, static_cast<std::uint64_t>(i)), v);
    sum += v;
  }
  // renormalize onto the identity entry so the trace-preserving sum is one
  coeffs[0].second += 1.0 - sum;
  return PauliChannel(n, std::move(coeffs));
}

// Inverse-like vector: positive identity weight, negative mass on every other
// Pauli. Composing two of these forces sign cancellation on non-identity
// coefficients, the mechanism behind the strict overhead reduction.
PauliChannel random_inverse_like(Rng& rng, int n) {
  Eigen::Index dim = Eigen::Index{1} << (2 * n);
  std::vector<std::pair<PauliString, double>> coeffs;
  double neg = 0.0;
  for (Eigen::Index i = 1; i < dim; ++i) {
    double v = -(0.002 + 0.25 * rng.next_double() / static_cast<double>(dim));
    coeffs.emplace_back(pauli_from_index(n, static_cast<std::uint64_t>(i)), v);
    neg += v;
  }
  coeffs.emplace_back(PauliString::identity(n), 1.0 - neg);
  return PauliChannel(n, std::move(coeffs));
}

PauliChannel random_physical_channel(Rng& rng, int n, double strength = 0.4) {
  Eigen::Index dim = Eigen::Index{1} << (2 * n);
  std::vector<std::pair<PauliString, double>> coeffs;
  double sum = 0.0;
  for (Eigen::Index i = 1; i < dim; ++i) {
    double v = rng.next_double();
    coeffs.emplace_back(pauli_from_index(n, static_cast<std::uint64_t>(i)), v);
    sum += v;
  }
  double mass = strength * rng.next_double();
  for (auto& [p, v] : coeffs) v *= mass / sum;
  coeffs.emplace_back(PauliString::identity(n), 1.0 - mass);
  return PauliChannel(n, std::move(coeffs));
}

Gate random_clifford_gate(Rng& rng, int n) {
  constexpr GateKind kinds1[] = {GateKind::H, GateKind::S, GateKind::X, GateKind::Y, GateKind::Z};
  if (n >= 2 && rng.next_double() < 0.4) {
    int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    int b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    return Gate::g2(rng.next_double() < 0.5 ? GateKind::CX : GateKind::CZ, a, b);
  }
  return Gate::g1(kinds1[rng.next_below(5)], static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))));
}

}  // namespace

LemmaReport lemma_suite(std::uint64_t seed, int trials) {
  if (trials < 1) throw config_error("lemma_suite: trials must be >= 1");
  Rng rng(seed);
  LemmaReport report;
  report.trials = trials;
  constexpr double kTol = 1e-12;

  for (int t = 0; t < trials; ++t) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    PauliChannel a = random_signed_channel(rng, n);
    PauliChannel b = random_signed_channel(rng, n);
    double lhs = gamma_of(compose_channels(a, b));
    double rhs = gamma_of(a) * gamma_of(b);
    if (lhs > rhs + kTol) {
      ++report.submultiplicativity_violations;
      report.violations.push_back("submultiplicativity: trial " + std::to_string(t) + " gamma(AoB)=" +
                                  std::to_string(lhs) + " > " + std::to_string(rhs));
    }

    PauliChannel phys = random_physical_channel(rng, n);
    double before = gamma_of(phys);
    PauliChannel conj = phys;
    int gates = 1 + static_cast<int>(rng.next_below(6));
    for (int g = 0; g < gates; ++g) conj = conjugate_by_clifford(conj, random_clifford_gate(rng, n));
    double after = gamma_of(conj);
    if (std::abs(before - after) > kTol) {
      ++report.unitary_invariance_violations;
      report.violations.push_back("unitary invariance: trial " + std::to_string(t) + " gamma " +
                                  std::to_string(before) + " -> " + std::to_string(after));
    }

    // strictness: inverse-like mixed-sign pairs on a shared support must
    // compose with strictly smaller gamma than the product
    PauliChannel qa = random_inverse_like(rng, n);
    PauliChannel qb = random_inverse_like(rng, n);
    ++report.strictness_checks;
    double s_lhs = gamma_of(compose_channels(qa, qb));
    double s_rhs = gamma_of(qa) * gamma_of(qb);
    if (!(s_lhs < s_rhs - kTol)) {
      ++report.strictness_failures;
      report.violations.push_back("strictness: trial " + std::to_string(t) + " gamma(AoB)=" +
                                  std::to_string(s_lhs) + " !< " + std::to_string(s_rhs));
    }
  }
  return report;
}

}  // namespace mosaic
