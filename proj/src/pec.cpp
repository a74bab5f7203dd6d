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

#include "mosaic/pec.hpp"

#include <algorithm>
#include <cmath>

#include "mosaic/errors.hpp"
#include "mosaic/rng.hpp"
#include "mosaic/superop.hpp"

namespace mosaic {

QuasiProbability::QuasiProbability(int n, Eigen::VectorXd etas) : n_(n), etas_(std::move(etas)) {
  if (etas_.size() != (Eigen::Index{1} << (2 * n))) throw internal_error("quasi-probability length mismatch");
  gamma_ = etas_.cwiseAbs().sum();
  cdf_.resize(static_cast<std::size_t>(etas_.size()));
  double run = 0.0;
  for (Eigen::Index i = 0; i < etas_.size(); ++i) {
    run += std::abs(etas_[i]) / gamma_;
    cdf_[static_cast<std::size_t>(i)] = run;
  }
  cdf_.back() = 1.0;
}

Eigen::Index QuasiProbability::sample(double uniform01) const {
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), uniform01);
  if (it == cdf_.end()) return static_cast<Eigen::Index>(cdf_.size()) - 1;
  return static_cast<Eigen::Index>(it - cdf_.begin());
}

PauliChannel QuasiProbability::as_channel() const {
  std::vector<std::pair<PauliString, double>> coeffs;
  for (Eigen::Index i = 0; i < etas_.size(); ++i) {
    if (etas_[i] != 0.0) coeffs.emplace_back(pauli_from_index(n_, static_cast<std::uint64_t>(i)), etas_[i]);
  }
  return PauliChannel(n_, std::move(coeffs));
}

QuasiProbability invert_channel(const PauliChannel& ch, double eigenvalue_threshold) {
  PtmEigenvalues e = channel_to_ptm(ch);
  for (Eigen::Index j = 0; j < e.values.size(); ++j) {
    if (e.values[j] <= eigenvalue_threshold) {
      throw inversion_error("channel not invertible: PTM eigenvalue " + std::to_string(e.values[j]) +
                            " for Pauli " + pauli_from_index(ch.n(), static_cast<std::uint64_t>(j)).text());
    }
  }
  Eigen::VectorXd inv = e.values.cwiseInverse();
  chi_transform(inv, ch.n());
  inv /= std::pow(4.0, ch.n());
  return QuasiProbability(ch.n(), std::move(inv));
}

namespace {

std::uint64_t mix64(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return h;
}

std::uint64_t content_key(const std::vector<std::pair<int, PauliString>>& corrections) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (const auto& [block, p] : corrections) {
    h = mix64(h, static_cast<std::uint64_t>(block));
    h = mix64(h, p.x_mask());
    h = mix64(h, p.z_mask());
  }
  return h;
}

}  // namespace

std::vector<SampledCircuit> sample_corrections(const std::vector<BlockRecovery>& recoveries, int n,
                                               std::int64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw config_error("sample_corrections: need at least one sample");
  Rng base(seed);
  std::vector<SampledCircuit> samples;
  samples.reserve(static_cast<std::size_t>(n_samples));
  for (std::int64_t k = 0; k < n_samples; ++k) {
    Rng rng = base.substream(static_cast<std::uint64_t>(k));
    SampledCircuit sc;
    for (std::size_t bi = 0; bi < recoveries.size(); ++bi) {
      const auto& rec = recoveries[bi];
      PauliString merged = PauliString::identity(n);
      bool nontrivial = false;
      for (const auto& scope : rec.scopes) {
        Eigen::Index r = scope.inverse.sample(rng.next_double());
        sc.sign *= scope.inverse.sign(r);
        if (r != 0) {
          PauliString local = pauli_from_index(static_cast<int>(scope.qubits.size()),
                                               static_cast<std::uint64_t>(r));
          merged = pauli_mul(merged, embed_from_scope(local, n, scope.qubits));
          nontrivial = true;
        }
      }
      if (nontrivial) sc.corrections.emplace_back(static_cast<int>(bi), merged);
    }
    sc.canonical_key = content_key(sc.corrections);
    samples.push_back(std::move(sc));
  }
  return samples;
}

std::vector<DedupEntry> deduplicate(const std::vector<SampledCircuit>& samples) {
  std::vector<DedupEntry> table;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;  // key -> table slots
  for (const auto& s : samples) {
    auto& slots = index[s.canonical_key];
    bool found = false;
    for (std::size_t slot : slots) {
      if (table[slot].representative.corrections == s.corrections) {
        if (table[slot].representative.sign != s.sign) {
          throw internal_error("dedup: sign mismatch within a correction group");
        }
        ++table[slot].multiplicity;
        found = true;
        break;
      }
    }
    if (!found) {
      slots.push_back(table.size());
      table.push_back(DedupEntry{s, 1});
    }
  }
  return table;
}

MitigationResult mitigated_estimate(const std::vector<DedupEntry>& table,
                                    const std::vector<double>& values, double gamma_total,
                                    std::int64_t n_samples) {
  if (values.size() != table.size()) {
    throw config_error("mitigated_estimate: missing observable values for " +
                       std::to_string(table.size() - values.size()) + " unique circuits");
  }
  if (n_samples < 1) throw config_error("mitigated_estimate: N must be >= 1");
  MitigationResult out;
  out.gamma_total = gamma_total;
  out.n_samples = n_samples;
  out.unique_circuits = static_cast<std::int64_t>(table.size());
  KahanSum sum, sum_sq;
  std::int64_t total_m = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& e = table[i];
    double signed_value = e.representative.sign * values[i];
    sum.add(static_cast<double>(e.multiplicity) * signed_value);
    sum_sq.add(static_cast<double>(e.multiplicity) * signed_value * signed_value);
    total_m += e.multiplicity;
    out.records.push_back(MitigationRecord{e.representative.canonical_key, e.multiplicity,
                                           e.representative.sign, values[i]});
  }
  if (total_m != n_samples) {
    throw internal_error("mitigated_estimate: multiplicities sum to " + std::to_string(total_m) +
                         ", expected N = " + std::to_string(n_samples));
  }
  double nd = static_cast<double>(n_samples);
  double mean = sum.value() / nd;
  out.estimate = gamma_total * mean;
  double var = 0.0;
  if (n_samples > 1) {
    var = std::max(0.0, (sum_sq.value() / nd - mean * mean) * nd / (nd - 1.0));
  }
  out.std_error = gamma_total * std::sqrt(var / nd);
  return out;
}

std::int64_t required_samples(double gamma_total, double epsilon) {
  if (gamma_total < 1.0) throw config_error("required_samples: Gamma must be >= 1");
  if (epsilon <= 0.0) throw config_error("required_samples: epsilon must be positive");
  double raw = gamma_total * gamma_total / (epsilon * epsilon);
  return static_cast<std::int64_t>(std::ceil(raw));
}

}  // namespace mosaic
