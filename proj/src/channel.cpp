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

#include "mosaic/channel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mosaic/errors.hpp"

namespace mosaic {

PauliLindbladModel::PauliLindbladModel(int n, std::vector<std::pair<PauliString, double>> terms)
    : n_(n), terms_(std::move(terms)) {
  std::uint64_t mask = 0;
  for (const auto& [p, rate] : terms_) {
    if (p.n() != n_) throw config_error("lindblad term width mismatch");
    if (p.is_identity()) throw config_error("lindblad term must be non-identity");
    if (rate < 0.0) throw config_error("lindblad rate must be non-negative");
    total_rate_ += rate;
    mask |= p.x_mask() | p.z_mask();
  }
  if (total_rate_ >= 1.0) {
    throw config_error("lindblad total rate " + std::to_string(total_rate_) +
                       " >= 1: first-order probability reading breaks down");
  }
  for (int q = 0; q < n_; ++q) {
    if ((mask >> q) & 1) support_.push_back(q);
  }
}

PauliChannel::PauliChannel(int n, std::vector<std::pair<PauliString, double>> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  for (const auto& [p, c] : coeffs_) {
    (void)c;
    if (p.n() != n_) throw config_error("pauli channel entry width mismatch");
  }
  std::sort(coeffs_.begin(), coeffs_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i].first == coeffs_[i - 1].first) {
      throw config_error("duplicate pauli in channel: " + coeffs_[i].first.text());
    }
  }
}

PauliChannel PauliChannel::identity(int n) {
  return PauliChannel(n, {{PauliString::identity(n), 1.0}});
}

double PauliChannel::coeff(const PauliString& p) const {
  auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), p,
                             [](const auto& e, const PauliString& key) { return e.first < key; });
  if (it != coeffs_.end() && it->first == p) return it->second;
  return 0.0;
}

double PauliChannel::coeff_sum() const {
  double s = 0.0;
  for (const auto& [p, c] : coeffs_) s += c;
  return s;
}

bool PauliChannel::is_physical(double tol) const {
  for (const auto& [p, c] : coeffs_) {
    if (c < -tol) return false;
  }
  return std::abs(coeff_sum() - 1.0) <= tol;
}

PauliChannel PauliChannel::pruned(double tol) const {
  std::vector<std::pair<PauliString, double>> kept;
  for (const auto& e : coeffs_) {
    if (std::abs(e.second) > tol || e.first.is_identity()) kept.push_back(e);
  }
  return PauliChannel(n_, std::move(kept));
}

PauliChannel pl_to_pauli_channel(const PauliLindbladModel& m) {
  std::map<PauliString, double> acc;
  acc[PauliString::identity(m.n())] = 1.0 - m.total_rate();
  for (const auto& [p, rate] : m.terms()) acc[p] += rate;
  std::vector<std::pair<PauliString, double>> coeffs(acc.begin(), acc.end());
  return PauliChannel(m.n(), std::move(coeffs));
}

PauliChannel pl_to_pauli_channel_exact(const PauliLindbladModel& m) {
  PauliChannel out = PauliChannel::identity(m.n());
  for (const auto& [p, rate] : m.terms()) {
    double w = PauliLindbladModel::fire_weight(rate);
    PauliChannel factor(m.n(), {{PauliString::identity(m.n()), w}, {p, 1.0 - w}});
    out = compose_channels(out, factor);
  }
  return out;
}

PtmEigenvalues channel_to_ptm(const PauliChannel& ch) {
  int n = ch.n();
  if (n > kDenseLimit) throw capacity_error("channel_to_ptm: width over dense limit");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(1) << (2 * n));
  for (const auto& [p, v] : ch.coeffs()) c[static_cast<Eigen::Index>(p.canonical_index())] = v;
  chi_transform(c, n);
  return PtmEigenvalues{n, std::move(c)};
}

PauliChannel ptm_to_channel(const PtmEigenvalues& e) {
  int n = e.n;
  if (n > kDenseLimit) throw capacity_error("ptm_to_channel: width over dense limit");
  Eigen::VectorXd c = e.values;
  chi_transform(c, n);
  c /= std::pow(4.0, n);
  std::vector<std::pair<PauliString, double>> coeffs;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c[i] != 0.0) coeffs.emplace_back(pauli_from_index(n, static_cast<std::uint64_t>(i)), c[i]);
  }
  return PauliChannel(n, std::move(coeffs));
}

PauliChannel compose_channels(const PauliChannel& a, const PauliChannel& b) {
  if (a.n() != b.n()) throw config_error("compose_channels: width mismatch");
  std::map<PauliString, double> acc;
  for (const auto& [pa, ca] : a.coeffs()) {
    for (const auto& [pb, cb] : b.coeffs()) {
      acc[pauli_mul(pa, pb)] += ca * cb;
    }
  }
  std::vector<std::pair<PauliString, double>> coeffs(acc.begin(), acc.end());
  return PauliChannel(a.n(), std::move(coeffs));
}

PauliString conjugate_pauli_by_clifford(const PauliString& p, const Gate& g) {
  if (!gate_is_clifford(g.kind)) {
    throw config_error(std::string("conjugation by non-Clifford gate ") + gate_mnemonic(g.kind));
  }
  std::uint64_t x = p.x_mask(), z = p.z_mask();
  auto bit = [](std::uint64_t m, int q) -> std::uint64_t { return (m >> q) & 1; };
  int q0 = g.qubits[0];
  switch (g.kind) {
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
      break;  // Pauli conjugation only flips signs, which are discarded
    case GateKind::H: {
      // X <-> Z
      std::uint64_t xb = bit(x, q0), zb = bit(z, q0);
      x ^= (xb ^ zb) << q0;
      z ^= (xb ^ zb) << q0;
      break;
    }
    case GateKind::S: {
      // X -> Y, Y -> X, Z -> Z: toggle the z bit when x is set
      z ^= bit(x, q0) << q0;
      break;
    }
    case GateKind::CX: {
      int q1 = g.qubits[1];
      x ^= bit(x, q0) << q1;  // X on control spreads to target
      z ^= bit(z, q1) << q0;  // Z on target spreads to control
      break;
    }
    case GateKind::CZ: {
      int q1 = g.qubits[1];
      z ^= bit(x, q0) << q1;
      z ^= bit(x, q1) << q0;
      break;
    }
    default:
      throw config_error("conjugation by non-Clifford gate");
  }
  return PauliString(p.n(), x, z);
}

PauliChannel conjugate_by_clifford(const PauliChannel& ch, const Gate& g) {
  std::vector<std::pair<PauliString, double>> coeffs;
  coeffs.reserve(ch.coeffs().size());
  for (const auto& [p, c] : ch.coeffs()) coeffs.emplace_back(conjugate_pauli_by_clifford(p, g), c);
  return PauliChannel(ch.n(), std::move(coeffs));
}

PauliChannel conjugate_by_clifford(const PauliChannel& ch, const std::vector<Gate>& gates) {
  PauliChannel out = ch;
  for (const auto& g : gates) out = conjugate_by_clifford(out, g);
  return out;
}

double gamma_of(const PauliChannel& ch) {
  double g = 0.0;
  for (const auto& [p, c] : ch.coeffs()) g += std::abs(c);
  return g;
}

PauliChannel depolarizing_channel(double p) {
  if (p < 0.0 || p >= 0.75) throw config_error("depolarizing_channel: p must be in [0, 0.75)");
  return PauliChannel(1, {{PauliString::from_text("I"), 1.0 - p},
                          {PauliString::from_text("X"), p / 3.0},
                          {PauliString::from_text("Y"), p / 3.0},
                          {PauliString::from_text("Z"), p / 3.0}});
}

std::vector<PauliLindbladModel> synth_layer_noise(const Layer& layer, int n, double p1, double p2,
                                                  std::uint64_t seed) {
  (void)seed;  // the uniform model has no randomness; kept for interface stability
  if (p1 < 0.0 || p1 >= 0.3 || p2 < 0.0 || p2 >= 0.3) {
    throw config_error("synth_layer_noise: probabilities must lie in [0, 0.3)");
  }
  std::vector<PauliLindbladModel> models;
  for (const auto& g : layer.gates) {
    std::vector<std::pair<PauliString, double>> terms;
    if (g.qubits.size() == 1) {
      if (p1 > 0.0) {
        for (char s : {'X', 'Y', 'Z'}) {
          terms.emplace_back(PauliString::single(n, g.qubits[0], s), p1 / 3.0);
        }
      }
    } else {
      if (p2 > 0.0) {
        for (const char* s : {"XX", "ZZ", "XY"}) {
          PauliString p = pauli_mul(PauliString::single(n, g.qubits[0], s[0]),
                                    PauliString::single(n, g.qubits[1], s[1]));
          terms.emplace_back(p, p2 / 3.0);
        }
      }
    }
    models.emplace_back(n, std::move(terms));
  }
  return models;
}

}  // namespace mosaic
