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

#include "mosaic/superop.hpp"

#include <algorithm>
#include <complex>

#include "mosaic/errors.hpp"

namespace mosaic {

namespace {

using complexd = std::complex<double>;

Eigen::MatrixXcd gate_unitary_matrix(const Gate& g) {
  const complexd i(0, 1);
  if (g.qubits.size() == 1) {
    Eigen::MatrixXcd u(2, 2);
    switch (g.kind) {
      case GateKind::RX: {
        double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
        u << c, -i * s, -i * s, c;
        return u;
      }
      case GateKind::RY: {
        double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
        u << c, -s, s, c;
        return u;
      }
      case GateKind::RZ:
        u << std::exp(-i * g.angle / 2.0), 0, 0, std::exp(i * g.angle / 2.0);
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
        throw internal_error("gate_unitary_matrix: bad 1q kind");
    }
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  switch (g.kind) {
    case GateKind::CX:
      u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1;
      return u;
    case GateKind::CZ:
      u(0, 0) = u(1, 1) = u(2, 2) = 1;
      u(3, 3) = -1;
      return u;
    case GateKind::RZZ: {
      complexd e = std::exp(-i * g.angle / 2.0), f = std::exp(i * g.angle / 2.0);
      u(0, 0) = e;
      u(1, 1) = f;
      u(2, 2) = f;
      u(3, 3) = e;
      return u;
    }
    default:
      throw internal_error("gate_unitary_matrix: bad 2q kind");
  }
}

Eigen::MatrixXcd pauli_matrix_dense(const PauliString& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  const complexd i(0, 1);
  for (int q = 0; q < p.n(); ++q) {
    Eigen::MatrixXcd s(2, 2);
    switch (p.digit(q)) {
      case 0: s << 1, 0, 0, 1; break;
      case 1: s << 0, 1, 1, 0; break;
      case 2: s << 0, -i, i, 0; break;
      default: s << 1, 0, 0, -1; break;
    }
    Eigen::MatrixXcd out(m.rows() * 2, m.cols() * 2);
    out.topLeftCorner(m.rows(), m.cols()) = m * s(0, 0);
    out.topRightCorner(m.rows(), m.cols()) = m * s(0, 1);
    out.bottomLeftCorner(m.rows(), m.cols()) = m * s(1, 0);
    out.bottomRightCorner(m.rows(), m.cols()) = m * s(1, 1);
    // note: kron(m, s) has s varying fastest; we want qubit 0 most
    // significant, so accumulate as kron(previous, next qubit)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        out.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
      }
    }
    m = std::move(out);
  }
  return m;
}

}  // namespace

BlockSuperop BlockSuperop::identity(int n) {
  if (n < 1 || n > kDenseLimit) throw capacity_error("superop width over dense limit");
  Eigen::Index dim = Eigen::Index{1} << (2 * n);
  return BlockSuperop{n, Eigen::MatrixXd::Identity(dim, dim)};
}

double BlockSuperop::trace_row_deviation() const {
  double dev = std::abs(matrix(0, 0) - 1.0);
  for (Eigen::Index j = 1; j < matrix.cols(); ++j) dev = std::max(dev, std::abs(matrix(0, j)));
  return dev;
}

Eigen::MatrixXd gate_ptm(const Gate& g) {
  int k = static_cast<int>(g.qubits.size());
  Eigen::MatrixXcd u = gate_unitary_matrix(g);
  Eigen::Index dim = Eigen::Index{1} << (2 * k);
  Eigen::MatrixXd ptm(dim, dim);
  std::vector<Eigen::MatrixXcd> paulis;
  for (Eigen::Index a = 0; a < dim; ++a) {
    paulis.push_back(pauli_matrix_dense(pauli_from_index(k, static_cast<std::uint64_t>(a))));
  }
  double norm = std::pow(2.0, k);
  for (Eigen::Index a = 0; a < dim; ++a) {
    Eigen::MatrixXcd ua = paulis[static_cast<std::size_t>(a)];
    for (Eigen::Index b = 0; b < dim; ++b) {
      complexd tr = (ua * u * paulis[static_cast<std::size_t>(b)] * u.adjoint()).trace();
      ptm(a, b) = tr.real() / norm;
    }
  }
  return ptm;
}

void apply_gate_ptm_left(BlockSuperop& op, const std::vector<int>& positions, const Eigen::MatrixXd& small) {
  int k = op.n;
  int m = static_cast<int>(positions.size());
  const Eigen::Index dim = Eigen::Index{1} << (2 * k);
  const Eigen::Index sdim = Eigen::Index{1} << (2 * m);
  // strides of the tensor slots (qubit 0 of the scope most significant)
  std::vector<Eigen::Index> stride(positions.size());
  for (int i = 0; i < m; ++i) stride[static_cast<std::size_t>(i)] = Eigen::Index{1} << (2 * (k - 1 - positions[static_cast<std::size_t>(i)]));
  Eigen::Index step_mask = 0;
  for (auto s : stride) step_mask += 3 * s;

  std::vector<double> buf(static_cast<std::size_t>(sdim));
  for (Eigen::Index col = 0; col < op.matrix.cols(); ++col) {
    auto column = op.matrix.col(col);
    // iterate bases where all slot digits are zero
    for (Eigen::Index base = 0; base < dim; ++base) {
      bool zero_slots = true;
      for (auto s : stride) {
        if ((base / s) % 4 != 0) {
          zero_slots = false;
          break;
        }
      }
      if (!zero_slots) continue;
      for (Eigen::Index sub = 0; sub < sdim; ++sub) {
        Eigen::Index off = 0;
        Eigen::Index rem = sub;
        for (int i = m - 1; i >= 0; --i) {
          off += (rem & 3) * stride[static_cast<std::size_t>(i)];
          rem >>= 2;
        }
        buf[static_cast<std::size_t>(sub)] = column[base + off];
      }
      for (Eigen::Index r = 0; r < sdim; ++r) {
        double acc = 0.0;
        for (Eigen::Index c = 0; c < sdim; ++c) acc += small(r, c) * buf[static_cast<std::size_t>(c)];
        Eigen::Index off = 0;
        Eigen::Index rem = r;
        for (int i = m - 1; i >= 0; --i) {
          off += (rem & 3) * stride[static_cast<std::size_t>(i)];
          rem >>= 2;
        }
        column[base + off] = acc;
      }
    }
  }
}

namespace {

std::vector<int> scope_positions(const std::vector<int>& qubits, const std::vector<int>& scope,
                                 const char* what) {
  std::vector<int> pos;
  pos.reserve(qubits.size());
  for (int q : qubits) {
    auto it = std::lower_bound(scope.begin(), scope.end(), q);
    if (it == scope.end() || *it != q) {
      throw internal_error(std::string(what) + ": qubit " + std::to_string(q) + " outside scope");
    }
    pos.push_back(static_cast<int>(it - scope.begin()));
  }
  return pos;
}

bool touches_scope(const std::vector<int>& qubits, const std::vector<int>& scope) {
  for (int q : qubits) {
    if (std::binary_search(scope.begin(), scope.end(), q)) return true;
  }
  return false;
}

}  // namespace

BlockSuperop layer_superop(const Layer& layer, const std::vector<int>& scope) {
  BlockSuperop op = BlockSuperop::identity(static_cast<int>(scope.size()));
  for (const auto& g : layer.gates) {
    if (!touches_scope(g.qubits, scope)) continue;
    apply_gate_ptm_left(op, scope_positions(g.qubits, scope, "layer_superop"), gate_ptm(g));
  }
  return op;
}

Eigen::VectorXd noise_superop_diag(const PauliLindbladModel& m, const std::vector<int>& scope) {
  int k = static_cast<int>(scope.size());
  if (k > kDenseLimit) throw capacity_error("noise_superop: scope over dense limit");
  const Eigen::Index dim = Eigen::Index{1} << (2 * k);
  Eigen::VectorXd lam = Eigen::VectorXd::Constant(dim, 1.0);
  if (m.terms().empty()) return lam;
  // lambda_j = (1 - sum rates) + sum_k rate_k * chi(P_j, P_k)
  std::vector<PauliString> local;
  std::vector<double> rates;
  for (const auto& [p, rate] : m.terms()) {
    local.push_back(restrict_to_scope(p, scope));
    rates.push_back(rate);
  }
  double base = 1.0 - m.total_rate();
  for (Eigen::Index j = 0; j < dim; ++j) {
    PauliString pj = pauli_from_index(k, static_cast<std::uint64_t>(j));
    double v = base;
    for (std::size_t t = 0; t < local.size(); ++t) {
      v += rates[t] * commutation_parity(pj, local[t]);
    }
    lam[j] = v;
  }
  return lam;
}

BlockSuperop noise_superop(const PauliLindbladModel& m, const std::vector<int>& scope) {
  BlockSuperop op = BlockSuperop::identity(static_cast<int>(scope.size()));
  op.matrix = noise_superop_diag(m, scope).asDiagonal();
  return op;
}

BlockSuperop compose_noisy_block(const Block& b, const Scope& scope) {
  BlockSuperop op = BlockSuperop::identity(static_cast<int>(scope.qubits.size()));
  for (std::size_t li = 0; li < b.layers.size(); ++li) {
    for (const auto& g : b.layers[li].gates) {
      if (!touches_scope(g.qubits, scope.qubits)) continue;
      apply_gate_ptm_left(op, scope_positions(g.qubits, scope.qubits, "compose_noisy_block"), gate_ptm(g));
    }
    for (const auto& m : b.layer_noise[li]) {
      if (m.terms().empty() || !touches_scope(m.support(), scope.qubits)) continue;
      Eigen::VectorXd lam = noise_superop_diag(m, scope.qubits);
      op.matrix = lam.asDiagonal() * op.matrix;
    }
  }
  return op;
}

BlockSuperop block_unitary_ptm(const Block& b, const Scope& scope) {
  BlockSuperop op = BlockSuperop::identity(static_cast<int>(scope.qubits.size()));
  for (const auto& layer : b.layers) {
    for (const auto& g : layer.gates) {
      if (!touches_scope(g.qubits, scope.qubits)) continue;
      apply_gate_ptm_left(op, scope_positions(g.qubits, scope.qubits, "block_unitary_ptm"), gate_ptm(g));
    }
  }
  return op;
}

BlockSuperop block_fit_target(const Block& b, const Scope& scope) {
  BlockSuperop noisy = compose_noisy_block(b, scope);
  BlockSuperop ideal = block_unitary_ptm(b, scope);
  BlockSuperop t;
  t.n = noisy.n;
  t.matrix = noisy.matrix * ideal.matrix.transpose();
  return t;
}

PauliString restrict_to_scope(const PauliString& p, const std::vector<int>& scope) {
  for (int q : p.support()) {
    if (!std::binary_search(scope.begin(), scope.end(), q)) {
      throw internal_error("restrict_to_scope: pauli " + p.text() + " acts outside scope");
    }
  }
  int k = static_cast<int>(scope.size());
  std::uint64_t x = 0, z = 0;
  for (int i = 0; i < k; ++i) {
    int q = scope[static_cast<std::size_t>(i)];
    if ((p.x_mask() >> q) & 1) x |= 1ULL << i;
    if ((p.z_mask() >> q) & 1) z |= 1ULL << i;
  }
  return PauliString(k, x, z);
}

PauliString embed_from_scope(const PauliString& local, int n, const std::vector<int>& scope) {
  std::uint64_t x = 0, z = 0;
  for (int i = 0; i < local.n(); ++i) {
    int q = scope[static_cast<std::size_t>(i)];
    if ((local.x_mask() >> i) & 1) x |= 1ULL << q;
    if ((local.z_mask() >> i) & 1) z |= 1ULL << q;
  }
  return PauliString(n, x, z);
}

}  // namespace mosaic
