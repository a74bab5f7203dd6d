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

#include "mosaic/pauli.hpp"

#include "mosaic/errors.hpp"

namespace mosaic {

PauliString PauliString::from_text(const std::string& text) {
  int n = static_cast<int>(text.size());
  if (n == 0 || n > 63) throw config_error("pauli text length out of range: '" + text + "'");
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    switch (text[q]) {
      case 'I': break;
      case 'X': x |= 1ULL << q; break;
      case 'Y': x |= 1ULL << q; z |= 1ULL << q; break;
      case 'Z': z |= 1ULL << q; break;
      default:
        throw config_error("invalid pauli symbol '" + std::string(1, text[q]) + "' in '" + text + "'");
    }
  }
  return PauliString(n, x, z);
}

PauliString PauliString::single(int n, int qubit, char symbol) {
  if (qubit < 0 || qubit >= n) throw config_error("pauli qubit index out of range");
  std::uint64_t x = 0, z = 0;
  switch (symbol) {
    case 'I': break;
    case 'X': x = 1ULL << qubit; break;
    case 'Y': x = z = 1ULL << qubit; break;
    case 'Z': z = 1ULL << qubit; break;
    default: throw config_error("invalid pauli symbol");
  }
  return PauliString(n, x, z);
}

std::vector<int> PauliString::support() const {
  std::vector<int> qs;
  std::uint64_t m = x_ | z_;
  for (int q = 0; q < n_; ++q) {
    if ((m >> q) & 1) qs.push_back(q);
  }
  return qs;
}

std::string PauliString::text() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = symbol(q);
  return s;
}

bool PauliString::operator<(const PauliString& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (int q = 0; q < n_; ++q) {
    int a = digit(q), b = o.digit(q);
    if (a != b) return a < b;
  }
  return false;
}

PauliString pauli_mul(const PauliString& p, const PauliString& q) {
  if (p.n() != q.n()) throw config_error("pauli_mul: size mismatch");
  return PauliString(p.n(), p.x_mask() ^ q.x_mask(), p.z_mask() ^ q.z_mask());
}

int commutation_parity(const PauliString& p, const PauliString& q) {
  if (p.n() != q.n()) throw config_error("commutation_parity: size mismatch");
  int anti = __builtin_popcountll(p.x_mask() & q.z_mask()) +
             __builtin_popcountll(p.z_mask() & q.x_mask());
  return (anti & 1) ? -1 : +1;
}

namespace {
void check_dense(int n, const char* where) {
  if (n < 1 || n > kDenseLimit) {
    throw capacity_error(std::string(where) + ": qubit count " + std::to_string(n) +
                         " outside dense limit " + std::to_string(kDenseLimit));
  }
}
}  // namespace

PauliString pauli_from_index(int n, std::uint64_t index) {
  std::uint64_t x = 0, z = 0;
  for (int q = n - 1; q >= 0; --q) {
    int d = static_cast<int>(index & 3);
    index >>= 2;
    if (d == 1 || d == 2) x |= 1ULL << q;
    if (d == 2 || d == 3) z |= 1ULL << q;
  }
  return PauliString(n, x, z);
}

std::vector<PauliString> enumerate_paulis(int n) {
  check_dense(n, "enumerate_paulis");
  std::uint64_t dim = 1ULL << (2 * n);
  std::vector<PauliString> out;
  out.reserve(dim);
  for (std::uint64_t i = 0; i < dim; ++i) out.push_back(pauli_from_index(n, i));
  return out;
}

Eigen::MatrixXd chi_matrix(int n) {
  check_dense(n, "chi_matrix");
  auto paulis = enumerate_paulis(n);
  Eigen::Index dim = static_cast<Eigen::Index>(paulis.size());
  Eigen::MatrixXd chi(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      double v = commutation_parity(paulis[static_cast<std::size_t>(i)],
                                    paulis[static_cast<std::size_t>(j)]);
      chi(i, j) = v;
      chi(j, i) = v;
    }
  }
  return chi;
}

void chi_transform(Eigen::VectorXd& v, int n) {
  check_dense(n, "chi_transform");
  const Eigen::Index dim = static_cast<Eigen::Index>(1) << (2 * n);
  if (v.size() != dim) throw internal_error("chi_transform: length mismatch");
  // chi = chi1^{(x) n}; single-qubit factor in I,X,Y,Z order:
  //   [ 1  1  1  1 ]
  //   [ 1  1 -1 -1 ]
  //   [ 1 -1  1 -1 ]
  //   [ 1 -1 -1  1 ]
  for (int slot = 0; slot < n; ++slot) {
    Eigen::Index stride = static_cast<Eigen::Index>(1) << (2 * (n - 1 - slot));
    for (Eigen::Index base = 0; base < dim; ++base) {
      if ((base / stride) % 4 != 0) continue;
      double a = v[base], b = v[base + stride], c = v[base + 2 * stride], d = v[base + 3 * stride];
      v[base] = a + b + c + d;
      v[base + stride] = a + b - c - d;
      v[base + 2 * stride] = a - b + c - d;
      v[base + 3 * stride] = a - b - c + d;
    }
  }
}

}  // namespace mosaic
