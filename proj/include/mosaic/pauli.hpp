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

#include <Eigen/Dense>

namespace mosaic {

// Largest qubit count for which 4^n Pauli vectors and chi transforms are kept
// dense. Blocks wider than this are rejected upstream.
inline constexpr int kDenseLimit = 6;

// Phase-free n-qubit Pauli label, bit-packed as X/Z masks (qubit q <-> bit q).
// Multiplication discards the global phase: PEC sampling only ever needs
// labels and commutation parities.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n, std::uint64_t x_mask, std::uint64_t z_mask)
      : n_(n), x_(x_mask), z_(z_mask) {}

  // Identity on n qubits.
  static PauliString identity(int n) { return PauliString(n, 0, 0); }

  // Parses text form: uppercase over {I,X,Y,Z}, qubit 0 leftmost (e.g. "XIZ").
  static PauliString from_text(const std::string& text);

  // Single non-identity symbol at `qubit`, identity elsewhere.
  static PauliString single(int n, int qubit, char symbol);

  int n() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  bool is_identity() const { return x_ == 0 && z_ == 0; }

  // Per-qubit symbol as canonical digit: I=0, X=1, Y=2, Z=3.
  int digit(int qubit) const {
    int x = static_cast<int>((x_ >> qubit) & 1);
    int z = static_cast<int>((z_ >> qubit) & 1);
    return x ? (z ? 2 : 1) : (z ? 3 : 0);
  }
  char symbol(int qubit) const { return "IXYZ"[digit(qubit)]; }

  // Qubits where the symbol is non-identity.
  std::vector<int> support() const;
  int weight() const { return __builtin_popcountll(x_ | z_); }

  // Canonical dense index: base-4 with qubit 0 most significant.
  // Requires n <= kDenseLimit... callers enumerate only at dense widths, but
  // the formula itself is valid to n = 31.
  std::uint64_t canonical_index() const {
    std::uint64_t idx = 0;
    for (int q = 0; q < n_; ++q) idx = idx * 4 + static_cast<std::uint64_t>(digit(q));
    return idx;
  }

  std::string text() const;

  bool operator==(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }
  bool operator!=(const PauliString& o) const { return !(*this == o); }
  // Orders by canonical index (base-4 lexicographic, qubit 0 first).
  bool operator<(const PauliString& o) const;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

// Phase-free product. pauli_mul(p, p) is the identity.
PauliString pauli_mul(const PauliString& p, const PauliString& q);

// Commutation parity: +1 if p and q commute, -1 otherwise.
int commutation_parity(const PauliString& p, const PauliString& q);

// All 4^n Pauli strings in canonical order, identity first. n <= kDenseLimit.
std::vector<PauliString> enumerate_paulis(int n);

// Pauli string at a canonical index without materializing the enumeration.
PauliString pauli_from_index(int n, std::uint64_t index);

// Dense commutation-parity matrix in canonical order; symmetric, first row
// and column all +1, and chi * chi = 4^n * I.
Eigen::MatrixXd chi_matrix(int n);

// In-place v <- chi * v using the tensor-product structure of chi; O(4^n n)
// instead of the dense O(16^n) product. Length of v must be 4^n.
void chi_transform(Eigen::VectorXd& v, int n);

}  // namespace mosaic
