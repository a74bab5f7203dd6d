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

#include "doctest.h"
#include "mosaic/errors.hpp"
#include "mosaic/rng.hpp"

using namespace mosaic;

namespace {

PauliChannel random_physical(Rng& rng, int n) {
  Eigen::Index dim = Eigen::Index{1} << (2 * n);
  std::vector<std::pair<PauliString, double>> coeffs;
  double sum = 0.0;
  for (Eigen::Index i = 1; i < dim; ++i) {
    double v = rng.next_double();
    coeffs.emplace_back(pauli_from_index(n, static_cast<std::uint64_t>(i)), v);
    sum += v;
  }
  double mass = 0.4 * rng.next_double();
  for (auto& [p, v] : coeffs) v *= mass / sum;
  coeffs.emplace_back(PauliString::identity(n), 1.0 - mass);
  return PauliChannel(n, std::move(coeffs));
}

}  // namespace

TEST_CASE("first-order lindblad channel") {
  PauliLindbladModel empty(1, {});
  auto id = pl_to_pauli_channel(empty);
  CHECK(id.coeff(PauliString::from_text("I")) == 1.0);

  PauliLindbladModel m(1, {{PauliString::from_text("X"), 0.1}});
  auto ch = pl_to_pauli_channel(m);
  CHECK(ch.coeff(PauliString::from_text("I")) == doctest::Approx(0.9));
  CHECK(ch.coeff(PauliString::from_text("X")) == doctest::Approx(0.1));

  PauliLindbladModel two(2, {{PauliString::from_text("XX"), 0.02},
                             {PauliString::from_text("ZZ"), 0.02},
                             {PauliString::from_text("XY"), 0.02}});
  CHECK(pl_to_pauli_channel(two).coeff(PauliString::identity(2)) == doctest::Approx(0.94));

  CHECK_THROWS_AS(PauliLindbladModel(1, {{PauliString::from_text("X"), 1.0}}), Error);
  CHECK_THROWS_AS(PauliLindbladModel(1, {{PauliString::from_text("X"), -0.1}}), Error);
}

TEST_CASE("exact product-form channel agrees with first order at weak rates") {
  PauliLindbladModel m(2, {{PauliString::from_text("XI"), 0.01}, {PauliString::from_text("ZZ"), 0.005}});
  auto first = pl_to_pauli_channel(m);
  auto exact = pl_to_pauli_channel_exact(m);
  CHECK(exact.coeff_sum() == doctest::Approx(1.0).epsilon(1e-12));
  // w_k = (1 + e^{-2 lambda})/2 gives fire probability lambda + O(lambda^2)
  for (const auto& [p, c] : first.coeffs()) {
    CHECK(exact.coeff(p) == doctest::Approx(c).epsilon(0.03));
  }
}

TEST_CASE("ptm conversion basics") {
  auto id = PauliChannel::identity(1);
  auto e = channel_to_ptm(id);
  CHECK(e.values.isApprox(Eigen::Vector4d::Ones(), 1e-14));

  auto dep = depolarizing_channel(0.3);
  auto ed = channel_to_ptm(dep);
  CHECK(ed.values[0] == doctest::Approx(1.0));
  CHECK(ed.values[1] == doctest::Approx(0.6));
  CHECK(ed.values[2] == doctest::Approx(0.6));
  CHECK(ed.values[3] == doctest::Approx(0.6));
}

TEST_CASE("ptm round-trip on random physical channels") {
  Rng rng(42);
  for (int t = 0; t < 500; ++t) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    auto ch = random_physical(rng, n);
    auto back = ptm_to_channel(channel_to_ptm(ch));
    double max_err = 0.0;
    for (const auto& [p, c] : ch.coeffs()) max_err = std::max(max_err, std::abs(back.coeff(p) - c));
    CHECK(max_err < 1e-12);
  }
}

TEST_CASE("composition equals entrywise PTM product and commutes") {
  auto dep = depolarizing_channel(0.1);
  auto both = compose_channels(dep, dep);
  auto e = channel_to_ptm(both);
  double f = 1.0 - 4.0 * 0.1 / 3.0;
  CHECK(e.values[1] == doctest::Approx(f * f).epsilon(1e-13));

  CHECK(compose_channels(PauliChannel::identity(1), dep).coeff(PauliString::from_text("X")) ==
        doctest::Approx(dep.coeff(PauliString::from_text("X"))));

  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + static_cast<int>(rng.next_below(2));
    auto a = random_physical(rng, n);
    auto b = random_physical(rng, n);
    auto ab = compose_channels(a, b);
    auto ba = compose_channels(b, a);
    for (const auto& [p, c] : ab.coeffs()) CHECK(ba.coeff(p) == doctest::Approx(c).epsilon(1e-12));
    // PTM view: entrywise product
    Eigen::VectorXd lhs = channel_to_ptm(ab).values;
    Eigen::VectorXd rhs = channel_to_ptm(a).values.cwiseProduct(channel_to_ptm(b).values);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("trace preservation across constructions") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    auto a = random_physical(rng, n);
    CHECK(std::abs(a.coeff_sum() - 1.0) < 1e-12);
    auto b = compose_channels(a, random_physical(rng, n));
    CHECK(std::abs(b.coeff_sum() - 1.0) < 1e-12);
  }
}

TEST_CASE("clifford conjugation relabels and preserves gamma") {
  PauliChannel ch(1, {{PauliString::from_text("I"), 0.9}, {PauliString::from_text("Z"), 0.1}});
  auto conj = conjugate_by_clifford(ch, Gate::g1(GateKind::H, 0));
  CHECK(conj.coeff(PauliString::from_text("X")) == doctest::Approx(0.1));
  CHECK(conj.coeff(PauliString::from_text("Z")) == 0.0);

  CHECK_THROWS_AS(conjugate_by_clifford(ch, Gate::g1(GateKind::RX, 0, 0.3)), Error);

  // conjugation table spot checks
  auto conj_one = [](const char* p, const Gate& g) {
    return conjugate_pauli_by_clifford(PauliString::from_text(p), g).text();
  };
  CHECK(conj_one("X", Gate::g1(GateKind::S, 0)) == "Y");
  CHECK(conj_one("Y", Gate::g1(GateKind::S, 0)) == "X");
  CHECK(conj_one("XI", Gate::g2(GateKind::CX, 0, 1)) == "XX");
  CHECK(conj_one("IZ", Gate::g2(GateKind::CX, 0, 1)) == "ZZ");
  CHECK(conj_one("IX", Gate::g2(GateKind::CX, 0, 1)) == "IX");
  CHECK(conj_one("XI", Gate::g2(GateKind::CZ, 0, 1)) == "XZ");

  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    auto a = random_physical(rng, n);
    double before = gamma_of(a);
    for (int g = 0; g < 4; ++g) {
      int q = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      switch (rng.next_below(3)) {
        case 0: a = conjugate_by_clifford(a, Gate::g1(GateKind::H, q)); break;
        case 1: a = conjugate_by_clifford(a, Gate::g1(GateKind::S, q)); break;
        default:
          if (n > 1) {
            int q2 = (q + 1) % n;
            a = conjugate_by_clifford(a, Gate::g2(GateKind::CX, q, q2));
          } else {
            a = conjugate_by_clifford(a, Gate::g1(GateKind::Z, q));
          }
      }
    }
    CHECK(gamma_of(a) == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("gamma values") {
  CHECK(gamma_of(depolarizing_channel(0.2)) == doctest::Approx(1.0));
  PauliChannel quasi(1, {{PauliString::from_text("I"), 1.2}, {PauliString::from_text("X"), -0.2}});
  CHECK(gamma_of(quasi) == doctest::Approx(1.4));
}

TEST_CASE("synthetic layer noise") {
  Layer layer;
  layer.gates = {Gate::g1(GateKind::RY, 0, 0.3), Gate::g2(GateKind::RZZ, 1, 2, 0.5)};
  auto models = synth_layer_noise(layer, 3, 0.006, 0.06, 1);
  REQUIRE(models.size() == 2);
  REQUIRE(models[0].terms().size() == 3);
  CHECK(models[0].terms()[0].second == doctest::Approx(0.002));
  REQUIRE(models[1].terms().size() == 3);
  CHECK(models[1].terms()[0].second == doctest::Approx(0.02));
  CHECK(models[1].terms()[0].first.text() == "IXX");
  CHECK(models[1].terms()[1].first.text() == "IZZ");
  CHECK(models[1].terms()[2].first.text() == "IXY");
  CHECK(models[1].support() == std::vector<int>{1, 2});

  // two-qubit symbols attach positionally to the gate's qubit order
  Layer rev;
  rev.gates = {Gate::g2(GateKind::CX, 2, 1)};
  auto mrev = synth_layer_noise(rev, 3, 0.0, 0.06, 1);
  CHECK(mrev[0].terms()[2].first.text() == "IYX");  // XY on (q0=2, q1=1)

  auto quiet = synth_layer_noise(layer, 3, 0.0, 0.0, 1);
  for (const auto& m : quiet) CHECK(m.terms().empty());

  CHECK_THROWS_AS(synth_layer_noise(layer, 3, 0.5, 0.06, 1), Error);
}

TEST_CASE("submultiplicativity of gamma on signed vectors") {
  Rng rng(19);
  int strict_hits = 0;
  for (int t = 0; t < 1000; ++t) {
    int n = 1 + static_cast<int>(rng.next_below(2));
    Eigen::Index dim = Eigen::Index{1} << (2 * n);
    auto make_signed = [&] {
      std::vector<std::pair<PauliString, double>> coeffs;
      double sum = 0.0;
      for (Eigen::Index i = 0; i < dim; ++i) {
        double v = (rng.next_double() - 0.35) * 0.4;
        coeffs.emplace_back(pauli_from_index(n, static_cast<std::uint64_t>(i)), v);
        sum += v;
      }
      coeffs[0].second += 1.0 - sum;
      return PauliChannel(n, std::move(coeffs));
    };
    auto a = make_signed();
    auto b = make_signed();
    double lhs = gamma_of(compose_channels(a, b));
    double rhs = gamma_of(a) * gamma_of(b);
    CHECK(lhs <= rhs + 1e-12);
    if (lhs < rhs - 1e-9) ++strict_hits;
  }
  CHECK(strict_hits > 900);  // mixed signs cancel almost surely
}
