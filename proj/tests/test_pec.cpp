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

#include "doctest.h"
#include "mosaic/errors.hpp"
#include "mosaic/rng.hpp"

using namespace mosaic;

namespace {
PauliChannel random_invertible(Rng& rng, int n) {
  Eigen::Index dim = Eigen::Index{1} << (2 * n);
  std::vector<std::pair<PauliString, double>> coeffs;
  double sum = 0.0;
  for (Eigen::Index i = 1; i < dim; ++i) {
    double v = rng.next_double();
    coeffs.emplace_back(pauli_from_index(n, static_cast<std::uint64_t>(i)), v);
    sum += v;
  }
  double mass = 0.35 * rng.next_double();
  for (auto& [p, v] : coeffs) v *= mass / sum;
  coeffs.emplace_back(PauliString::identity(n), 1.0 - mass);
  return PauliChannel(n, std::move(coeffs));
}
}  // namespace

TEST_CASE("identity channel inverts to itself") {
  auto q = invert_channel(PauliChannel::identity(2));
  CHECK(q.gamma() == doctest::Approx(1.0));
  CHECK(q.eta(PauliString::identity(2)) == doctest::Approx(1.0));
}

TEST_CASE("depolarizing inverse has the closed-form gamma and negative tails") {
  double p = 0.05;
  auto q = invert_channel(depolarizing_channel(p));
  double expected = (1.0 + 2.0 * p / 3.0) / (1.0 - 4.0 * p / 3.0);
  CHECK(q.gamma() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(q.gamma() == doctest::Approx(1.107142857142857).epsilon(1e-9));
  for (const char* s : {"X", "Y", "Z"}) CHECK(q.eta(PauliString::from_text(s)) < 0.0);
  CHECK(q.eta(PauliString::from_text("I")) > 1.0);
  CHECK(q.eta_sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inverse of a Z-flip channel") {
  // eigenvalues (1, 0.8, 0.8, 1) -> inverse (1, 1.25, 1.25, 1)
  PauliChannel ch(1, {{PauliString::from_text("I"), 0.9}, {PauliString::from_text("Z"), 0.1}});
  auto q = invert_channel(ch);
  CHECK(q.eta(PauliString::from_text("I")) == doctest::Approx(1.125).epsilon(1e-12));
  CHECK(q.eta(PauliString::from_text("Z")) == doctest::Approx(-0.125).epsilon(1e-12));
  CHECK(q.eta(PauliString::from_text("X")) == doctest::Approx(0.0));
  CHECK(q.gamma() == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("non-invertible channel names the offending pauli") {
  // eigenvalue for X is 1 - 2*0.5 = 0
  PauliChannel ch(1, {{PauliString::from_text("I"), 0.5}, {PauliString::from_text("Z"), 0.5}});
  try {
    invert_channel(ch);
    FAIL("expected inversion error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Inversion);
    CHECK(std::string(e.what()).find("X") != std::string::npos);
  }
}

TEST_CASE("inverse composes with the channel to the identity, 500 random channels") {
  Rng rng(23);
  for (int t = 0; t < 500; ++t) {
    int n = 1 + static_cast<int>(rng.next_below(3));
    auto ch = random_invertible(rng, n);
    auto q = invert_channel(ch);
    // compose through the coefficient-convolution route, then check the PTM
    auto composed = compose_channels(ch, q.as_channel());
    auto e = channel_to_ptm(composed);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(e.values.size());
    CHECK((e.values - ones).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("sampling draws match the quasi-probability distribution") {
  PauliChannel ch(1, {{PauliString::from_text("I"), 0.9}, {PauliString::from_text("Z"), 0.1}});
  BlockRecovery rec;
  rec.block_id = 0;
  rec.insert_after_layer = 0;
  rec.scopes.push_back(ScopeRecovery{{0}, invert_channel(ch)});
  const std::int64_t n_samples = 100000;
  auto samples = sample_corrections({rec}, 1, n_samples, 77);
  REQUIRE(samples.size() == static_cast<std::size_t>(n_samples));
  std::int64_t z_count = 0;
  for (const auto& s : samples) {
    if (!s.corrections.empty()) {
      CHECK(s.corrections[0].second == PauliString::from_text("Z"));
      CHECK(s.sign == -1);
      ++z_count;
    } else {
      CHECK(s.sign == +1);
    }
  }
  double p_z = 0.125 / 1.25;
  double freq = static_cast<double>(z_count) / static_cast<double>(n_samples);
  double sigma = std::sqrt(p_z * (1 - p_z) / static_cast<double>(n_samples));
  CHECK(std::abs(freq - p_z) < 3.0 * sigma);
}

TEST_CASE("all-identity recoveries produce base circuits with positive signs") {
  BlockRecovery rec;
  rec.scopes.push_back(ScopeRecovery{{0}, invert_channel(PauliChannel::identity(1))});
  auto samples = sample_corrections({rec}, 2, 50, 5);
  for (const auto& s : samples) {
    CHECK(s.corrections.empty());
    CHECK(s.sign == 1);
  }
  CHECK_THROWS_AS(sample_corrections({rec}, 2, 0, 5), Error);
}

TEST_CASE("dedup groups identical corrections and preserves the estimator") {
  PauliChannel ch(1, {{PauliString::from_text("I"), 0.85}, {PauliString::from_text("X"), 0.15}});
  BlockRecovery rec;
  rec.insert_after_layer = 0;
  rec.scopes.push_back(ScopeRecovery{{0}, invert_channel(ch)});
  auto samples = sample_corrections({rec}, 1, 4000, 9);
  auto table = deduplicate(samples);
  CHECK(table.size() <= 2);
  std::int64_t total = 0;
  for (const auto& e : table) total += e.multiplicity;
  CHECK(total == 4000);

  // estimator over the table equals the raw-sample estimator exactly
  auto value_of = [](const SampledCircuit& s) { return s.corrections.empty() ? 0.9 : -0.3; };
  std::vector<double> values;
  for (const auto& e : table) values.push_back(value_of(e.representative));
  double gamma = rec.gamma();
  auto result = mitigated_estimate(table, values, gamma, 4000);
  KahanSum raw;
  for (const auto& s : samples) raw.add(s.sign * value_of(s));
  CHECK(result.estimate == gamma * raw.value() / 4000);
}

TEST_CASE("dedup keeps first-seen order and distinct entries") {
  SampledCircuit a;
  a.corrections = {{0, PauliString::from_text("XI")}};
  a.sign = -1;
  a.canonical_key = 11;
  SampledCircuit b;
  b.corrections = {{1, PauliString::from_text("IZ")}};
  b.sign = -1;
  b.canonical_key = 22;
  auto table = deduplicate({b, a, b, b});
  REQUIRE(table.size() == 2);
  CHECK(table[0].representative.canonical_key == 22);
  CHECK(table[0].multiplicity == 3);
  CHECK(table[1].multiplicity == 1);

  SampledCircuit bad = b;
  bad.sign = +1;  // same corrections must imply the same sign
  CHECK_THROWS_AS(deduplicate({b, bad}), Error);
}

TEST_CASE("mitigated estimate arithmetic") {
  std::vector<DedupEntry> table(2);
  table[0].representative.sign = +1;
  table[0].representative.canonical_key = 1;
  table[0].multiplicity = 3;
  table[1].representative.sign = -1;
  table[1].representative.canonical_key = 2;
  table[1].representative.corrections = {{0, PauliString::from_text("X")}};
  table[1].multiplicity = 1;
  auto r = mitigated_estimate(table, {0.5, 0.2}, 2.0, 4);
  CHECK(r.estimate == doctest::Approx(0.65).epsilon(1e-15));
  CHECK(r.n_samples == 4);
  CHECK(r.unique_circuits == 2);

  // gamma = 1: plain mean
  auto r1 = mitigated_estimate(table, {0.5, 0.2}, 1.0, 4);
  CHECK(r1.estimate == doctest::Approx((3 * 0.5 - 0.2) / 4.0).epsilon(1e-15));

  CHECK_THROWS_AS(mitigated_estimate(table, {0.5}, 2.0, 4), Error);
}

TEST_CASE("required samples") {
  CHECK(required_samples(1.0, 0.1) == 100);
  CHECK(required_samples(2.0, 0.1) == 400);
  CHECK(required_samples(6.654, 0.05) == 17711);  // ceil(6.654^2 / 0.0025)
  CHECK_THROWS_AS(required_samples(0.5, 0.1), Error);
  CHECK_THROWS_AS(required_samples(2.0, 0.0), Error);
}

TEST_CASE("gamma multiplies across scopes and blocks") {
  Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    auto ch1 = random_invertible(rng, 1);
    auto ch2 = random_invertible(rng, 2);
    BlockRecovery rec;
    rec.scopes.push_back(ScopeRecovery{{0}, invert_channel(ch1)});
    rec.scopes.push_back(ScopeRecovery{{1, 2}, invert_channel(ch2)});
    CHECK(rec.gamma() ==
          doctest::Approx(invert_channel(ch1).gamma() * invert_channel(ch2).gamma()).epsilon(1e-12));
  }
}
