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

#include "mosaic/learner.hpp"

#include <algorithm>
#include <cmath>

#include "mosaic/errors.hpp"
#include "mosaic/rng.hpp"

namespace mosaic {

FitProblem::FitProblem(BlockSuperop target) : n_(target.n) {
  diag_ = target.matrix.diagonal();
  Eigen::MatrixXd off = target.matrix;
  off.diagonal().setZero();
  offdiag_sq_ = off.squaredNorm();
}

Eigen::VectorXd FitProblem::probabilities(const Eigen::VectorXd& theta) const {
  double mx = theta.maxCoeff();
  Eigen::VectorXd p = (theta.array() - mx).exp();
  return p / p.sum();
}

double FitProblem::diag_residual_sq(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd lam = probabilities(theta);
  chi_transform(lam, n_);
  return (lam - diag_).squaredNorm();
}

double FitProblem::loss_sq(const Eigen::VectorXd& theta) const {
  return diag_residual_sq(theta) + offdiag_sq_;
}

Eigen::VectorXd FitProblem::grad(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd c = probabilities(theta);
  Eigen::VectorXd lam = c;
  chi_transform(lam, n_);
  Eigen::VectorXd g = 2.0 * (lam - diag_);
  chi_transform(g, n_);  // chi is symmetric: d(loss)/dc = chi * g
  double mean = c.dot(g);
  // softmax Jacobian: dL/dtheta_k = c_k (u_k - <c, u>)
  return c.array() * (g.array() - mean);
}

PauliChannel warm_start_channel(const Block& b, const Scope& scope) {
  int k = static_cast<int>(scope.qubits.size());
  PauliChannel acc = PauliChannel::identity(k);
  for (const auto& models : b.layer_noise) {
    for (const auto& m : models) {
      if (m.terms().empty()) continue;
      bool inside = true;
      for (int q : m.support()) {
        if (!std::binary_search(scope.qubits.begin(), scope.qubits.end(), q)) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      std::vector<std::pair<PauliString, double>> local;
      for (const auto& [p, rate] : m.terms()) local.emplace_back(restrict_to_scope(p, scope.qubits), rate);
      acc = compose_channels(acc, pl_to_pauli_channel(PauliLindbladModel(k, std::move(local))));
    }
  }
  return acc;
}

FitResult fit_scope_channel(const Block& b, const Scope& scope, const FitConfig& cfg) {
  if (cfg.tolerance <= 0.0) throw config_error("fit tolerance must be positive");
  if (cfg.restarts < 1) throw config_error("fit restarts must be >= 1");
  int k = static_cast<int>(scope.qubits.size());
  BlockSuperop target = block_fit_target(b, scope);
  FitProblem problem(target);
  const Eigen::Index dim = problem.dim();

  // Warm start from the clamped least-squares solution: the back-transformed
  // target diagonal. Exact whenever the target is a physical Pauli channel
  // (identity or Clifford block unitaries), near-optimal otherwise. Logits
  // seeded from far below the optimum move too slowly through the softmax.
  Eigen::VectorXd c0 = target.matrix.diagonal();
  chi_transform(c0, k);
  c0 /= std::pow(4.0, k);
  Eigen::VectorXd theta0(dim);
  for (Eigen::Index i = 0; i < dim; ++i) theta0[i] = std::log(std::max(c0[i], 1e-10));

  Rng rng(cfg.seed);
  AdamParams ap = cfg.adam;
  ap.learning_rate = cfg.learning_rate;

  FitResult best;
  bool have_best = false;
  double tol_sq = cfg.tolerance * cfg.tolerance;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Eigen::VectorXd theta = theta0;
    if (restart > 0) {
      for (Eigen::Index i = 0; i < dim; ++i) theta[i] += 0.05 * restart * rng.next_normal();
    }
    AdamOptimizer adam(static_cast<std::size_t>(dim), ap);
    std::vector<double> x(theta.data(), theta.data() + dim);
    std::vector<double> g(static_cast<std::size_t>(dim));

    Eigen::VectorXd run_best_theta = theta;
    double run_best_diag = problem.diag_residual_sq(theta);
    std::vector<double> trace;
    trace.reserve(static_cast<std::size_t>(cfg.max_iters) + 1);
    trace.push_back(std::sqrt(run_best_diag + problem.offdiag_sq()));
    int iters = 0;
    for (int it = 1; it <= cfg.max_iters; ++it) {
      Eigen::Map<Eigen::VectorXd> theta_map(x.data(), dim);
      Eigen::VectorXd grad = problem.grad(theta_map);
      std::copy(grad.data(), grad.data() + dim, g.begin());
      // stepwise decay keeps Adam from orbiting the optimum at fixed rate;
      // the half-life budgets enough total travel for logits starting at the
      // warm-start floor to reach O(1) probabilities
      double scale = std::pow(0.5, it / 500);
      adam.step(x, g, scale);
      iters = it;
      double d = problem.diag_residual_sq(theta_map);
      trace.push_back(std::sqrt(d + problem.offdiag_sq()));
      if (d < run_best_diag) {
        run_best_diag = d;
        run_best_theta = theta_map;
      }
      if (run_best_diag <= tol_sq * 1e-4) break;  // far past tolerance, stop early
    }

    FitResult res;
    Eigen::VectorXd probs = problem.probabilities(run_best_theta);
    // drop floor-level mass left over from the logit clamp, then renormalize;
    // a noiseless target comes out as the exact identity channel
    double kept = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (probs[i] <= 1e-9) probs[i] = 0.0;
      kept += probs[i];
    }
    std::vector<std::pair<PauliString, double>> coeffs;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (probs[i] > 0.0) {
        coeffs.emplace_back(pauli_from_index(k, static_cast<std::uint64_t>(i)), probs[i] / kept);
      }
    }
    res.channel = PauliChannel(k, std::move(coeffs));
    res.diag_residual = std::sqrt(run_best_diag);
    res.offdiag_residual = std::sqrt(problem.offdiag_sq());
    res.final_loss = std::sqrt(run_best_diag + problem.offdiag_sq());
    res.loss_trace = std::move(trace);
    res.converged = run_best_diag <= tol_sq;
    res.iterations = iters;
    res.restarts_used = restart + 1;
    if (!have_best || res.diag_residual < best.diag_residual) {
      best = std::move(res);
      have_best = true;
      best.restarts_used = restart + 1;
    }
    if (best.converged) break;  // further restarts only perturb a solved fit
  }
  return best;
}

std::vector<ScopeFit> fit_block_channels(const Block& b, const FitConfig& cfg) {
  std::vector<ScopeFit> fits;
  fits.reserve(b.scopes.size());
  for (std::size_t si = 0; si < b.scopes.size(); ++si) {
    FitConfig scoped = cfg;
    // decorrelate restarts across scopes and blocks deterministically
    scoped.seed = cfg.seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(b.id) * 131 + si + 1));
    fits.push_back(ScopeFit{b.scopes[si], fit_scope_channel(b, b.scopes[si], scoped)});
  }
  return fits;
}

}  // namespace mosaic
