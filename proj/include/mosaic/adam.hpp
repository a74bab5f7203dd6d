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

#include <cmath>
#include <vector>

namespace mosaic {

struct AdamParams {
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Stateful Adam update with bias correction. Callers own the iteration loop
// and any learning-rate schedule via the `lr_scale` argument.
class AdamOptimizer {
 public:
  AdamOptimizer(std::size_t dim, AdamParams params = {})
      : params_(params), m1_(dim, 0.0), m2_(dim, 0.0) {}

  void step(std::vector<double>& x, const std::vector<double>& grad, double lr_scale = 1.0) {
    ++t_;
    double c1 = 1.0 - std::pow(params_.beta1, t_);
    double c2 = 1.0 - std::pow(params_.beta2, t_);
    double lr = params_.learning_rate * lr_scale;
    for (std::size_t i = 0; i < x.size(); ++i) {
      m1_[i] = params_.beta1 * m1_[i] + (1.0 - params_.beta1) * grad[i];
      m2_[i] = params_.beta2 * m2_[i] + (1.0 - params_.beta2) * grad[i] * grad[i];
      x[i] -= lr * (m1_[i] / c1) / (std::sqrt(m2_[i] / c2) + params_.epsilon);
    }
  }

  void reset() {
    t_ = 0;
    std::fill(m1_.begin(), m1_.end(), 0.0);
    std::fill(m2_.begin(), m2_.end(), 0.0);
  }

 private:
  AdamParams params_;
  int t_ = 0;
  std::vector<double> m1_;
  std::vector<double> m2_;
};

}  // namespace mosaic
