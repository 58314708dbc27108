// Copyright 2026 The codemix Authors.
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

#include "codemix/nnet/train.hpp"

namespace codemix::nnet {

void TrainConfig::validate() const {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(validation_split >= 0.0 && validation_split < 1.0)) {
    throw std::invalid_argument("validation_split must be in [0, 1)");
  }
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("Adam betas must be in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

AdamMoments AdamMoments::zeros_like(const ParamRefs& params) {
  AdamMoments moments;
  for (const auto& block : params) {
    moments.m.emplace_back(block.size(), 0.0);
    moments.v.emplace_back(block.size(), 0.0);
  }
  return moments;
}

bool adam_step(const ParamRefs& params, const ParamRefs& grads, AdamMoments& moments,
               std::size_t t, const TrainConfig& cfg) {
  if (t < 1) throw std::invalid_argument("adam_step: t must be >= 1");
  if (params.size() != grads.size() || params.size() != moments.m.size()) {
    throw std::invalid_argument("adam_step: shape mismatch");
  }
  for (std::size_t b = 0; b < grads.size(); ++b) {
    if (grads[b].size() != params[b].size()) throw std::invalid_argument("adam_step: shape mismatch");
    for (double g : grads[b]) {
      if (!std::isfinite(g)) return false;
    }
  }
  const double td = static_cast<double>(t);
  const double correction1 = 1.0 - std::pow(cfg.beta1, td);
  const double correction2 = 1.0 - std::pow(cfg.beta2, td);
  for (std::size_t b = 0; b < params.size(); ++b) {
    auto& m = moments.m[b];
    auto& v = moments.v[b];
    for (std::size_t i = 0; i < params[b].size(); ++i) {
      const double g = grads[b][i];
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g;
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g * g;
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      params[b][i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
  }
  return true;
}

DataSplit split_dataset(std::size_t n, double validation_split, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  // The tolerance keeps e.g. 0.1 * 30 from rounding up to 4.
  const auto n_val = static_cast<std::size_t>(std::ceil(validation_split * static_cast<double>(n) - 1e-9));
  DataSplit split;
  split.train.assign(order.begin(), order.end() - static_cast<std::ptrdiff_t>(std::min(n_val, n)));
  split.validation.assign(order.end() - static_cast<std::ptrdiff_t>(std::min(n_val, n)), order.end());
  return split;
}

}  // namespace codemix::nnet
