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

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "codemix/nnet/matrix.hpp"

namespace codemix::nnet {

struct TrainConfig {
  std::size_t batch_size = 30;
  std::size_t epochs = 30;
  double validation_split = 0.2;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 42;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

// First and second moment estimates, one vector per parameter block.
struct AdamMoments {
  std::vector<Vector> m;
  std::vector<Vector> v;

  static AdamMoments zeros_like(const ParamRefs& params);
};

// One bias-corrected Adam update at step t (t >= 1). Returns false and leaves
// params and moments untouched if any gradient is non-finite.
bool adam_step(const ParamRefs& params, const ParamRefs& grads, AdamMoments& moments,
               std::size_t t, const TrainConfig& cfg);

// Loss of one example. The batch objective is sum(loss) / sum(weight), so a
// sequence model reports its summed token loss with weight = token count.
struct ExampleResult {
  double loss = 0.0;
  double weight = 1.0;
  bool correct = false;
};

// A model trainable by train(): gradients live in a zero-initialized model of
// the same shape, and parameter_blocks() of the two line up.
template <typename M>
concept Trainable = requires(M& model, const M& cmodel, const typename M::Example& ex, M& grads) {
  typename M::Example;
  { model.parameter_blocks() } -> std::same_as<ParamRefs>;
  { cmodel.zeros_like() } -> std::same_as<M>;
  { cmodel.evaluate(ex) } -> std::same_as<ExampleResult>;
  { cmodel.accumulate_gradient(ex, grads) } -> std::same_as<ExampleResult>;
};

struct EpochMetrics {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double validation_loss = 0.0;
  double validation_accuracy = 0.0;
  std::size_t skipped_steps = 0;
};

struct TrainReport {
  std::vector<EpochMetrics> epochs;
  std::size_t train_size = 0;
  std::size_t validation_size = 0;
};

// Index partition used by train(): one seeded shuffle, validation is the last
// ceil(split * n) indices.
struct DataSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};
DataSplit split_dataset(std::size_t n, double validation_split, std::uint64_t seed);

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};

template <Trainable M>
Evaluation evaluate_examples(const M& model, std::span<const typename M::Example> data,
                             std::span<const std::size_t> indices) {
  if (indices.empty()) return {};
  double loss = 0.0;
  double weight = 0.0;
  std::size_t correct = 0;
  for (std::size_t idx : indices) {
    const ExampleResult r = model.evaluate(data[idx]);
    loss += r.loss;
    weight += r.weight;
    correct += r.correct ? 1 : 0;
  }
  return {weight > 0.0 ? loss / weight : 0.0,
          static_cast<double>(correct) / static_cast<double>(indices.size())};
}

// Mini-batch Adam. Epoch metrics are measured on the full partitions after
// each epoch's updates.
template <Trainable M>
TrainReport train(M& model, std::span<const typename M::Example> data, const TrainConfig& cfg) {
  cfg.validate();
  if (data.empty()) throw std::invalid_argument("training set is empty");
  DataSplit split = split_dataset(data.size(), cfg.validation_split, cfg.seed);
  if (split.train.empty()) throw std::invalid_argument("training partition is empty after split");

  TrainReport report;
  report.train_size = split.train.size();
  report.validation_size = split.validation.size();

  Rng rng(cfg.seed ^ 0x9E3779B97F4A7C15ULL);
  ParamRefs params = model.parameter_blocks();
  AdamMoments moments = AdamMoments::zeros_like(params);
  M grads = model.zeros_like();
  ParamRefs grad_refs = grads.parameter_blocks();
  std::size_t step = 0;

  std::vector<std::size_t> order = split.train;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    EpochMetrics metrics;
    metrics.epoch = epoch;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      for (auto& block : grad_refs) std::fill(block.begin(), block.end(), 0.0);
      double weight = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        weight += model.accumulate_gradient(data[order[k]], grads).weight;
      }
      if (weight <= 0.0) continue;
      const double scale = 1.0 / weight;
      for (auto& block : grad_refs) {
        for (double& g : block) g *= scale;
      }
      ++step;
      if (!adam_step(params, grad_refs, moments, step, cfg)) {
        --step;
        ++metrics.skipped_steps;
      }
    }
    const Evaluation tr = evaluate_examples<M>(model, data, split.train);
    const Evaluation va = evaluate_examples<M>(model, data, split.validation);
    metrics.train_loss = tr.loss;
    metrics.train_accuracy = tr.accuracy;
    metrics.validation_loss = va.loss;
    metrics.validation_accuracy = va.accuracy;
    report.epochs.push_back(metrics);
  }
  return report;
}

// Largest relative error between backprop gradients and central differences
// over every parameter. Relative error is |a - n| / max(|a| + |n|, 1e-6).
template <Trainable M>
double grad_check(const M& model, const typename M::Example& example, double step = 1e-5) {
  M analytic = model.zeros_like();
  const double weight = model.accumulate_gradient(example, analytic).weight;
  const double scale = weight > 0.0 ? 1.0 / weight : 0.0;
  ParamRefs grad_refs = analytic.parameter_blocks();

  M probe = model;
  ParamRefs probe_refs = probe.parameter_blocks();
  auto loss_at = [&]() {
    const ExampleResult r = probe.evaluate(example);
    return r.weight > 0.0 ? r.loss / r.weight : 0.0;
  };

  double worst = 0.0;
  for (std::size_t b = 0; b < probe_refs.size(); ++b) {
    for (std::size_t i = 0; i < probe_refs[b].size(); ++i) {
      double& theta = probe_refs[b][i];
      const double saved = theta;
      theta = saved + step;
      const double up = loss_at();
      theta = saved - step;
      const double down = loss_at();
      theta = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double backprop = grad_refs[b][i] * scale;
      const double denom = std::max(std::abs(numeric) + std::abs(backprop), 1e-6);
      worst = std::max(worst, std::abs(numeric - backprop) / denom);
    }
  }
  return worst;
}

}  // namespace codemix::nnet
