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

#include "codemix/nnet/classifier.hpp"

#include <stdexcept>

namespace codemix::nnet {

SequenceClassifier::SequenceClassifier(SequenceModelParams params) : params_(std::move(params)) {
  params_.validate();
  if (params_.output.output_dim() != 1) throw std::invalid_argument("classifier needs one output");
}

SequenceClassifier SequenceClassifier::initialize(const CharVocab& vocab, const ModelDims& dims, Rng& rng) {
  return SequenceClassifier(SequenceModelParams::initialize(vocab, dims, 1, rng));
}

double SequenceClassifier::predict(std::span<const int> ids) const {
  const auto initial = zero_states(params_);
  const StackOutput out = stack_forward(params_, ids, initial);
  const Vector& top = out.final_states.back().h;
  return dense_forward(params_.output.weight, params_.output.bias, top, Activation::kSigmoid)[0];
}

ExampleResult SequenceClassifier::evaluate(const Example& example) const {
  const double p = predict(example.ids);
  return {bce_loss(p, example.target), 1.0, (p >= 0.5) == (example.target >= 0.5)};
}

ExampleResult SequenceClassifier::accumulate_gradient(const Example& example,
                                                      SequenceClassifier& grads) const {
  const auto initial = zero_states(params_);
  StackTrace trace;
  const StackOutput out = stack_forward(params_, example.ids, initial, &trace);
  const Vector& top = out.final_states.back().h;
  const double p = dense_forward(params_.output.weight, params_.output.bias, top, Activation::kSigmoid)[0];

  // d(BCE)/d(logit) for a sigmoid output.
  const double d_logit = p - example.target;
  const Vector d_logits{d_logit};
  outer_add(grads.params_.output.weight, d_logits, top);
  grads.params_.output.bias[0] += d_logit;

  std::vector<LstmState> d_final(params_.layers.size());
  d_final.back().h = Vector(top.size());
  multiply_transpose_add(params_.output.weight, d_logits, d_final.back().h);
  stack_backward(params_, trace, {}, d_final, grads.params_);

  return {bce_loss(p, example.target), 1.0, (p >= 0.5) == (example.target >= 0.5)};
}

ParamRefs SequenceClassifier::parameter_blocks() {
  ParamRefs refs;
  params_.collect(refs);
  return refs;
}

SequenceClassifier SequenceClassifier::zeros_like() const {
  SequenceClassifier g;
  g.params_ = params_.zeros_like();
  return g;
}

}  // namespace codemix::nnet
