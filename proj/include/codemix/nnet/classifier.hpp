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

#include <span>
#include <vector>

#include "codemix/nnet/sequence_model.hpp"
#include "codemix/nnet/train.hpp"

namespace codemix::nnet {

// Binary sequence classifier: embedding -> stacked LSTM -> final hidden state
// of the top layer -> dense + sigmoid. Trained with binary cross-entropy.
class SequenceClassifier {
 public:
  struct Example {
    std::vector<int> ids;
    double target = 0.0;  // 0 or 1
  };

  SequenceClassifier() = default;
  explicit SequenceClassifier(SequenceModelParams params);

  static SequenceClassifier initialize(const CharVocab& vocab, const ModelDims& dims, Rng& rng);

  // P(class 1 | ids).
  double predict(std::span<const int> ids) const;

  ExampleResult evaluate(const Example& example) const;
  ExampleResult accumulate_gradient(const Example& example, SequenceClassifier& grads) const;
  ParamRefs parameter_blocks();
  SequenceClassifier zeros_like() const;

  const SequenceModelParams& params() const { return params_; }
  SequenceModelParams& params() { return params_; }

  bool operator==(const SequenceClassifier&) const = default;

 private:
  SequenceModelParams params_;
};

}  // namespace codemix::nnet
