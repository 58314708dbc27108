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

#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "codemix/nnet/layers.hpp"
#include "codemix/nnet/matrix.hpp"

namespace codemix::nnet {

// Character inventory. Ids 0..3 are reserved for PAD, UNK, SOS and EOS;
// characters follow in insertion order.
class CharVocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kSos = 2;
  static constexpr int kEos = 3;
  static constexpr int kNumReserved = 4;

  CharVocab() = default;
  explicit CharVocab(std::span<const char32_t> chars);

  // Builds a vocab from every distinct code point in texts, sorted.
  static CharVocab from_texts(std::span<const std::u32string> texts);

  std::size_t size() const { return kNumReserved + chars_.size(); }
  const std::vector<char32_t>& chars() const { return chars_; }

  int id_of(char32_t cp) const;
  // Reserved ids map to U'\0'.
  char32_t char_of(int id) const;
  std::vector<int> encode(std::u32string_view text) const;

  bool operator==(const CharVocab& other) const { return chars_ == other.chars_; }

 private:
  std::vector<char32_t> chars_;
  std::map<char32_t, int> index_;
};

struct ModelDims {
  std::size_t embed_dim = 32;
  std::size_t hidden_dim = 64;
  std::size_t num_layers = 2;
};

// Embedding -> stacked LSTM -> dense output.
struct SequenceModelParams {
  CharVocab vocab;
  Matrix embedding;  // vocab x embed
  std::vector<LstmLayerParams> layers;
  DenseParams output;

  // Glorot-uniform weights, zero biases. output_dim may be 0 for an encoder.
  static SequenceModelParams initialize(const CharVocab& vocab, const ModelDims& dims,
                                        std::size_t output_dim, Rng& rng);
  SequenceModelParams zeros_like() const;
  void collect(ParamRefs& refs);
  std::size_t embed_dim() const { return embedding.cols(); }
  std::size_t top_hidden_dim() const { return layers.empty() ? embed_dim() : layers.back().hidden_dim; }
  // Throws ModelError if layer dimensions do not chain.
  void validate() const;

  bool operator==(const SequenceModelParams&) const = default;
};

struct StackTrace {
  std::vector<int> ids;
  std::vector<std::vector<LstmStepTrace>> layers;
};

struct StackOutput {
  std::vector<Vector> top_hidden;    // top layer output per step
  std::vector<LstmState> final_states;  // one per layer
};

std::vector<LstmState> zero_states(const SequenceModelParams& params);

// Runs the embedding and every LSTM layer over ids.
StackOutput stack_forward(const SequenceModelParams& params, std::span<const int> ids,
                          std::span<const LstmState> initial, StackTrace* trace = nullptr);

// Advances the stack by one symbol, updating states in place. Returns the
// top layer's hidden vector.
const Vector& stack_step(const SequenceModelParams& params, int id, std::vector<LstmState>& states);

// Accumulates parameter gradients (embedding and LSTM layers) into grads and
// returns the gradient with respect to each layer's initial state.
std::vector<LstmState> stack_backward(const SequenceModelParams& params, const StackTrace& trace,
                                      std::span<const Vector> d_top_hidden,
                                      std::span<const LstmState> d_final,
                                      SequenceModelParams& grads);

}  // namespace codemix::nnet
