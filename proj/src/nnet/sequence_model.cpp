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

#include "codemix/nnet/sequence_model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "codemix/types.hpp"

namespace codemix::nnet {

CharVocab::CharVocab(std::span<const char32_t> chars) {
  for (char32_t cp : chars) {
    if (index_.contains(cp)) continue;
    index_.emplace(cp, static_cast<int>(kNumReserved + chars_.size()));
    chars_.push_back(cp);
  }
}

CharVocab CharVocab::from_texts(std::span<const std::u32string> texts) {
  std::set<char32_t> seen;
  for (const auto& text : texts) seen.insert(text.begin(), text.end());
  const std::vector<char32_t> sorted(seen.begin(), seen.end());
  return CharVocab(sorted);
}

int CharVocab::id_of(char32_t cp) const {
  auto it = index_.find(cp);
  return it == index_.end() ? kUnk : it->second;
}

char32_t CharVocab::char_of(int id) const {
  if (id < kNumReserved || static_cast<std::size_t>(id) >= size()) return U'\0';
  return chars_[static_cast<std::size_t>(id - kNumReserved)];
}

std::vector<int> CharVocab::encode(std::u32string_view text) const {
  std::vector<int> ids;
  ids.reserve(text.size());
  for (char32_t cp : text) ids.push_back(id_of(cp));
  return ids;
}

SequenceModelParams SequenceModelParams::initialize(const CharVocab& vocab, const ModelDims& dims,
                                                    std::size_t output_dim, Rng& rng) {
  if (dims.num_layers == 0 || dims.embed_dim == 0 || dims.hidden_dim == 0) {
    throw std::invalid_argument("model dims must be positive");
  }
  SequenceModelParams p;
  p.vocab = vocab;
  p.embedding = Matrix(vocab.size(), dims.embed_dim);
  glorot_uniform(p.embedding, rng);
  std::size_t in = dims.embed_dim;
  for (std::size_t l = 0; l < dims.num_layers; ++l) {
    auto layer = LstmLayerParams::zeros(in, dims.hidden_dim);
    for (std::size_t k = 0; k < kNumGates; ++k) {
      glorot_uniform(layer.w[k], rng);
      glorot_uniform(layer.u[k], rng);
    }
    p.layers.push_back(std::move(layer));
    in = dims.hidden_dim;
  }
  p.output = DenseParams::zeros(in, output_dim);
  glorot_uniform(p.output.weight, rng);
  return p;
}

SequenceModelParams SequenceModelParams::zeros_like() const {
  SequenceModelParams g;
  g.vocab = vocab;
  g.embedding = Matrix(embedding.rows(), embedding.cols());
  for (const auto& layer : layers) g.layers.push_back(LstmLayerParams::zeros(layer.input_dim, layer.hidden_dim));
  g.output = DenseParams::zeros(output.input_dim(), output.output_dim());
  return g;
}

void SequenceModelParams::collect(ParamRefs& refs) {
  refs.emplace_back(embedding.values());
  for (auto& layer : layers) layer.collect(refs);
  output.collect(refs);
}

void SequenceModelParams::validate() const {
  if (embedding.rows() != vocab.size()) throw ModelError("embedding rows do not match vocab size");
  std::size_t in = embedding.cols();
  for (const auto& layer : layers) {
    if (layer.input_dim != in) throw ModelError("LSTM layer input dim does not chain");
    for (std::size_t k = 0; k < kNumGates; ++k) {
      if (layer.w[k].rows() != layer.hidden_dim || layer.w[k].cols() != layer.input_dim ||
          layer.u[k].rows() != layer.hidden_dim || layer.u[k].cols() != layer.hidden_dim ||
          layer.b[k].size() != layer.hidden_dim) {
        throw ModelError("LSTM gate shape mismatch");
      }
    }
    in = layer.hidden_dim;
  }
  if (output.output_dim() > 0 && output.input_dim() != in) {
    throw ModelError("output layer input dim does not match top hidden dim");
  }
  if (output.bias.size() != output.output_dim()) throw ModelError("output bias shape mismatch");
}

std::vector<LstmState> zero_states(const SequenceModelParams& params) {
  std::vector<LstmState> states;
  for (const auto& layer : params.layers) states.push_back(LstmState::zeros(layer.hidden_dim));
  return states;
}

namespace {

std::vector<Vector> embed(const SequenceModelParams& params, std::span<const int> ids) {
  std::vector<Vector> rows;
  rows.reserve(ids.size());
  for (int id : ids) {
    const auto row = params.embedding.row(static_cast<std::size_t>(id));
    rows.emplace_back(row.begin(), row.end());
  }
  return rows;
}

}  // namespace

StackOutput stack_forward(const SequenceModelParams& params, std::span<const int> ids,
                          std::span<const LstmState> initial, StackTrace* trace) {
  if (initial.size() != params.layers.size()) throw std::invalid_argument("shape mismatch: stack states");
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= params.embedding.rows()) {
      throw std::invalid_argument("symbol id out of range");
    }
  }
  StackOutput out;
  std::vector<Vector> current = embed(params, ids);
  if (trace != nullptr) {
    trace->ids.assign(ids.begin(), ids.end());
    trace->layers.assign(params.layers.size(), {});
  }
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    LstmOutput layer_out =
        lstm_forward(params.layers[l], current, initial[l], trace != nullptr ? &trace->layers[l] : nullptr);
    out.final_states.push_back(std::move(layer_out.final_state));
    current = std::move(layer_out.hidden);
  }
  out.top_hidden = std::move(current);
  return out;
}

const Vector& stack_step(const SequenceModelParams& params, int id, std::vector<LstmState>& states) {
  const auto row = params.embedding.row(static_cast<std::size_t>(id));
  const std::span<const double> x0(row.data(), row.size());
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const std::span<const double> x = l == 0 ? x0 : std::span<const double>(states[l - 1].h);
    states[l] = lstm_step(params.layers[l], x, states[l]);
  }
  return states.back().h;
}

std::vector<LstmState> stack_backward(const SequenceModelParams& params, const StackTrace& trace,
                                      std::span<const Vector> d_top_hidden,
                                      std::span<const LstmState> d_final,
                                      SequenceModelParams& grads) {
  const std::size_t n_layers = params.layers.size();
  std::vector<LstmState> d_initial(n_layers);
  std::vector<Vector> d_out(d_top_hidden.begin(), d_top_hidden.end());
  for (std::size_t l = n_layers; l-- > 0;) {
    const LstmState d_fin = d_final.empty() ? LstmState{} : d_final[l];
    LstmGradients g = lstm_backward(params.layers[l], trace.layers[l], d_out, d_fin, grads.layers[l]);
    d_initial[l] = std::move(g.d_initial);
    d_out = std::move(g.d_inputs);
  }
  for (std::size_t t = 0; t < trace.ids.size(); ++t) {
    auto row = grads.embedding.row(static_cast<std::size_t>(trace.ids[t]));
    const Vector& d = d_out[t];
    for (std::size_t k = 0; k < row.size() && k < d.size(); ++k) row[k] += d[k];
  }
  return d_initial;
}

}  // namespace codemix::nnet
