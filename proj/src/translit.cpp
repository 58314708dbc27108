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

#include "codemix/translit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "codemix/nnet/serialize.hpp"
#include "codemix/utf8.hpp"

namespace codemix::translit {
namespace {

constexpr std::string_view kModelKind = "translit";

using nnet::CharVocab;
using nnet::Vector;

// Index of the largest logit among symbols the decoder may emit.
int best_symbol(std::span<const double> logits) {
  int best = CharVocab::kEos;
  for (int id = CharVocab::kEos + 1; id < static_cast<int>(logits.size()); ++id) {
    if (logits[static_cast<std::size_t>(id)] > logits[static_cast<std::size_t>(best)]) best = id;
  }
  return best;
}

std::vector<int> encode_source(const CharVocab& vocab, std::string_view roman) {
  return vocab.encode(utf8::fold_case(utf8::decode(roman)));
}

}  // namespace

std::vector<TranslitPair> parse_pairs(std::string_view content, std::string_view source_name) {
  std::vector<TranslitPair> pairs;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto tab = line.find('\t');
    std::string roman = tab == std::string::npos ? std::string() : line.substr(0, tab);
    std::string target = tab == std::string::npos ? std::string() : line.substr(tab + 1);
    if (roman.empty() || target.empty() || target.find('\t') != std::string::npos ||
        roman.find(' ') != std::string::npos || target.find(' ') != std::string::npos) {
      std::ostringstream msg;
      msg << source_name << ":" << line_no << ": expected 'roman<TAB>devanagari' single tokens";
      throw DataError(msg.str());
    }
    pairs.push_back({std::move(roman), std::move(target)});
  }
  return pairs;
}

std::vector<TranslitPair> load_pairs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read pair file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pairs(buf.str(), path.string());
}

TeacherForcing teacher_forcing(std::span<const int> target) {
  TeacherForcing tf;
  tf.inputs.reserve(target.size() + 1);
  tf.inputs.push_back(CharVocab::kSos);
  tf.inputs.insert(tf.inputs.end(), target.begin(), target.end());
  tf.targets.assign(target.begin(), target.end());
  tf.targets.push_back(CharVocab::kEos);
  return tf;
}

Seq2SeqModel::Seq2SeqModel(nnet::SequenceModelParams encoder, nnet::SequenceModelParams decoder)
    : encoder_(std::move(encoder)), decoder_(std::move(decoder)) {
  encoder_.validate();
  decoder_.validate();
  if (encoder_.layers.size() != decoder_.layers.size()) {
    throw ModelError("encoder and decoder must have the same number of layers");
  }
  for (std::size_t l = 0; l < encoder_.layers.size(); ++l) {
    if (encoder_.layers[l].hidden_dim != decoder_.layers[l].hidden_dim) {
      throw ModelError("decoder initial state dims must match encoder final state dims");
    }
  }
  if (decoder_.output.output_dim() != decoder_.vocab.size()) {
    throw ModelError("decoder output layer must cover the target vocabulary");
  }
}

Seq2SeqModel Seq2SeqModel::initialize(const CharVocab& source_vocab, const CharVocab& target_vocab,
                                      const nnet::ModelDims& dims, nnet::Rng& rng) {
  auto encoder = nnet::SequenceModelParams::initialize(source_vocab, dims, 0, rng);
  auto decoder = nnet::SequenceModelParams::initialize(target_vocab, dims, target_vocab.size(), rng);
  return Seq2SeqModel(std::move(encoder), std::move(decoder));
}

Seq2SeqModel::Example Seq2SeqModel::make_example(const TranslitPair& pair) const {
  return {encode_source(encoder_.vocab, pair.roman), decoder_.vocab.encode(utf8::decode(pair.devanagari))};
}

nnet::ExampleResult Seq2SeqModel::evaluate(const Example& example) const {
  const auto enc = nnet::stack_forward(encoder_, example.source, nnet::zero_states(encoder_));
  const TeacherForcing tf = teacher_forcing(example.target);
  const auto dec = nnet::stack_forward(decoder_, tf.inputs, enc.final_states);
  nnet::ExampleResult result{0.0, static_cast<double>(tf.targets.size()), true};
  for (std::size_t t = 0; t < tf.targets.size(); ++t) {
    const Vector logits =
        nnet::dense_forward(decoder_.output.weight, decoder_.output.bias, dec.top_hidden[t], nnet::Activation::kNone);
    const auto target = static_cast<std::size_t>(tf.targets[t]);
    result.loss += nnet::cce_loss(nnet::softmax(logits), target);
    if (std::max_element(logits.begin(), logits.end()) - logits.begin() != static_cast<std::ptrdiff_t>(target)) {
      result.correct = false;
    }
  }
  return result;
}

nnet::ExampleResult Seq2SeqModel::accumulate_gradient(const Example& example, Seq2SeqModel& grads) const {
  nnet::StackTrace enc_trace;
  const auto enc = nnet::stack_forward(encoder_, example.source, nnet::zero_states(encoder_), &enc_trace);
  const TeacherForcing tf = teacher_forcing(example.target);
  nnet::StackTrace dec_trace;
  const auto dec = nnet::stack_forward(decoder_, tf.inputs, enc.final_states, &dec_trace);

  nnet::ExampleResult result{0.0, static_cast<double>(tf.targets.size()), true};
  std::vector<Vector> d_hidden(tf.targets.size(), Vector(decoder_.top_hidden_dim()));
  for (std::size_t t = 0; t < tf.targets.size(); ++t) {
    const Vector& h = dec.top_hidden[t];
    const Vector logits =
        nnet::dense_forward(decoder_.output.weight, decoder_.output.bias, h, nnet::Activation::kNone);
    const auto target = static_cast<std::size_t>(tf.targets[t]);
    Vector d_logits = nnet::softmax(logits);
    result.loss += nnet::cce_loss(d_logits, target);
    if (std::max_element(logits.begin(), logits.end()) - logits.begin() != static_cast<std::ptrdiff_t>(target)) {
      result.correct = false;
    }
    d_logits[target] -= 1.0;
    nnet::outer_add(grads.decoder_.output.weight, d_logits, h);
    for (std::size_t k = 0; k < d_logits.size(); ++k) grads.decoder_.output.bias[k] += d_logits[k];
    nnet::multiply_transpose_add(decoder_.output.weight, d_logits, d_hidden[t]);
  }
  const auto d_context = nnet::stack_backward(decoder_, dec_trace, d_hidden, {}, grads.decoder_);
  nnet::stack_backward(encoder_, enc_trace, {}, d_context, grads.encoder_);
  return result;
}

nnet::ParamRefs Seq2SeqModel::parameter_blocks() {
  nnet::ParamRefs refs;
  encoder_.collect(refs);
  decoder_.collect(refs);
  return refs;
}

Seq2SeqModel Seq2SeqModel::zeros_like() const {
  Seq2SeqModel g;
  g.encoder_ = encoder_.zeros_like();
  g.decoder_ = decoder_.zeros_like();
  return g;
}

std::vector<int> Seq2SeqModel::greedy_decode(std::span<const int> source) const {
  if (decoder_.layers.empty()) throw std::logic_error("transliteration model is not trained");
  std::vector<nnet::LstmState> states =
      nnet::stack_forward(encoder_, source, nnet::zero_states(encoder_)).final_states;
  std::vector<int> out;
  const std::size_t limit = decode_options.max_length(source.size());
  int symbol = CharVocab::kSos;
  while (out.size() < limit) {
    const Vector& h = nnet::stack_step(decoder_, symbol, states);
    const Vector logits =
        nnet::dense_forward(decoder_.output.weight, decoder_.output.bias, h, nnet::Activation::kNone);
    symbol = best_symbol(logits);
    if (symbol == CharVocab::kEos) break;
    out.push_back(symbol);
  }
  return out;
}

std::string Seq2SeqModel::transliterate(std::string_view roman) const {
  std::u32string chars;
  for (int id : greedy_decode(encode_source(encoder_.vocab, roman))) chars.push_back(decoder_.vocab.char_of(id));
  return utf8::encode(chars);
}

void Seq2SeqModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path.string());
  nnet::BinaryWriter w(out);
  nnet::write_header(w, kModelKind);
  nnet::write_params(w, encoder_);
  nnet::write_params(w, decoder_);
  if (!out) throw IoError("failed writing model file: " + path.string());
}

Seq2SeqModel Seq2SeqModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read model file: " + path.string());
  nnet::BinaryReader r(in);
  try {
    nnet::read_header(r, kModelKind);
    auto encoder = nnet::read_params(r);
    auto decoder = nnet::read_params(r);
    return Seq2SeqModel(std::move(encoder), std::move(decoder));
  } catch (const ModelError& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
}

nnet::TrainConfig default_translit_config() {
  nnet::TrainConfig cfg;
  cfg.batch_size = 1024;
  cfg.epochs = 50;
  cfg.validation_split = 0.1;
  return cfg;
}

TranslitTraining train_translit(std::span<const TranslitPair> pairs, const nnet::TrainConfig& cfg,
                                const nnet::ModelDims& dims) {
  if (pairs.empty()) throw std::invalid_argument("transliteration dataset is empty");
  std::vector<std::u32string> sources;
  std::vector<std::u32string> targets;
  for (const auto& p : pairs) {
    sources.push_back(utf8::fold_case(utf8::decode(p.roman)));
    targets.push_back(utf8::decode(p.devanagari));
  }
  nnet::Rng rng(cfg.seed);
  auto model = Seq2SeqModel::initialize(CharVocab::from_texts(sources), CharVocab::from_texts(targets), dims, rng);
  std::vector<Seq2SeqModel::Example> examples;
  examples.reserve(pairs.size());
  for (const auto& p : pairs) examples.push_back(model.make_example(p));
  TranslitTraining result;
  result.report = nnet::train(model, std::span<const Seq2SeqModel::Example>(examples), cfg);
  result.model = std::move(model);
  return result;
}

double exact_match(const Transliterator& model, std::span<const TranslitPair> pairs) {
  if (pairs.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& p : pairs) hits += model.transliterate(p.roman) == p.devanagari ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

std::vector<std::string> transliterate_segment(const Transliterator& model, const segment::Segment& seg) {
  if (seg.language != LanguageTag::kBengali) throw std::invalid_argument("transliterate_segment: segment is not BN");
  std::vector<std::string> out;
  out.reserve(seg.tokens.size());
  for (const auto& token : seg.tokens) out.push_back(model.transliterate(token.surface));
  return out;
}

}  // namespace codemix::translit
