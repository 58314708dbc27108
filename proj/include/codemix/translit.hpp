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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codemix/nnet/sequence_model.hpp"
#include "codemix/nnet/train.hpp"
#include "codemix/segment.hpp"

namespace codemix::translit {

struct TranslitPair {
  std::string roman;
  std::string devanagari;
};

// UTF-8 TSV "roman<TAB>devanagari". Throws DataError naming the bad line.
std::vector<TranslitPair> load_pairs(const std::filesystem::path& path);
std::vector<TranslitPair> parse_pairs(std::string_view content, std::string_view source_name = "<pairs>");

// Word-level transliteration interface used by the tagging pipeline.
class Transliterator {
 public:
  virtual ~Transliterator() = default;
  virtual std::string transliterate(std::string_view roman) const = 0;
};

// Decoder input is SOS followed by the target; the expected output is the
// target followed by EOS, i.e. the input shifted by one step.
struct TeacherForcing {
  std::vector<int> inputs;
  std::vector<int> targets;
};
TeacherForcing teacher_forcing(std::span<const int> target);

struct DecodeOptions {
  double length_factor = 2.0;
  std::size_t length_offset = 8;

  std::size_t max_length(std::size_t source_length) const {
    return static_cast<std::size_t>(length_factor * static_cast<double>(source_length)) + length_offset;
  }
};

// Character encoder-decoder. Both halves are stacked LSTMs; the decoder starts
// from the encoder's final per-layer states and predicts target characters
// through a softmax layer. Trained with sparse categorical cross-entropy.
class Seq2SeqModel final : public Transliterator {
 public:
  struct Example {
    std::vector<int> source;
    std::vector<int> target;  // target characters, no SOS/EOS
  };

  Seq2SeqModel() = default;
  Seq2SeqModel(nnet::SequenceModelParams encoder, nnet::SequenceModelParams decoder);

  static Seq2SeqModel initialize(const nnet::CharVocab& source_vocab, const nnet::CharVocab& target_vocab,
                                 const nnet::ModelDims& dims, nnet::Rng& rng);

  Example make_example(const TranslitPair& pair) const;

  nnet::ExampleResult evaluate(const Example& example) const;
  nnet::ExampleResult accumulate_gradient(const Example& example, Seq2SeqModel& grads) const;
  nnet::ParamRefs parameter_blocks();
  Seq2SeqModel zeros_like() const;

  // Greedy decoding until EOS or the length bound. Never yields PAD, SOS or UNK.
  std::vector<int> greedy_decode(std::span<const int> source) const;
  std::string transliterate(std::string_view roman) const override;

  const nnet::SequenceModelParams& encoder() const { return encoder_; }
  const nnet::SequenceModelParams& decoder() const { return decoder_; }
  nnet::SequenceModelParams& encoder() { return encoder_; }
  nnet::SequenceModelParams& decoder() { return decoder_; }

  DecodeOptions decode_options;

  void save(const std::filesystem::path& path) const;
  static Seq2SeqModel load(const std::filesystem::path& path);

  bool operator==(const Seq2SeqModel& other) const {
    return encoder_ == other.encoder_ && decoder_ == other.decoder_;
  }

 private:
  nnet::SequenceModelParams encoder_;
  nnet::SequenceModelParams decoder_;
};

// Defaults: batch 1024, 50 epochs, validation split 0.1.
nnet::TrainConfig default_translit_config();

struct TranslitTraining {
  Seq2SeqModel model;
  nnet::TrainReport report;
};

// Throws std::invalid_argument on an empty dataset.
TranslitTraining train_translit(std::span<const TranslitPair> pairs, const nnet::TrainConfig& cfg,
                                const nnet::ModelDims& dims = {});

// Fraction of pairs whose transliteration matches exactly.
double exact_match(const Transliterator& model, std::span<const TranslitPair> pairs);

// One output per token, in order. Throws std::invalid_argument for a
// non-Bengali segment.
std::vector<std::string> transliterate_segment(const Transliterator& model, const segment::Segment& seg);

}  // namespace codemix::translit
