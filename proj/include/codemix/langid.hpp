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

#include "codemix/nnet/classifier.hpp"
#include "codemix/nnet/train.hpp"
#include "codemix/textprep.hpp"
#include "codemix/types.hpp"

namespace codemix::langid {

struct LexiconEntry {
  std::string surface;
  LanguageTag language = LanguageTag::kEnglish;  // EN or BN only
};

// UTF-8 TSV, "surface<TAB>lang" with lang in {en, bn}. Throws DataError naming
// the offending line.
std::vector<LexiconEntry> load_lexicon(const std::filesystem::path& path);
std::vector<LexiconEntry> parse_lexicon(std::string_view content, std::string_view source_name = "<lexicon>");

enum class UnknownRule {
  kNoAlphanumeric,       // unknown iff the token has no letter or digit
  kAnyNonAlphanumeric,   // unknown iff the token has any other character
};

struct UnknownOptions {
  UnknownRule rule = UnknownRule::kNoAlphanumeric;
  // When false, non-ASCII letters (anything that is not whitespace,
  // punctuation or emoji) also count as alphanumeric.
  bool ascii_only = true;
};

bool is_unknown(std::string_view token, const UnknownOptions& options = {});

// Defaults: batch 30, 30 epochs, validation split 0.2.
nnet::TrainConfig default_langid_config();

class LanguageModel {
 public:
  LanguageModel() = default;
  explicit LanguageModel(nnet::SequenceClassifier classifier, double threshold = 0.5,
                         UnknownOptions unknown = {});

  bool trained() const { return !classifier_.params().layers.empty(); }

  // Case-folded characters, unseen ones mapped to UNK. Throws std::logic_error
  // on an untrained model.
  double probability_bengali(std::string_view token) const;

  // UN if is_unknown(token); otherwise BN when P(BN) >= threshold, else EN.
  // Unknown tokens never reach the network.
  LanguageTag tag_token(std::string_view token) const;

  const nnet::SequenceClassifier& classifier() const { return classifier_; }
  double threshold() const { return threshold_; }
  void set_threshold(double threshold) { threshold_ = threshold; }
  const UnknownOptions& unknown_options() const { return unknown_; }
  void set_unknown_options(const UnknownOptions& options) { unknown_ = options; }

  void save(const std::filesystem::path& path) const;
  // Throws ModelError on a missing or malformed file.
  static LanguageModel load(const std::filesystem::path& path);

 private:
  nnet::SequenceClassifier classifier_;
  double threshold_ = 0.5;
  UnknownOptions unknown_;
};

struct LangIdTraining {
  LanguageModel model;
  nnet::TrainReport report;
};

// Throws std::invalid_argument for an empty or single-class lexicon.
LangIdTraining train_langid(std::span<const LexiconEntry> lexicon, const nnet::TrainConfig& cfg,
                            const nnet::ModelDims& dims = {});

struct TaggedTweet {
  textprep::CleanTweet tweet;  // every token carries a language
  bool keep = false;           // false when no token is EN or BN
};

TaggedTweet tag_tweet(const LanguageModel& model, textprep::CleanTweet tweet);

// "surface\lang" tokens joined by spaces.
std::string render_language_tags(const textprep::CleanTweet& tweet);

}  // namespace codemix::langid
