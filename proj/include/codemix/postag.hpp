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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codemix/nnet/matrix.hpp"
#include "codemix/segment.hpp"
#include "codemix/translit.hpp"

namespace codemix::postag {

struct TaggedWord {
  std::string word;
  std::string tag;

  bool operator==(const TaggedWord&) const = default;
};
using TaggedSentence = std::vector<TaggedWord>;

// One sentence per line, tokens "word/TAG" split on the last slash.
// Throws DataError naming the offending line.
std::vector<TaggedSentence> parse_tagged_corpus(std::string_view content, std::string_view source_name = "<corpus>");
std::vector<TaggedSentence> load_tagged_corpus(const std::filesystem::path& path);

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  // One native tag per word. An empty sentence yields no tags.
  virtual std::vector<std::string> tag(std::span<const std::string> words) const = 0;
};

// Zero probabilities are replaced by this floor when decoding.
inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kDefaultSmoothing = 0.1;

// Probability tables of a bigram HMM. Tag indices follow `tagset`.
//   start[t]                     P(t | <s>)
//   transition(prev, next)       P(next | prev); column T is </s>
//   emission(t, w)               P(w | t); column V is the unknown word
struct HmmTables {
  std::vector<std::string> tagset;
  std::vector<std::string> vocabulary;
  nnet::Vector start;
  nnet::Matrix transition;  // T x (T + 1)
  nnet::Matrix emission;    // T x (V + 1)

  // Throws ModelError on inconsistent shapes or rows not summing to 1.
  void validate() const;
  bool operator==(const HmmTables&) const = default;
};

class HmmTagger final : public PosTagger {
 public:
  HmmTagger() = default;
  explicit HmmTagger(HmmTables tables);

  const HmmTables& tables() const { return tables_; }
  const std::vector<std::string>& tagset() const { return tables_.tagset; }

  // Vocabulary index of a word (ASCII case-folded); V for unknown words.
  std::size_t word_index(std::string_view word) const;

  // Viterbi decoding. Ties go to the tag declared first.
  std::vector<std::string> tag(std::span<const std::string> words) const override;
  std::vector<std::size_t> decode(std::span<const std::size_t> word_ids) const;

  void save(const std::filesystem::path& path) const;
  static HmmTagger load(const std::filesystem::path& path);

  bool operator==(const HmmTagger& other) const { return tables_ == other.tables_; }

 private:
  HmmTables tables_;
  std::map<std::string, std::size_t, std::less<>> word_ids_;
};

// MLE with add-k smoothing. The tagset is ordered by first appearance.
// Throws std::invalid_argument for k < 0, DataError for an empty corpus or
// an empty sentence.
HmmTagger train_hmm(std::span<const TaggedSentence> corpus, double k = kDefaultSmoothing);

struct TaggedSegment {
  segment::Segment segment;
  std::vector<std::string> native_tags;  // one per segment token
};

// EN segments go to en_tagger; BN segments are transliterated word by word
// and tagged by bn_tagger, with tags attached back to the Romanized tokens.
// Each segment is tagged as its own sentence.
std::vector<TaggedSegment> tag_segments(const PosTagger& en_tagger, const PosTagger& bn_tagger,
                                        const translit::Transliterator& transliterator,
                                        std::span<const segment::Segment> segments);

}  // namespace codemix::postag
