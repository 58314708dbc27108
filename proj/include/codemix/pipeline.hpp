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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codemix/eval.hpp"
#include "codemix/langid.hpp"
#include "codemix/postag.hpp"
#include "codemix/segment.hpp"
#include "codemix/tagmap.hpp"
#include "codemix/textprep.hpp"
#include "codemix/translit.hpp"

namespace codemix::pipeline {

// Invalid configuration file, flag, or value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PipelineConfig {
  std::filesystem::path langid_model = "models/langid.bin";
  std::filesystem::path translit_model = "models/translit.bin";
  std::filesystem::path en_tagger_model = "models/hmm-en.json";
  std::filesystem::path bn_tagger_model = "models/hmm-bn.json";
  std::optional<std::filesystem::path> en_mapping;  // shipped table when unset
  std::optional<std::filesystem::path> bn_mapping;

  double langid_threshold = 0.5;
  langid::UnknownOptions unknown;
  segment::SegmentOptions segmentation;
  translit::DecodeOptions decode;
  eval::ScoreBOptions scoring;
  double hmm_smoothing = postag::kDefaultSmoothing;

  nnet::TrainConfig langid_train = langid::default_langid_config();
  nnet::ModelDims langid_dims;
  nnet::TrainConfig translit_train = translit::default_translit_config();
  nnet::ModelDims translit_dims;

  std::uint64_t seed = 42;

  // Copies the seed into both training configs and checks every range.
  // Throws ConfigError.
  void finalize();
};

// JSON config. Relative paths resolve against the file's directory; unknown
// keys are rejected. Throws ConfigError.
PipelineConfig parse_config(std::string_view content, const std::filesystem::path& base_dir,
                            std::string_view source_name = "<config>");
PipelineConfig load_config(const std::filesystem::path& path);

// Loaded, immutable models for the tag command.
struct Pipeline {
  langid::LanguageModel langid;
  translit::Seq2SeqModel translit;
  postag::HmmTagger en_tagger;
  postag::HmmTagger bn_tagger;
  tagmap::TagMapping en_mapping;
  tagmap::TagMapping bn_mapping;
  segment::SegmentOptions segmentation;

  // Throws ModelError for unreadable or inconsistent models, DataError for
  // bad mapping files.
  static Pipeline load(const PipelineConfig& cfg);
};

struct DiscardRecord {
  std::string id;
  std::string reason;  // "empty-after-cleaning", "no-language-tag" or "error"
  std::string detail;
};

// Row structure of the corpus bookkeeping table.
struct CorpusSummary {
  std::size_t tweets_before = 0;
  std::size_t tweets_after = 0;
  std::size_t tokens_before = 0;
  std::size_t tokens_after = 0;
  std::size_t discarded = 0;
  textprep::CleaningReport removed;
};

struct TweetOutcome {
  std::optional<tagmap::RenderedTweet> rendered;
  std::optional<DiscardRecord> discard;
  std::size_t tokens_before = 0;
  textprep::CleaningReport removed;
};

// clean -> langid -> segment -> transliterate BN -> POS tag -> map -> render.
// Failures inside the tweet become a discard record.
TweetOutcome process_tweet(const Pipeline& pipeline, const textprep::RawTweet& raw);

struct TagRun {
  std::vector<tagmap::RenderedTweet> kept;
  std::vector<DiscardRecord> discarded;
  CorpusSummary summary;
};

// Output order follows input order.
TagRun run_tagging(const Pipeline& pipeline, std::span<const textprep::RawTweet> corpus);

enum class OutputFormat { kText, kRecords };
std::optional<OutputFormat> parse_output_format(std::string_view text);

// Text: one tweet per line, summary as trailing "# " lines. Records: one JSON
// object per token, then one summary object.
void write_tagged(std::ostream& out, const TagRun& run, OutputFormat format);
void write_discards(std::ostream& out, std::span<const DiscardRecord> discards);
std::string format_summary(const CorpusSummary& summary);

// Reads tagged output ("surface\lang" or "surface\lang\UTAG" tokens; "# "
// lines skipped). Throws DataError for a token without a language.
std::vector<textprep::CleanTweet> parse_language_tagged(std::string_view content,
                                                        std::string_view source_name = "<tagged>");

std::string format_switch_stats(const segment::SwitchStats& stats);

enum class TrainSubject { kLangId, kTranslit, kHmmEn, kHmmBn };
std::optional<TrainSubject> parse_train_subject(std::string_view text);

struct TrainOutcome {
  std::vector<nnet::EpochMetrics> epochs;  // empty for HMM taggers
  std::size_t train_size = 0;
  std::size_t validation_size = 0;
};

// Trains a model from `data`, writes it to `model_out` and, when given, the
// per-epoch metrics as JSON lines to `metrics_out`.
TrainOutcome train_model(TrainSubject subject, const std::filesystem::path& data,
                         const std::filesystem::path& model_out, const PipelineConfig& cfg,
                         std::ostream* metrics_out = nullptr);

}  // namespace codemix::pipeline
