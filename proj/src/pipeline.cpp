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

#include "codemix/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <set>
#include <sstream>

namespace codemix::pipeline {
namespace {

using Json = nlohmann::json;

// Reads a JSON object while rejecting keys nobody asked for.
class Section {
 public:
  Section(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }
  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  template <typename T>
  void read(const char* key, T& out) {
    if (!has(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const Json::exception&) {
      throw ConfigError(path_ + "." + key + ": wrong type");
    }
  }

  Section child(const char* key) {
    seen_.insert(key);
    return Section(j_.at(key), path_ + "." + key);
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(path_ + ": unknown key '" + item.key() + "'");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_path(Section& s, const char* key, const std::filesystem::path& base, std::filesystem::path& out) {
  std::string value;
  if (!s.has(key)) return;
  s.read(key, value);
  out = std::filesystem::path(value).is_relative() ? base / value : std::filesystem::path(value);
}

void read_train(Section& parent, const char* key, nnet::TrainConfig& cfg, nnet::ModelDims& dims) {
  if (!parent.has(key)) return;
  Section s = parent.child(key);
  s.read("batch_size", cfg.batch_size);
  s.read("epochs", cfg.epochs);
  s.read("validation_split", cfg.validation_split);
  s.read("learning_rate", cfg.learning_rate);
  s.read("beta1", cfg.beta1);
  s.read("beta2", cfg.beta2);
  s.read("epsilon", cfg.epsilon);
  s.read("embed_dim", dims.embed_dim);
  s.read("hidden_dim", dims.hidden_dim);
  s.read("num_layers", dims.num_layers);
  s.finish();
}

Json summary_json(const CorpusSummary& s) {
  nlohmann::ordered_json j;
  j["summary"] = true;
  j["tweets_before"] = s.tweets_before;
  j["tweets_after"] = s.tweets_after;
  j["tokens_before"] = s.tokens_before;
  j["tokens_after"] = s.tokens_after;
  j["discarded"] = s.discarded;
  j["removed_urls"] = s.removed.urls;
  j["removed_mentions"] = s.removed.mentions;
  j["removed_hashtags"] = s.removed.hashtags;
  j["removed_emojis"] = s.removed.emojis;
  j["removed_smileys"] = s.removed.smileys;
  return j;
}

void write_epochs(std::ostream& out, std::span<const nnet::EpochMetrics> epochs) {
  for (const auto& e : epochs) {
    nlohmann::ordered_json j;
    j["epoch"] = e.epoch;
    j["train_loss"] = e.train_loss;
    j["train_accuracy"] = e.train_accuracy;
    j["validation_loss"] = e.validation_loss;
    j["validation_accuracy"] = e.validation_accuracy;
    j["skipped_steps"] = e.skipped_steps;
    out << j.dump() << '\n';
  }
}

}  // namespace

void PipelineConfig::finalize() {
  langid_train.seed = seed;
  translit_train.seed = seed;
  try {
    langid_train.validate();
    translit_train.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto* dims : {&langid_dims, &translit_dims}) {
    if (dims->embed_dim == 0 || dims->hidden_dim == 0 || dims->num_layers == 0) {
      throw ConfigError("model dimensions must be positive");
    }
  }
  if (!(langid_threshold > 0.0 && langid_threshold < 1.0)) throw ConfigError("langid threshold must be in (0, 1)");
  if (!(decode.length_factor >= 0.0) || !std::isfinite(decode.length_factor)) {
    throw ConfigError("decode length factor must be non-negative");
  }
  if (!(scoring.log_base > 0.0) || scoring.log_base == 1.0 || !std::isfinite(scoring.log_base)) {
    throw ConfigError("log base must be positive and not 1");
  }
  if (!(hmm_smoothing >= 0.0) || !std::isfinite(hmm_smoothing)) throw ConfigError("hmm smoothing must be >= 0");
}

PipelineConfig parse_config(std::string_view content, const std::filesystem::path& base_dir,
                            std::string_view source_name) {
  Json j;
  try {
    j = Json::parse(content);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string(source_name) + ": " + e.what());
  }
  PipelineConfig cfg;
  Section root(j, std::string(source_name));
  root.read("seed", cfg.seed);
  if (root.has("models")) {
    Section s = root.child("models");
    read_path(s, "langid", base_dir, cfg.langid_model);
    read_path(s, "translit", base_dir, cfg.translit_model);
    read_path(s, "hmm_en", base_dir, cfg.en_tagger_model);
    read_path(s, "hmm_bn", base_dir, cfg.bn_tagger_model);
    s.finish();
  }
  if (root.has("mappings")) {
    Section s = root.child("mappings");
    std::filesystem::path p;
    if (s.has("en")) {
      read_path(s, "en", base_dir, p);
      cfg.en_mapping = p;
    }
    if (s.has("bn")) {
      read_path(s, "bn", base_dir, p);
      cfg.bn_mapping = p;
    }
    s.finish();
  }
  if (root.has("langid")) {
    Section s = root.child("langid");
    s.read("threshold", cfg.langid_threshold);
    if (s.has("unknown_rule")) {
      std::string rule;
      s.read("unknown_rule", rule);
      if (rule == "no-alphanumeric") {
        cfg.unknown.rule = langid::UnknownRule::kNoAlphanumeric;
      } else if (rule == "any-non-alphanumeric") {
        cfg.unknown.rule = langid::UnknownRule::kAnyNonAlphanumeric;
      } else {
        throw ConfigError(std::string(source_name) + ".langid.unknown_rule: unknown value '" + rule + "'");
      }
    }
    s.read("ascii_only", cfg.unknown.ascii_only);
    read_train(s, "train", cfg.langid_train, cfg.langid_dims);
    s.finish();
  }
  if (root.has("translit")) {
    Section s = root.child("translit");
    s.read("max_length_factor", cfg.decode.length_factor);
    s.read("max_length_offset", cfg.decode.length_offset);
    read_train(s, "train", cfg.translit_train, cfg.translit_dims);
    s.finish();
  }
  if (root.has("hmm")) {
    Section s = root.child("hmm");
    s.read("smoothing", cfg.hmm_smoothing);
    s.finish();
  }
  if (root.has("segment")) {
    Section s = root.child("segment");
    if (s.has("unknown")) {
      std::string mode;
      s.read("unknown", mode);
      if (mode == "drop") {
        cfg.segmentation.unknown = segment::UnknownHandling::kDrop;
      } else if (mode == "split") {
        cfg.segmentation.unknown = segment::UnknownHandling::kSplit;
      } else {
        throw ConfigError(std::string(source_name) + ".segment.unknown: unknown value '" + mode + "'");
      }
    }
    s.finish();
  }
  if (root.has("eval")) {
    Section s = root.child("eval");
    s.read("log_base", cfg.scoring.log_base);
    s.read("cap", cfg.scoring.cap);
    s.finish();
  }
  root.finish();
  cfg.finalize();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path(), path.string());
}

Pipeline Pipeline::load(const PipelineConfig& cfg) {
  Pipeline p{langid::LanguageModel::load(cfg.langid_model),
             translit::Seq2SeqModel::load(cfg.translit_model),
             postag::HmmTagger::load(cfg.en_tagger_model),
             postag::HmmTagger::load(cfg.bn_tagger_model),
             cfg.en_mapping ? tagmap::TagMapping::load(*cfg.en_mapping) : tagmap::english_mapping(),
             cfg.bn_mapping ? tagmap::TagMapping::load(*cfg.bn_mapping) : tagmap::bengali_mapping(),
             cfg.segmentation};
  p.langid.set_threshold(cfg.langid_threshold);
  p.langid.set_unknown_options(cfg.unknown);
  p.translit.decode_options = cfg.decode;
  return p;
}

TweetOutcome process_tweet(const Pipeline& pipeline, const textprep::RawTweet& raw) {
  TweetOutcome outcome;
  outcome.tokens_before = textprep::tokenize(raw.text).size();
  try {
    auto cleaned = textprep::clean(raw);
    outcome.removed = cleaned.report;
    if (cleaned.tweet.tokens.empty()) {
      outcome.discard = DiscardRecord{raw.id, "empty-after-cleaning", ""};
      return outcome;
    }
    auto tagged = langid::tag_tweet(pipeline.langid, std::move(cleaned.tweet));
    if (!tagged.keep) {
      outcome.discard = DiscardRecord{raw.id, "no-language-tag", langid::render_language_tags(tagged.tweet)};
      return outcome;
    }
    const auto segments = segment::segment_tweet(tagged.tweet, pipeline.segmentation);
    const auto pos = postag::tag_segments(pipeline.en_tagger, pipeline.bn_tagger, pipeline.translit, segments);
    outcome.rendered = tagmap::render_tagged_tweet(tagged.tweet, pos, pipeline.en_mapping, pipeline.bn_mapping);
  } catch (const std::exception& e) {
    outcome.rendered.reset();
    outcome.discard = DiscardRecord{raw.id, "error", e.what()};
  }
  return outcome;
}

TagRun run_tagging(const Pipeline& pipeline, std::span<const textprep::RawTweet> corpus) {
  TagRun run;
  run.summary.tweets_before = corpus.size();
  for (const auto& raw : corpus) {
    auto outcome = process_tweet(pipeline, raw);
    run.summary.tokens_before += outcome.tokens_before;
    run.summary.removed += outcome.removed;
    if (outcome.rendered) {
      run.summary.tokens_after += outcome.rendered->tokens.size();
      run.kept.push_back(std::move(*outcome.rendered));
    } else {
      run.discarded.push_back(std::move(*outcome.discard));
    }
  }
  run.summary.tweets_after = run.kept.size();
  run.summary.discarded = run.discarded.size();
  return run;
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "text") return OutputFormat::kText;
  if (text == "records") return OutputFormat::kRecords;
  return std::nullopt;
}

std::string format_summary(const CorpusSummary& s) {
  std::ostringstream out;
  out << "# tweets before cleaning\t" << s.tweets_before << "\n";
  out << "# tweets after cleaning\t" << s.tweets_after << "\n";
  out << "# tokens before cleaning\t" << s.tokens_before << "\n";
  out << "# tokens after cleaning\t" << s.tokens_after << "\n";
  out << "# discarded tweets\t" << s.discarded << "\n";
  out << "# removed urls\t" << s.removed.urls << "\n";
  out << "# removed mentions\t" << s.removed.mentions << "\n";
  out << "# removed hashtags\t" << s.removed.hashtags << "\n";
  out << "# removed emojis\t" << s.removed.emojis << "\n";
  out << "# removed smileys\t" << s.removed.smileys << "\n";
  return out.str();
}

void write_tagged(std::ostream& out, const TagRun& run, OutputFormat format) {
  if (format == OutputFormat::kText) {
    for (const auto& tweet : run.kept) out << tagmap::render_text(tweet) << '\n';
    out << format_summary(run.summary);
    return;
  }
  for (const auto& tweet : run.kept) {
    for (std::size_t i = 0; i < tweet.tokens.size(); ++i) {
      const auto& token = tweet.tokens[i];
      nlohmann::ordered_json j;
      j["id"] = tweet.id;
      j["index"] = i;
      j["surface"] = token.surface;
      j["lang"] = to_string(token.language);
      j["native"] = token.native_tag ? Json(*token.native_tag) : Json(nullptr);
      j["utag"] = to_string(token.universal);
      out << j.dump() << '\n';
    }
  }
  out << summary_json(run.summary).dump() << '\n';
}

void write_discards(std::ostream& out, std::span<const DiscardRecord> discards) {
  for (const auto& d : discards) {
    nlohmann::ordered_json j;
    j["id"] = d.id;
    j["reason"] = d.reason;
    j["detail"] = d.detail;
    out << j.dump() << '\n';
  }
}

std::vector<textprep::CleanTweet> parse_language_tagged(std::string_view content, std::string_view source_name) {
  std::vector<textprep::CleanTweet> corpus;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# ", 0) == 0 || line.find_first_not_of(" \t") == std::string::npos) continue;
    textprep::CleanTweet tweet{std::to_string(line_no), {}};
    std::istringstream tokens(line);
    std::string item;
    while (tokens >> item) {
      auto fail = [&]() {
        std::ostringstream msg;
        msg << source_name << ":" << line_no << ": token '" << item << "' has no language tag";
        return DataError(msg.str());
      };
      const auto first = item.find('\\', 1);
      if (first == std::string::npos || first == 0) throw fail();
      const auto second = item.find('\\', first + 1);
      const auto lang = parse_language(item.substr(first + 1, second == std::string::npos ? std::string::npos
                                                                                           : second - first - 1));
      if (!lang) throw fail();
      Token token{item.substr(0, first), lang, std::nullopt};
      if (second != std::string::npos) token.pos = parse_universal(item.substr(second + 1));
      tweet.tokens.push_back(std::move(token));
    }
    corpus.push_back(std::move(tweet));
  }
  return corpus;
}

std::string format_switch_stats(const segment::SwitchStats& stats) {
  std::ostringstream out;
  out << "Switch\tCount";
  for (std::size_t t : stats.thresholds) out << "\tFreq > " << t;
  out << '\n';
  for (auto cat : segment::kAllSwitchCategories) {
    const auto c = static_cast<std::size_t>(cat);
    out << segment::to_string(cat) << '\t' << stats.counts[c];
    for (const auto& row : stats.distinct_above) out << '\t' << row[c];
    out << '\n';
  }
  out << "Total\t" << stats.total() << '\n';
  return out.str();
}

std::optional<TrainSubject> parse_train_subject(std::string_view text) {
  if (text == "langid") return TrainSubject::kLangId;
  if (text == "translit") return TrainSubject::kTranslit;
  if (text == "hmm-en") return TrainSubject::kHmmEn;
  if (text == "hmm-bn") return TrainSubject::kHmmBn;
  return std::nullopt;
}

TrainOutcome train_model(TrainSubject subject, const std::filesystem::path& data,
                         const std::filesystem::path& model_out, const PipelineConfig& cfg,
                         std::ostream* metrics_out) {
  TrainOutcome outcome;
  auto take_report = [&](const nnet::TrainReport& report) {
    outcome.epochs = report.epochs;
    outcome.train_size = report.train_size;
    outcome.validation_size = report.validation_size;
  };
  switch (subject) {
    case TrainSubject::kLangId: {
      const auto lexicon = langid::load_lexicon(data);
      auto result = langid::train_langid(lexicon, cfg.langid_train, cfg.langid_dims);
      result.model.set_threshold(cfg.langid_threshold);
      result.model.set_unknown_options(cfg.unknown);
      result.model.save(model_out);
      take_report(result.report);
      break;
    }
    case TrainSubject::kTranslit: {
      const auto pairs = translit::load_pairs(data);
      auto result = translit::train_translit(pairs, cfg.translit_train, cfg.translit_dims);
      result.model.save(model_out);
      take_report(result.report);
      break;
    }
    case TrainSubject::kHmmEn:
    case TrainSubject::kHmmBn: {
      const auto corpus = postag::load_tagged_corpus(data);
      const auto tagger = postag::train_hmm(corpus, cfg.hmm_smoothing);
      tagger.save(model_out);
      outcome.train_size = corpus.size();
      break;
    }
  }
  if (metrics_out) write_epochs(*metrics_out, outcome.epochs);
  return outcome;
}

}  // namespace codemix::pipeline
