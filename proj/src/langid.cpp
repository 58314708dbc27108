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

#include "codemix/langid.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "codemix/nnet/serialize.hpp"
#include "codemix/utf8.hpp"

namespace codemix::langid {
namespace {

constexpr std::string_view kModelKind = "langid";

bool counts_as_alnum(char32_t cp, const UnknownOptions& options) {
  if (utf8::is_ascii_alnum(cp)) return true;
  if (options.ascii_only || cp < 0x80) return false;
  return !utf8::is_space(cp) && !utf8::is_punctuation(cp) && !utf8::is_emoji(cp);
}

std::vector<int> encode_word(const nnet::CharVocab& vocab, std::string_view word) {
  return vocab.encode(utf8::fold_case(utf8::decode(word)));
}

}  // namespace

std::vector<LexiconEntry> parse_lexicon(std::string_view content, std::string_view source_name) {
  std::vector<LexiconEntry> entries;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fail = [&](const std::string& why) {
      std::ostringstream msg;
      msg << source_name << ":" << line_no << ": " << why;
      throw DataError(msg.str());
    };
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      fail("expected 'surface<TAB>lang'");
    }
    std::string surface = line.substr(0, tab);
    const auto lang = parse_language(line.substr(tab + 1));
    if (!lang || *lang == LanguageTag::kUnknown) fail("language must be 'en' or 'bn'");
    if (surface.empty() || textprep::tokenize(surface).empty() ||
        surface.find_first_of(" \t") != std::string::npos) {
      fail("surface must be a single non-empty token");
    }
    entries.push_back({std::move(surface), *lang});
  }
  return entries;
}

std::vector<LexiconEntry> load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read lexicon file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str(), path.string());
}

bool is_unknown(std::string_view token, const UnknownOptions& options) {
  const std::u32string cps = utf8::decode(token);
  if (options.rule == UnknownRule::kNoAlphanumeric) {
    for (char32_t cp : cps) {
      if (counts_as_alnum(cp, options)) return false;
    }
    return true;
  }
  for (char32_t cp : cps) {
    if (!counts_as_alnum(cp, options)) return true;
  }
  return cps.empty();
}

nnet::TrainConfig default_langid_config() {
  nnet::TrainConfig cfg;
  cfg.batch_size = 30;
  cfg.epochs = 30;
  cfg.validation_split = 0.2;
  return cfg;
}

LanguageModel::LanguageModel(nnet::SequenceClassifier classifier, double threshold, UnknownOptions unknown)
    : classifier_(std::move(classifier)), threshold_(threshold), unknown_(unknown) {}

double LanguageModel::probability_bengali(std::string_view token) const {
  if (!trained()) throw std::logic_error("language model is not trained");
  return classifier_.predict(encode_word(classifier_.params().vocab, token));
}

LanguageTag LanguageModel::tag_token(std::string_view token) const {
  if (is_unknown(token, unknown_)) return LanguageTag::kUnknown;
  return probability_bengali(token) >= threshold_ ? LanguageTag::kBengali : LanguageTag::kEnglish;
}

void LanguageModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path.string());
  nnet::BinaryWriter w(out);
  nnet::write_header(w, kModelKind);
  nnet::write_params(w, classifier_.params());
  if (!out) throw IoError("failed writing model file: " + path.string());
}

LanguageModel LanguageModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read model file: " + path.string());
  nnet::BinaryReader r(in);
  try {
    nnet::read_header(r, kModelKind);
    return LanguageModel(nnet::SequenceClassifier(nnet::read_params(r)));
  } catch (const std::invalid_argument& e) {
    throw ModelError(path.string() + ": " + e.what());
  } catch (const ModelError& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
}

LangIdTraining train_langid(std::span<const LexiconEntry> lexicon, const nnet::TrainConfig& cfg,
                            const nnet::ModelDims& dims) {
  if (lexicon.empty()) throw std::invalid_argument("lexicon is empty");
  bool has_en = false;
  bool has_bn = false;
  std::vector<std::u32string> words;
  for (const auto& entry : lexicon) {
    if (entry.language == LanguageTag::kEnglish) has_en = true;
    if (entry.language == LanguageTag::kBengali) has_bn = true;
    if (entry.language == LanguageTag::kUnknown) {
      throw std::invalid_argument("lexicon entries must be EN or BN");
    }
    words.push_back(utf8::fold_case(utf8::decode(entry.surface)));
  }
  if (!has_en || !has_bn) throw std::invalid_argument("lexicon must contain both EN and BN words");

  const nnet::CharVocab vocab = nnet::CharVocab::from_texts(words);
  nnet::Rng rng(cfg.seed);
  auto classifier = nnet::SequenceClassifier::initialize(vocab, dims, rng);

  std::vector<nnet::SequenceClassifier::Example> examples;
  examples.reserve(lexicon.size());
  for (std::size_t i = 0; i < lexicon.size(); ++i) {
    examples.push_back({vocab.encode(words[i]), lexicon[i].language == LanguageTag::kBengali ? 1.0 : 0.0});
  }
  LangIdTraining result;
  result.report = nnet::train(classifier, std::span<const nnet::SequenceClassifier::Example>(examples), cfg);
  result.model = LanguageModel(std::move(classifier));
  return result;
}

TaggedTweet tag_tweet(const LanguageModel& model, textprep::CleanTweet tweet) {
  TaggedTweet out;
  for (auto& token : tweet.tokens) {
    token.language = model.tag_token(token.surface);
    if (*token.language != LanguageTag::kUnknown) out.keep = true;
  }
  out.tweet = std::move(tweet);
  return out;
}

std::string render_language_tags(const textprep::CleanTweet& tweet) {
  std::string out;
  for (const auto& token : tweet.tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token.surface;
    out.push_back('\\');
    out += to_string(token.language.value_or(LanguageTag::kUnknown));
  }
  return out;
}

}  // namespace codemix::langid
