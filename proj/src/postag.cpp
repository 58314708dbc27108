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

#include "codemix/postag.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "codemix/utf8.hpp"

namespace codemix::postag {
namespace {

constexpr std::string_view kModelKind = "hmm";
constexpr int kModelVersion = 1;

std::string normalize(std::string_view word) { return utf8::encode(utf8::fold_case(utf8::decode(word))); }

double log_prob(double p) { return std::log(std::max(p, kProbabilityFloor)); }

void check_row(std::span<const double> row, std::string_view what) {
  double sum = 0.0;
  for (double p : row) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ModelError(std::string(what) + ": invalid probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ModelError(std::string(what) + ": row does not sum to 1");
}

nlohmann::json matrix_to_json(const nnet::Matrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  return rows;
}

nnet::Matrix matrix_from_json(const nlohmann::json& j, std::size_t cols) {
  nnet::Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto row = j.at(r).get<std::vector<double>>();
    if (row.size() != cols) throw ModelError("hmm table row has the wrong width");
    std::copy(row.begin(), row.end(), m.row(r).begin());
  }
  return m;
}

}  // namespace

std::vector<TaggedSentence> parse_tagged_corpus(std::string_view content, std::string_view source_name) {
  std::vector<TaggedSentence> corpus;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string item;
    TaggedSentence sentence;
    while (tokens >> item) {
      const auto slash = item.rfind('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == item.size()) {
        std::ostringstream msg;
        msg << source_name << ":" << line_no << ": expected word/TAG, got '" << item << "'";
        throw DataError(msg.str());
      }
      sentence.push_back({item.substr(0, slash), item.substr(slash + 1)});
    }
    if (!sentence.empty()) corpus.push_back(std::move(sentence));
  }
  return corpus;
}

std::vector<TaggedSentence> load_tagged_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read tagged corpus: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tagged_corpus(buf.str(), path.string());
}

void HmmTables::validate() const {
  const std::size_t t = tagset.size();
  if (t == 0) throw ModelError("hmm has an empty tagset");
  if (start.size() != t || transition.rows() != t || transition.cols() != t + 1 || emission.rows() != t ||
      emission.cols() != vocabulary.size() + 1) {
    throw ModelError("hmm table shapes do not match tagset and vocabulary");
  }
  check_row(start, "start distribution");
  for (std::size_t r = 0; r < t; ++r) {
    check_row(transition.row(r), "transition from " + tagset[r]);
    check_row(emission.row(r), "emission of " + tagset[r]);
  }
}

HmmTagger::HmmTagger(HmmTables tables) : tables_(std::move(tables)) {
  tables_.validate();
  for (std::size_t w = 0; w < tables_.vocabulary.size(); ++w) {
    if (!word_ids_.emplace(tables_.vocabulary[w], w).second) throw ModelError("hmm vocabulary has duplicates");
  }
}

std::size_t HmmTagger::word_index(std::string_view word) const {
  const auto it = word_ids_.find(normalize(word));
  return it == word_ids_.end() ? tables_.vocabulary.size() : it->second;
}

std::vector<std::size_t> HmmTagger::decode(std::span<const std::size_t> word_ids) const {
  const std::size_t n = word_ids.size();
  const std::size_t t_count = tables_.tagset.size();
  if (n == 0) return {};
  if (t_count == 0) throw std::logic_error("hmm tagger is not trained");
  const std::size_t end = t_count;

  std::vector<double> score(t_count);
  std::vector<std::vector<std::size_t>> back(n, std::vector<std::size_t>(t_count, 0));
  for (std::size_t t = 0; t < t_count; ++t) {
    score[t] = log_prob(tables_.start[t]) + log_prob(tables_.emission(t, word_ids[0]));
  }
  std::vector<double> next(t_count);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t t = 0; t < t_count; ++t) {
      double best = -std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t p = 0; p < t_count; ++p) {
        const double s = score[p] + log_prob(tables_.transition(p, t));
        if (s > best) {
          best = s;
          arg = p;
        }
      }
      next[t] = best + log_prob(tables_.emission(t, word_ids[i]));
      back[i][t] = arg;
    }
    score.swap(next);
  }
  double best = -std::numeric_limits<double>::infinity();
  std::size_t last = 0;
  for (std::size_t t = 0; t < t_count; ++t) {
    const double s = score[t] + log_prob(tables_.transition(t, end));
    if (s > best) {
      best = s;
      last = t;
    }
  }
  std::vector<std::size_t> path(n);
  path[n - 1] = last;
  for (std::size_t i = n - 1; i > 0; --i) path[i - 1] = back[i][path[i]];
  return path;
}

std::vector<std::string> HmmTagger::tag(std::span<const std::string> words) const {
  std::vector<std::size_t> ids;
  ids.reserve(words.size());
  for (const auto& w : words) ids.push_back(word_index(w));
  std::vector<std::string> tags;
  for (std::size_t t : decode(ids)) tags.push_back(tables_.tagset[t]);
  return tags;
}

void HmmTagger::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["kind"] = kModelKind;
  j["version"] = kModelVersion;
  j["tagset"] = tables_.tagset;
  j["vocabulary"] = tables_.vocabulary;
  j["start"] = tables_.start;
  j["transition"] = matrix_to_json(tables_.transition);
  j["emission"] = matrix_to_json(tables_.emission);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path.string());
  out << j.dump() << '\n';
  if (!out) throw IoError("failed writing model file: " + path.string());
}

HmmTagger HmmTagger::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read model file: " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("kind").get<std::string>() != kModelKind) throw ModelError("not an hmm tagger model");
    if (j.at("version").get<int>() != kModelVersion) throw ModelError("unsupported hmm model version");
    HmmTables tables;
    tables.tagset = j.at("tagset").get<std::vector<std::string>>();
    tables.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    tables.start = j.at("start").get<std::vector<double>>();
    tables.transition = matrix_from_json(j.at("transition"), tables.tagset.size() + 1);
    tables.emission = matrix_from_json(j.at("emission"), tables.vocabulary.size() + 1);
    return HmmTagger(std::move(tables));
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(path.string() + ": " + e.what());
  } catch (const ModelError& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
}

HmmTagger train_hmm(std::span<const TaggedSentence> corpus, double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("smoothing k must be a non-negative number");
  if (corpus.empty()) throw DataError("tagged corpus is empty");

  HmmTables tables;
  std::map<std::string, std::size_t, std::less<>> tag_ids;
  std::map<std::string, std::size_t, std::less<>> word_ids;
  for (const auto& sentence : corpus) {
    if (sentence.empty()) throw DataError("tagged corpus contains an empty sentence");
    for (const auto& tw : sentence) {
      if (tag_ids.emplace(tw.tag, tables.tagset.size()).second) tables.tagset.push_back(tw.tag);
      word_ids.emplace(normalize(tw.word), 0);
    }
  }
  for (auto& [word, id] : word_ids) {
    id = tables.vocabulary.size();
    tables.vocabulary.push_back(word);
  }

  const std::size_t t_count = tables.tagset.size();
  const std::size_t v_count = tables.vocabulary.size();
  nnet::Vector start_counts(t_count);
  nnet::Matrix trans_counts(t_count, t_count + 1);
  nnet::Matrix emit_counts(t_count, v_count + 1);
  for (const auto& sentence : corpus) {
    std::size_t prev = 0;
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      const std::size_t t = tag_ids.find(sentence[i].tag)->second;
      if (i == 0) {
        start_counts[t] += 1.0;
      } else {
        trans_counts(prev, t) += 1.0;
      }
      emit_counts(t, word_ids.find(normalize(sentence[i].word))->second) += 1.0;
      prev = t;
    }
    trans_counts(prev, t_count) += 1.0;
  }

  auto normalize_row = [k](std::span<const double> counts, std::span<double> out) {
    double total = 0.0;
    for (double c : counts) total += c + k;
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = (counts[i] + k) / total;
  };
  tables.start.assign(t_count, 0.0);
  normalize_row(start_counts, tables.start);
  tables.transition = nnet::Matrix(t_count, t_count + 1);
  tables.emission = nnet::Matrix(t_count, v_count + 1);
  for (std::size_t t = 0; t < t_count; ++t) {
    normalize_row(trans_counts.row(t), tables.transition.row(t));
    normalize_row(emit_counts.row(t), tables.emission.row(t));
  }
  return HmmTagger(std::move(tables));
}

std::vector<TaggedSegment> tag_segments(const PosTagger& en_tagger, const PosTagger& bn_tagger,
                                        const translit::Transliterator& transliterator,
                                        std::span<const segment::Segment> segments) {
  std::vector<TaggedSegment> out;
  out.reserve(segments.size());
  for (const auto& seg : segments) {
    std::vector<std::string> tags;
    if (seg.language == LanguageTag::kBengali) {
      const auto native = translit::transliterate_segment(transliterator, seg);
      tags = bn_tagger.tag(native);
    } else if (seg.language == LanguageTag::kEnglish) {
      std::vector<std::string> words;
      words.reserve(seg.tokens.size());
      for (const auto& token : seg.tokens) words.push_back(token.surface);
      tags = en_tagger.tag(words);
    } else {
      throw std::invalid_argument("tag_segments: segment has no EN/BN language");
    }
    if (tags.size() != seg.tokens.size()) throw std::logic_error("tagger returned the wrong number of tags");
    out.push_back({seg, std::move(tags)});
  }
  return out;
}

}  // namespace codemix::postag
