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

#include "codemix/segment.hpp"

#include <stdexcept>
#include <tuple>

namespace codemix::segment {
namespace {

SwitchCategory category_of(LanguageTag first, LanguageTag second) {
  const bool en1 = first == LanguageTag::kEnglish;
  const bool en2 = second == LanguageTag::kEnglish;
  if (en1 && en2) return SwitchCategory::kEnEn;
  if (!en1 && !en2) return SwitchCategory::kBnBn;
  return en1 ? SwitchCategory::kEnBn : SwitchCategory::kBnEn;
}

}  // namespace

std::vector<Segment> segment_tweet(const textprep::CleanTweet& tweet, const SegmentOptions& options) {
  std::vector<Segment> segments;
  bool run_open = false;
  for (std::size_t i = 0; i < tweet.tokens.size(); ++i) {
    const Token& token = tweet.tokens[i];
    if (!token.language) throw std::invalid_argument("segment_tweet: token '" + token.surface + "' has no language");
    const LanguageTag lang = *token.language;
    if (lang == LanguageTag::kUnknown) {
      if (options.unknown == UnknownHandling::kSplit) run_open = false;
      continue;
    }
    if (!run_open || segments.back().language != lang) {
      segments.push_back(Segment{lang, {}, {}, Span{i, i + 1}});
      run_open = true;
    }
    Segment& seg = segments.back();
    seg.tokens.push_back(token);
    seg.positions.push_back(i);
    seg.span.end = i + 1;
  }
  return segments;
}

std::string render_segments(std::span<const Segment> segments) {
  std::string out;
  for (const auto& seg : segments) {
    if (!out.empty()) out.push_back(' ');
    out.push_back('(');
    for (std::size_t k = 0; k < seg.tokens.size(); ++k) {
      if (k > 0) out.push_back(' ');
      out += seg.tokens[k].surface;
    }
    out += seg.language == LanguageTag::kEnglish ? ")En" : ")Bn";
  }
  return out;
}

std::string_view to_string(SwitchCategory category) {
  switch (category) {
    case SwitchCategory::kEnEn:
      return "EN-EN";
    case SwitchCategory::kBnBn:
      return "BN-BN";
    case SwitchCategory::kEnBn:
      return "EN-BN";
    case SwitchCategory::kBnEn:
      return "BN-EN";
  }
  return "";
}

std::size_t SwitchStats::total() const {
  std::size_t sum = 0;
  for (std::size_t c : counts) sum += c;
  return sum;
}

SwitchStats switch_stats(std::span<const textprep::CleanTweet> corpus, std::span<const std::size_t> thresholds) {
  using Key = std::tuple<std::string, std::string, SwitchCategory>;
  std::map<Key, std::size_t> frequency;
  SwitchStats stats;
  for (const auto& tweet : corpus) {
    for (const Token& t : tweet.tokens) {
      if (!t.language) throw std::invalid_argument("switch_stats: token '" + t.surface + "' has no language");
    }
    for (std::size_t i = 1; i < tweet.tokens.size(); ++i) {
      const Token& a = tweet.tokens[i - 1];
      const Token& b = tweet.tokens[i];
      if (*a.language == LanguageTag::kUnknown || *b.language == LanguageTag::kUnknown) continue;
      const SwitchCategory cat = category_of(*a.language, *b.language);
      ++stats.counts[static_cast<std::size_t>(cat)];
      ++frequency[Key{a.surface, b.surface, cat}];
    }
  }
  stats.thresholds.assign(thresholds.begin(), thresholds.end());
  stats.distinct_above.assign(thresholds.size(), {});
  for (const auto& [key, freq] : frequency) {
    const auto cat = static_cast<std::size_t>(std::get<2>(key));
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      if (freq > thresholds[t]) ++stats.distinct_above[t][cat];
    }
  }
  return stats;
}

}  // namespace codemix::segment
