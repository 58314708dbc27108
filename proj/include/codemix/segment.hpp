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

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "codemix/textprep.hpp"
#include "codemix/types.hpp"

namespace codemix::segment {

struct Span {
  std::size_t start = 0;  // index of the first token in the source tweet
  std::size_t end = 0;    // one past the last token

  bool operator==(const Span&) const = default;
};

// Maximal run of same-language tokens. positions[k] is the index of tokens[k]
// in the source tweet.
struct Segment {
  LanguageTag language = LanguageTag::kEnglish;
  std::vector<Token> tokens;
  std::vector<std::size_t> positions;
  Span span;

  bool operator==(const Segment&) const = default;
};

enum class UnknownHandling {
  kDrop,   // UN tokens vanish; runs on either side of them may merge
  kSplit,  // UN tokens are dropped but still end the current run
};

struct SegmentOptions {
  UnknownHandling unknown = UnknownHandling::kDrop;
};

// Throws std::invalid_argument if a token has no language.
std::vector<Segment> segment_tweet(const textprep::CleanTweet& tweet, const SegmentOptions& options = {});

// "(w1 w2)En (w3)Bn" rendering of a segmentation.
std::string render_segments(std::span<const Segment> segments);

enum class SwitchCategory : std::uint8_t { kEnEn, kBnBn, kEnBn, kBnEn };
inline constexpr std::array<SwitchCategory, 4> kAllSwitchCategories = {
    SwitchCategory::kEnBn, SwitchCategory::kBnEn, SwitchCategory::kEnEn, SwitchCategory::kBnBn};

std::string_view to_string(SwitchCategory category);

struct SwitchStats {
  std::array<std::size_t, 4> counts{};  // indexed by SwitchCategory
  std::vector<std::size_t> thresholds;
  // distinct_above[i][c]: distinct surface bigrams of category c whose corpus
  // frequency is strictly greater than thresholds[i].
  std::vector<std::array<std::size_t, 4>> distinct_above;

  std::size_t count(SwitchCategory c) const { return counts[static_cast<std::size_t>(c)]; }
  std::size_t total() const;
};

// Consecutive token pairs within a tweet where both tokens are EN or BN.
// Pairs touching a UN token are skipped and bigrams never cross tweets.
SwitchStats switch_stats(std::span<const textprep::CleanTweet> corpus, std::span<const std::size_t> thresholds);

}  // namespace codemix::segment
