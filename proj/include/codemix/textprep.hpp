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

#include "codemix/types.hpp"

namespace codemix::textprep {

struct RawTweet {
  std::string id;
  std::string text;
};

struct CleanTweet {
  std::string id;
  std::vector<Token> tokens;

  bool operator==(const CleanTweet&) const = default;
};

enum class CorpusFormat {
  kText,     // one tweet per line, id = 1-based line number
  kRecords,  // one JSON object per line with "id" and "text"
};

// Number of entities removed per category.
struct CleaningReport {
  std::size_t urls = 0;
  std::size_t mentions = 0;
  std::size_t hashtags = 0;
  std::size_t emojis = 0;
  std::size_t smileys = 0;

  CleaningReport& operator+=(const CleaningReport& other);
  std::size_t total() const { return urls + mentions + hashtags + emojis + smileys; }
};

struct CleanResult {
  CleanTweet tweet;
  CleaningReport report;
};

// The fixed emoticon inventory removed by clean().
std::span<const std::string_view> smiley_table();

// Blank lines (and records with blank text) are skipped. Throws DataError
// naming the offending line for malformed records.
std::vector<RawTweet> ingest_corpus(const std::filesystem::path& path, CorpusFormat format);
std::vector<RawTweet> parse_corpus(std::string_view content, CorpusFormat format,
                                   std::string_view source_name = "<input>");

// Whitespace split, then leading and trailing punctuation runs become their
// own tokens. Never yields empty strings.
std::vector<std::string> tokenize(std::string_view text);

// Removes links, mentions, hashtags, emoji and emoticons, then tokenizes.
CleanResult clean(const RawTweet& tweet);

std::string join_surfaces(const CleanTweet& tweet);

}  // namespace codemix::textprep
