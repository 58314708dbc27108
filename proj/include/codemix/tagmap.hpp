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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codemix/postag.hpp"
#include "codemix/textprep.hpp"
#include "codemix/types.hpp"

namespace codemix::tagmap {

// Total function from a native tagset to the universal tagset.
class TagMapping {
 public:
  TagMapping(std::string name, std::map<std::string, UniversalTag, std::less<>> entries,
             UniversalTag fallback = UniversalTag::kX);

  // TSV "native<TAB>universal"; "# " starts a comment and the native tag "*"
  // sets the fallback. Throws DataError naming the bad line.
  static TagMapping parse(std::string name, std::string_view content, std::string_view source_name = "<mapping>");
  static TagMapping load(const std::filesystem::path& path);

  UniversalTag map(std::string_view native) const;

  const std::string& name() const { return name_; }
  const std::map<std::string, UniversalTag, std::less<>>& entries() const { return entries_; }
  UniversalTag fallback() const { return fallback_; }

 private:
  std::string name_;
  std::map<std::string, UniversalTag, std::less<>> entries_;
  UniversalTag fallback_;
};

// Shipped defaults, built from data/mappings.
const TagMapping& bengali_mapping();
const TagMapping& english_mapping();

UniversalTag map_bn(std::string_view tag);
UniversalTag map_en(std::string_view tag);

struct RenderedToken {
  std::string surface;
  LanguageTag language = LanguageTag::kUnknown;
  std::optional<std::string> native_tag;
  UniversalTag universal = UniversalTag::kX;

  bool operator==(const RenderedToken&) const = default;
};

struct RenderedTweet {
  std::string id;
  std::vector<RenderedToken> tokens;

  bool operator==(const RenderedTweet&) const = default;
};

// SYM for an all-punctuation token, X otherwise.
UniversalTag unknown_token_tag(std::string_view surface);

// Emits every token of the language-tagged tweet in order. Tokens covered by
// a tagged segment get their native tag mapped through the segment's
// language; UN tokens get unknown_token_tag. Throws std::invalid_argument if
// an EN/BN token is not covered by any segment.
RenderedTweet render_tagged_tweet(const textprep::CleanTweet& tweet, std::span<const postag::TaggedSegment> tagged,
                                  const TagMapping& en, const TagMapping& bn);

// "surface\lang\UTAG" tokens joined by single spaces.
std::string render_text(const RenderedTweet& tweet);

}  // namespace codemix::tagmap
