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

#include "codemix/tagmap.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "codemix_mappings.hpp"
#include "codemix/utf8.hpp"

namespace codemix::tagmap {

TagMapping::TagMapping(std::string name, std::map<std::string, UniversalTag, std::less<>> entries,
                       UniversalTag fallback)
    : name_(std::move(name)), entries_(std::move(entries)), fallback_(fallback) {}

TagMapping TagMapping::parse(std::string name, std::string_view content, std::string_view source_name) {
  std::map<std::string, UniversalTag, std::less<>> entries;
  UniversalTag fallback = UniversalTag::kX;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind("# ", 0) == 0) continue;
    const auto tab = line.find('\t');
    const auto bad = [&](std::string_view why) {
      std::ostringstream msg;
      msg << source_name << ":" << line_no << ": " << why;
      return DataError(msg.str());
    };
    if (tab == std::string::npos || tab == 0) throw bad("expected 'native<TAB>universal'");
    const std::string native = line.substr(0, tab);
    const auto universal = parse_universal(line.substr(tab + 1));
    if (!universal) throw bad("unknown universal tag '" + line.substr(tab + 1) + "'");
    if (native == "*") {
      fallback = *universal;
    } else if (!entries.emplace(native, *universal).second) {
      throw bad("duplicate native tag '" + native + "'");
    }
  }
  return TagMapping(std::move(name), std::move(entries), fallback);
}

TagMapping TagMapping::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read mapping file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(path.stem().string(), buf.str(), path.string());
}

UniversalTag TagMapping::map(std::string_view native) const {
  const auto it = entries_.find(native);
  return it == entries_.end() ? fallback_ : it->second;
}

const TagMapping& bengali_mapping() {
  static const TagMapping mapping = TagMapping::parse("bn", embedded::kBengali, "data/mappings/bn.tsv");
  return mapping;
}

const TagMapping& english_mapping() {
  static const TagMapping mapping = TagMapping::parse("en", embedded::kEnglish, "data/mappings/en.tsv");
  return mapping;
}

UniversalTag map_bn(std::string_view tag) { return bengali_mapping().map(tag); }
UniversalTag map_en(std::string_view tag) { return english_mapping().map(tag); }

UniversalTag unknown_token_tag(std::string_view surface) {
  const auto cps = utf8::decode(surface);
  if (cps.empty()) return UniversalTag::kX;
  for (char32_t cp : cps) {
    if (!utf8::is_punctuation(cp)) return UniversalTag::kX;
  }
  return UniversalTag::kSym;
}

RenderedTweet render_tagged_tweet(const textprep::CleanTweet& tweet, std::span<const postag::TaggedSegment> tagged,
                                  const TagMapping& en, const TagMapping& bn) {
  std::vector<const std::string*> native(tweet.tokens.size(), nullptr);
  for (const auto& ts : tagged) {
    if (ts.native_tags.size() != ts.segment.positions.size()) {
      throw std::invalid_argument("render_tagged_tweet: tag count differs from token count");
    }
    for (std::size_t k = 0; k < ts.native_tags.size(); ++k) {
      const std::size_t pos = ts.segment.positions[k];
      if (pos >= native.size()) throw std::invalid_argument("render_tagged_tweet: segment position out of range");
      native[pos] = &ts.native_tags[k];
    }
  }
  RenderedTweet out{tweet.id, {}};
  out.tokens.reserve(tweet.tokens.size());
  for (std::size_t i = 0; i < tweet.tokens.size(); ++i) {
    const Token& token = tweet.tokens[i];
    RenderedToken r;
    r.surface = token.surface;
    r.language = token.language.value_or(LanguageTag::kUnknown);
    if (r.language == LanguageTag::kUnknown) {
      r.universal = unknown_token_tag(token.surface);
    } else {
      if (native[i] == nullptr) {
        throw std::invalid_argument("render_tagged_tweet: token '" + token.surface + "' has no tag");
      }
      r.native_tag = *native[i];
      r.universal = (r.language == LanguageTag::kEnglish ? en : bn).map(*native[i]);
    }
    out.tokens.push_back(std::move(r));
  }
  return out;
}

std::string render_text(const RenderedTweet& tweet) {
  std::string out;
  for (const auto& token : tweet.tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token.surface;
    out.push_back('\\');
    out += to_string(token.language);
    out.push_back('\\');
    out += to_string(token.universal);
  }
  return out;
}

}  // namespace codemix::tagmap
