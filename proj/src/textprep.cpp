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

#include "codemix/textprep.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "codemix/utf8.hpp"

namespace codemix::textprep {
namespace {

constexpr std::array<std::string_view, 32> kSmileys = {
    ":)",  ":-)", ":(",  ":-(", ":D",  ":-D", ";)",  ";-)", ":P",  ":-P", ":p",
    ":-p", ":'(", ":O",  ":-O", ":o",  ":/",  ":-/", ":|",  ":-|", ":*",  ":-*",
    "=)",  "=(",  "<3",  "</3", "XD",  "xD",  "^_^", "-_-", ":]",  ":[",
};

bool is_smiley(std::u32string_view piece) {
  const std::string s = utf8::encode(piece);
  return std::find(kSmileys.begin(), kSmileys.end(), s) != kSmileys.end();
}

// Characters that continue a mention or hashtag.
bool is_word_char(char32_t cp) {
  if (cp == U'_' || utf8::is_ascii_alnum(cp)) return true;
  return cp >= 0x80 && !utf8::is_space(cp) && !utf8::is_punctuation(cp) && !utf8::is_emoji(cp);
}

bool starts_with_ci(std::u32string_view text, std::size_t pos, std::u32string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    char32_t c = text[pos + k];
    if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
    if (c != prefix[k]) return false;
  }
  return true;
}

// Length of a URL starting at pos, or 0.
std::size_t url_length(std::u32string_view text, std::size_t pos) {
  static constexpr std::u32string_view kPrefixes[] = {U"http://", U"https://", U"ftp://", U"www."};
  for (auto prefix : kPrefixes) {
    if (!starts_with_ci(text, pos, prefix)) continue;
    std::size_t end = pos + prefix.size();
    if (end >= text.size() || utf8::is_space(text[end])) {
      if (prefix == U"www.") continue;  // bare "www." is ordinary text
    }
    while (end < text.size() && !utf8::is_space(text[end])) ++end;
    return end - pos;
  }
  return 0;
}

std::vector<std::u32string> split_whitespace(std::u32string_view text) {
  std::vector<std::u32string> chunks;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && utf8::is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !utf8::is_space(text[j])) ++j;
    if (j > i) chunks.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return chunks;
}

void split_chunk(std::u32string_view chunk, std::vector<std::u32string>& out) {
  std::size_t lead = 0;
  while (lead < chunk.size() && utf8::is_punctuation(chunk[lead])) ++lead;
  if (lead == chunk.size()) {
    out.emplace_back(chunk);
    return;
  }
  std::size_t trail = chunk.size();
  while (trail > lead && utf8::is_punctuation(chunk[trail - 1])) --trail;
  if (lead > 0) out.emplace_back(chunk.substr(0, lead));
  out.emplace_back(chunk.substr(lead, trail - lead));
  if (trail < chunk.size()) out.emplace_back(chunk.substr(trail));
}

std::vector<std::u32string> tokenize_u32(std::u32string_view text) {
  std::vector<std::u32string> tokens;
  for (const auto& chunk : split_whitespace(text)) split_chunk(chunk, tokens);
  return tokens;
}

std::string trim_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); });
}

}  // namespace

CleaningReport& CleaningReport::operator+=(const CleaningReport& other) {
  urls += other.urls;
  mentions += other.mentions;
  hashtags += other.hashtags;
  emojis += other.emojis;
  smileys += other.smileys;
  return *this;
}

std::span<const std::string_view> smiley_table() { return kSmileys; }

std::vector<RawTweet> parse_corpus(std::string_view content, CorpusFormat format,
                                   std::string_view source_name) {
  std::vector<RawTweet> tweets;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim_cr(std::move(line));
    if (is_blank(line)) continue;
    if (format == CorpusFormat::kText) {
      tweets.push_back({std::to_string(line_no), line});
      continue;
    }
    auto fail = [&](const std::string& why) {
      std::ostringstream msg;
      msg << source_name << ":" << line_no << ": malformed record: " << why;
      throw DataError(msg.str());
    };
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(e.what());
    }
    if (!record.is_object()) fail("expected a JSON object");
    if (!record.contains("text") || !record["text"].is_string()) fail("missing string field 'text'");
    std::string id;
    if (!record.contains("id")) {
      fail("missing field 'id'");
    } else if (record["id"].is_string()) {
      id = record["id"].get<std::string>();
    } else if (record["id"].is_number_integer()) {
      id = std::to_string(record["id"].get<long long>());
    } else {
      fail("field 'id' must be a string or integer");
    }
    std::string text = record["text"].get<std::string>();
    if (is_blank(text)) continue;
    tweets.push_back({std::move(id), std::move(text)});
  }
  return tweets;
}

std::vector<RawTweet> ingest_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read corpus file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), format, path.string());
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& token : tokenize_u32(utf8::decode(text))) out.push_back(utf8::encode(token));
  return out;
}

CleanResult clean(const RawTweet& tweet) {
  CleanResult result;
  result.tweet.id = tweet.id;
  CleaningReport& report = result.report;

  const std::u32string text = utf8::decode(tweet.text);
  std::u32string kept;
  kept.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::size_t n = url_length(text, i); n > 0) {
      ++report.urls;
      kept.push_back(U' ');
      i += n;
      continue;
    }
    const char32_t cp = text[i];
    if ((cp == U'@' || cp == U'#') && i + 1 < text.size() && is_word_char(text[i + 1])) {
      std::size_t end = i + 1;
      while (end < text.size() && is_word_char(text[end])) ++end;
      ++(cp == U'@' ? report.mentions : report.hashtags);
      kept.push_back(U' ');
      i = end;
      continue;
    }
    if (utf8::is_emoji(cp)) {
      // Joiners and variation selectors belong to the preceding emoji.
      if (cp != 0x200D && cp != 0xFE0F && cp != 0xFE0E && cp != 0x20E3 &&
          !(cp >= 0x1F3FB && cp <= 0x1F3FF)) {
        ++report.emojis;
      }
      kept.push_back(U' ');
      ++i;
      continue;
    }
    kept.push_back(cp);
    ++i;
  }

  for (const auto& chunk : split_whitespace(kept)) {
    if (is_smiley(chunk)) {
      ++report.smileys;
      continue;
    }
    std::vector<std::u32string> pieces;
    split_chunk(chunk, pieces);
    for (auto& piece : pieces) {
      if (is_smiley(piece)) {
        ++report.smileys;
        continue;
      }
      result.tweet.tokens.push_back(Token{utf8::encode(piece), std::nullopt, std::nullopt});
    }
  }
  return result;
}

std::string join_surfaces(const CleanTweet& tweet) {
  std::string out;
  for (const auto& token : tweet.tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token.surface;
  }
  return out;
}

}  // namespace codemix::textprep
