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

#include <doctest.h>

#include <map>

#include "codemix/nnet/matrix.hpp"
#include "codemix/tagmap.hpp"

using namespace codemix;
using namespace codemix::tagmap;

TEST_CASE("Bengali mapping table") {
  const std::map<std::string, UniversalTag> table = {
      {"NN", UniversalTag::kNoun},  {"NNP", UniversalTag::kNoun}, {"INTJ", UniversalTag::kNoun},
      {"VM", UniversalTag::kVerb},  {"VAUX", UniversalTag::kVerb}, {"JJ", UniversalTag::kAdj},
      {"QF", UniversalTag::kAdj},   {"RB", UniversalTag::kAdv},   {"NEG", UniversalTag::kAdv},
      {"PRP", UniversalTag::kPron}, {"WQ", UniversalTag::kPron},  {"DEM", UniversalTag::kDem},
      {"PSP", UniversalTag::kAdp},  {"RP", UniversalTag::kPrt},   {"CC", UniversalTag::kConj},
      {"INTF", UniversalTag::kIntf}, {"QC", UniversalTag::kNum},  {"RDP", UniversalTag::kRdp},
      {"SYM", UniversalTag::kSym},  {"UN", UniversalTag::kUn},    {"DET", UniversalTag::kDet},
  };
  CHECK(table.size() == 21);
  for (const auto& [native, universal] : table) {
    INFO(native);
    CHECK(map_bn(native) == universal);
  }
  CHECK(bengali_mapping().entries().size() == 21);
  CHECK(map_bn("ZZZ") == UniversalTag::kX);
  CHECK(map_bn("") == UniversalTag::kX);
  CHECK(map_bn("nn") == UniversalTag::kX);
}

TEST_CASE("English mapping table") {
  CHECK(map_en("NNS") == UniversalTag::kNoun);
  CHECK(map_en("MD") == UniversalTag::kVerb);
  CHECK(map_en("PRP$") == UniversalTag::kPron);
  CHECK(map_en("WDT") == UniversalTag::kDet);
  CHECK(map_en("TO") == UniversalTag::kPrt);
  CHECK(map_en("-LRB-") == UniversalTag::kSym);
  CHECK(map_en("#") == UniversalTag::kSym);
  CHECK(map_en("UH") == UniversalTag::kX);
  CHECK(map_en("???") == UniversalTag::kX);
}

TEST_CASE("mapping files") {
  const auto m = TagMapping::parse("custom", "# comment\nFOO\tNOUN\n*\tSYM\n");
  CHECK(m.map("FOO") == UniversalTag::kNoun);
  CHECK(m.map("BAR") == UniversalTag::kSym);
  CHECK_THROWS_AS((void)TagMapping::parse("bad", "FOO\tNOPE\n"), DataError);
  CHECK_THROWS_AS((void)TagMapping::parse("bad", "FOO NOUN\n"), DataError);
  CHECK_THROWS_AS((void)TagMapping::parse("bad", "FOO\tNOUN\nFOO\tVERB\n"), DataError);
  CHECK_THROWS_AS((void)TagMapping::load("/nonexistent/map.tsv"), DataError);
}

TEST_CASE("maps are total over arbitrary strings") {
  nnet::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const std::size_t len = rng.below(8);
    for (std::size_t k = 0; k < len; ++k) s.push_back(static_cast<char>(rng.below(256)));
    const auto bn = map_bn(s);
    const auto en = map_en(s);
    CHECK(code_of(bn) < kNumUniversalTags);
    CHECK(code_of(en) < kNumUniversalTags);
  }
}

TEST_CASE("unknown tokens are SYM only when all punctuation") {
  CHECK(unknown_token_tag(".") == UniversalTag::kSym);
  CHECK(unknown_token_tag("?!...") == UniversalTag::kSym);
  CHECK(unknown_token_tag("।") == UniversalTag::kSym);
  CHECK(unknown_token_tag("<3") == UniversalTag::kX);
  CHECK(unknown_token_tag("ok.") == UniversalTag::kX);
  CHECK(unknown_token_tag("") == UniversalTag::kX);
}

TEST_CASE("rendering reinserts unknown tokens at their positions") {
  textprep::CleanTweet tweet{"7",
                             {Token{"Movie", LanguageTag::kEnglish, {}}, Token{",", LanguageTag::kUnknown, {}},
                              Token{"ta", LanguageTag::kBengali, {}}, Token{"bhalo", LanguageTag::kBengali, {}},
                              Token{".", LanguageTag::kUnknown, {}}}};
  const auto segments = segment::segment_tweet(tweet);
  REQUIRE(segments.size() == 2);
  const std::vector<postag::TaggedSegment> tagged = {{segments[0], {"NN"}}, {segments[1], {"DEM", "JJ"}}};
  const auto out = render_tagged_tweet(tweet, tagged, english_mapping(), bengali_mapping());
  REQUIRE(out.tokens.size() == tweet.tokens.size());
  CHECK(out.id == "7");
  CHECK(render_text(out) == "Movie\\en\\NOUN ,\\un\\SYM ta\\bn\\DEM bhalo\\bn\\ADJ .\\un\\SYM");
  CHECK(out.tokens[2].native_tag == "DEM");
  CHECK_FALSE(out.tokens[1].native_tag.has_value());
  CHECK(render_tagged_tweet(tweet, tagged, english_mapping(), bengali_mapping()) == out);

  // An EN/BN token without a tag is a caller error.
  const std::vector<postag::TaggedSegment> partial = {{segments[0], {"NN"}}};
  CHECK_THROWS_AS((void)render_tagged_tweet(tweet, partial, english_mapping(), bengali_mapping()),
                  std::invalid_argument);
}
