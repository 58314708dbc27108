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

#include <filesystem>

#include "codemix/langid.hpp"

using namespace codemix;
using namespace codemix::langid;

namespace {

std::vector<LexiconEntry> disjoint_lexicon(std::size_t per_class, std::uint64_t seed) {
  nnet::Rng rng(seed);
  std::vector<LexiconEntry> out;
  for (std::size_t i = 0; i < per_class; ++i) {
    for (auto lang : {LanguageTag::kEnglish, LanguageTag::kBengali}) {
      const std::string alphabet = lang == LanguageTag::kEnglish ? "abcdefghijkl" : "mnopqrstuvwx";
      std::string w;
      const std::size_t len = 2 + rng.below(6);
      for (std::size_t k = 0; k < len; ++k) w.push_back(alphabet[rng.below(alphabet.size())]);
      out.push_back({w, lang});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("unknown-token rules") {
  CHECK(is_unknown("."));
  CHECK(is_unknown("?!"));
  CHECK(is_unknown(""));
  CHECK_FALSE(is_unknown("ami"));
  CHECK_FALSE(is_unknown("don't"));
  CHECK_FALSE(is_unknown("2day"));
  CHECK(is_unknown("খুব"));
  CHECK_FALSE(is_unknown("খুব", {UnknownRule::kNoAlphanumeric, false}));
  CHECK(is_unknown("don't", {UnknownRule::kAnyNonAlphanumeric, true}));
  CHECK_FALSE(is_unknown("khub", {UnknownRule::kAnyNonAlphanumeric, true}));
}

TEST_CASE("lexicon parsing") {
  const auto lex = parse_lexicon("ami\tbn\nthe\ten\n\n");
  REQUIRE(lex.size() == 2);
  CHECK(lex[0].language == LanguageTag::kBengali);
  try {
    (void)parse_lexicon("ami\tbn\nthe\tfr\n", "lex.tsv");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("lex.tsv:2:") != std::string::npos);
  }
  CHECK_THROWS_AS((void)load_lexicon("/nonexistent/lexicon.tsv"), DataError);
}

TEST_CASE("unknown check precedes the network") {
  const LanguageModel untrained;
  CHECK(untrained.tag_token("...") == LanguageTag::kUnknown);
  CHECK_THROWS_AS((void)untrained.tag_token("ami"), std::logic_error);
}

TEST_CASE("training errors") {
  const nnet::TrainConfig cfg = default_langid_config();
  CHECK_THROWS_AS((void)train_langid(std::vector<LexiconEntry>{}, cfg), std::invalid_argument);
  const std::vector<LexiconEntry> one_class = {{"ami", LanguageTag::kBengali}, {"tumi", LanguageTag::kBengali}};
  CHECK_THROWS_AS((void)train_langid(one_class, cfg), std::invalid_argument);
}

TEST_CASE("small separable lexicon is learned deterministically") {
  const auto lexicon = disjoint_lexicon(40, 4);
  nnet::TrainConfig cfg = default_langid_config();
  cfg.batch_size = 8;
  const nnet::ModelDims dims{8, 8, 1};
  const auto a = train_langid(lexicon, cfg, dims);
  const auto b = train_langid(lexicon, cfg, dims);
  CHECK(a.model.classifier() == b.model.classifier());
  CHECK(a.report.epochs.size() == 30);
  CHECK(a.report.validation_size == 16);
  CHECK(a.report.epochs.back().validation_accuracy == 1.0);
  CHECK(a.model.tag_token("ABC") == LanguageTag::kEnglish);
  CHECK(a.model.tag_token("mnop") == LanguageTag::kBengali);

  const auto path = std::filesystem::temp_directory_path() / "codemix_langid.bin";
  a.model.save(path);
  const auto loaded = LanguageModel::load(path);
  CHECK(loaded.classifier() == a.model.classifier());
  CHECK(loaded.probability_bengali("xyz") == a.model.probability_bengali("xyz"));

  textprep::CleanTweet tweet{"1", {Token{"abc", {}, {}}, Token{".", {}, {}}}};
  const auto tagged = tag_tweet(a.model, tweet);
  CHECK(tagged.keep);
  CHECK(render_language_tags(tagged.tweet) == "abc\\en .\\un");
  const auto dropped = tag_tweet(a.model, textprep::CleanTweet{"2", {Token{"!!", {}, {}}}});
  CHECK_FALSE(dropped.keep);
}
