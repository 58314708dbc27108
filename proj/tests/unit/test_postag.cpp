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

#include "../support/oracles.hpp"
#include "codemix/postag.hpp"

using namespace codemix;
using namespace codemix::postag;

namespace {

TaggedSentence sentence(std::initializer_list<std::pair<const char*, const char*>> items) {
  TaggedSentence s;
  for (const auto& [w, t] : items) s.push_back({w, t});
  return s;
}

// Maps every word to its lowercase self; enough to exercise the BN route.
class EchoTransliterator final : public translit::Transliterator {
 public:
  std::string transliterate(std::string_view roman) const override { return "bn:" + std::string(roman); }
};

}  // namespace

TEST_CASE("tagged corpus parsing") {
  const auto corpus = parse_tagged_corpus("I/PRP loved/VBD it/PRP ./.\n\na/b/DT\n");
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0][3] == TaggedWord{".", "."});
  CHECK(corpus[1][0] == TaggedWord{"a/b", "DT"});
  CHECK_THROWS_AS((void)parse_tagged_corpus("ok/NN\nbad\n"), DataError);
  try {
    (void)parse_tagged_corpus("ok/NN\nfine/JJ oops/\n", "c.txt");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("c.txt:2:") != std::string::npos);
  }
}

TEST_CASE("training follows MLE with add-k smoothing") {
  const std::vector<TaggedSentence> corpus = {
      sentence({{"x", "NN"}, {"runs", "VB"}}),
      sentence({{"x", "NN"}, {"sleeps", "VB"}}),
      sentence({{"runs", "VB"}}),
  };
  const auto tagger = train_hmm(corpus, 0.0);
  const auto& t = tagger.tables();
  CHECK(t.tagset == std::vector<std::string>{"NN", "VB"});
  CHECK(t.start[0] == doctest::Approx(2.0 / 3.0));
  CHECK(t.transition(0, 1) == doctest::Approx(1.0));
  CHECK(t.transition(1, 2) == doctest::Approx(1.0));  // VB -> </s>
  CHECK(t.emission(0, tagger.word_index("x")) == doctest::Approx(1.0));
  CHECK(tagger.tag(std::vector<std::string>{"x"}) == std::vector<std::string>{"NN"});
  CHECK(tagger.tag(std::vector<std::string>{"sleeps"}) == std::vector<std::string>{"VB"});
  CHECK(tagger.tag(std::vector<std::string>{"X", "RUNS"}) == std::vector<std::string>{"NN", "VB"});

  // k = 1 by hand: NN emits {runs, sleeps, x, UNK} with counts {0, 0, 2, 0}.
  const auto smooth = train_hmm(corpus, 1.0);
  CHECK(smooth.tables().emission(0, smooth.word_index("x")) == doctest::Approx(3.0 / 6.0));
  CHECK(smooth.tables().emission(0, smooth.word_index("never-seen")) == doctest::Approx(1.0 / 6.0));
  CHECK(smooth.word_index("never-seen") == smooth.tables().vocabulary.size());
}

TEST_CASE("decoding stays total without smoothing") {
  const std::vector<TaggedSentence> corpus = {sentence({{"a", "DT"}, {"dog", "NN"}}), sentence({{"run", "VB"}})};
  const auto tagger = train_hmm(corpus, 0.0);
  // DT -> VB and unknown words were never observed.
  const auto tags = tagger.tag(std::vector<std::string>{"a", "run", "zzz", "dog"});
  CHECK(tags.size() == 4);
  CHECK(tagger.tag(std::vector<std::string>{}).empty());
}

TEST_CASE("training errors") {
  CHECK_THROWS_AS((void)train_hmm(std::vector<TaggedSentence>{}), DataError);
  CHECK_THROWS_AS((void)train_hmm(std::vector<TaggedSentence>{TaggedSentence{}}), DataError);
  const std::vector<TaggedSentence> one = {sentence({{"a", "DT"}})};
  CHECK_THROWS_AS((void)train_hmm(one, -0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)HmmTagger().tag(std::vector<std::string>{"a"}), std::logic_error);
}

TEST_CASE("every conditional distribution sums to one") {
  nnet::Rng rng(17);
  const std::vector<std::string> words = {"a", "b", "c", "d", "e", "f"};
  const std::vector<std::string> tags = {"P", "Q", "R"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TaggedSentence> corpus;
    const std::size_t n = 1 + rng.below(8);
    for (std::size_t s = 0; s < n; ++s) {
      TaggedSentence sent;
      const std::size_t len = 1 + rng.below(6);
      for (std::size_t i = 0; i < len; ++i) sent.push_back({words[rng.below(words.size())], tags[rng.below(3)]});
      corpus.push_back(sent);
    }
    const double k = trial % 3 == 0 ? 0.0 : rng.uniform(0.01, 2.0);
    const auto tagger = train_hmm(corpus, k);
    const auto& t = tagger.tables();
    auto sum = [](std::span<const double> row) {
      double s = 0.0;
      for (double x : row) s += x;
      return s;
    };
    CHECK(sum(t.start) == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t r = 0; r < t.tagset.size(); ++r) {
      CHECK(std::abs(sum(t.transition.row(r)) - 1.0) < 1e-9);
      CHECK(std::abs(sum(t.emission.row(r)) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("Viterbi matches exhaustive enumeration") {
  nnet::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t tags = 1 + rng.below(4);
    const std::size_t vocab = 1 + rng.below(4);
    const HmmTagger tagger(testing::random_hmm(rng, tags, vocab));
    std::vector<std::size_t> words(1 + rng.below(5));
    for (auto& w : words) w = rng.below(vocab + 1);
    const auto [expected, score] = testing::brute_force_decode(tagger.tables(), words);
    const auto got = tagger.decode(words);
    CHECK(testing::sequence_log_score(tagger.tables(), words, got) == doctest::Approx(score).epsilon(1e-12));
    CHECK(got == expected);
  }
}

TEST_CASE("ties go to the tag declared first") {
  HmmTables t;
  t.tagset = {"B", "A"};
  t.vocabulary = {"w"};
  t.start = {0.5, 0.5};
  t.transition = nnet::Matrix(2, 3, 1.0 / 3.0);
  t.emission = nnet::Matrix(2, 2, 0.5);
  const HmmTagger tagger(t);
  CHECK(tagger.tag(std::vector<std::string>{"w", "w", "w"}) == std::vector<std::string>{"B", "B", "B"});
}

TEST_CASE("invalid tables are rejected") {
  nnet::Rng rng(3);
  auto t = testing::random_hmm(rng, 2, 2);
  t.emission(0, 0) += 0.1;
  CHECK_THROWS_AS(HmmTagger{t}, ModelError);
  auto shape = testing::random_hmm(rng, 2, 2);
  shape.start.push_back(0.0);
  CHECK_THROWS_AS(HmmTagger{shape}, ModelError);
}

TEST_CASE("tagger files round-trip exactly") {
  nnet::Rng rng(8);
  const HmmTagger tagger(testing::random_hmm(rng, 3, 4));
  const auto path = std::filesystem::temp_directory_path() / "codemix_hmm.json";
  tagger.save(path);
  CHECK(HmmTagger::load(path) == tagger);
  CHECK_THROWS_AS((void)HmmTagger::load("/nonexistent/hmm.json"), ModelError);
}

TEST_CASE("segments are tagged in order by the matching tagger") {
  const auto en = train_hmm(std::vector<TaggedSentence>{sentence({{"movie", "NN"}, {"was", "VBD"}})});
  const auto bn = train_hmm(std::vector<TaggedSentence>{
      sentence({{"bn:ta", "DEM"}, {"bn:bhalo", "JJ"}, {"bn:chilo", "VAUX"}})});
  const EchoTransliterator echo;

  auto make = [](LanguageTag lang, std::vector<std::string> words, std::size_t start) {
    segment::Segment seg{lang, {}, {}, {start, start + words.size()}};
    for (std::size_t i = 0; i < words.size(); ++i) {
      seg.tokens.push_back(Token{words[i], lang, std::nullopt});
      seg.positions.push_back(start + i);
    }
    return seg;
  };
  const std::vector<segment::Segment> segments = {make(LanguageTag::kEnglish, {"Movie"}, 0),
                                                  make(LanguageTag::kBengali, {"ta", "bhalo", "chilo"}, 1)};
  const auto tagged = tag_segments(en, bn, echo, segments);
  REQUIRE(tagged.size() == 2);
  CHECK(tagged[0].native_tags == std::vector<std::string>{"NN"});
  CHECK(tagged[1].native_tags == std::vector<std::string>{"DEM", "JJ", "VAUX"});
  CHECK(tagged[1].segment.tokens[0].surface == "ta");
  CHECK(tag_segments(en, bn, echo, std::vector<segment::Segment>{}).empty());
}
