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

#include "codemix/translit.hpp"
#include "codemix/utf8.hpp"

using namespace codemix;
using namespace codemix::translit;
using nnet::CharVocab;

namespace {

Seq2SeqModel small_model(std::uint64_t seed, std::size_t layers = 2) {
  const std::vector<std::u32string> src = {U"abc"};
  const std::vector<std::u32string> tgt = {U"आमि"};
  nnet::Rng rng(seed);
  return Seq2SeqModel::initialize(CharVocab::from_texts(src), CharVocab::from_texts(tgt), {3, 4, layers}, rng);
}

}  // namespace

TEST_CASE("teacher forcing shifts the target by one step") {
  const std::vector<int> target = {5, 6, 7};
  const auto tf = teacher_forcing(target);
  CHECK(tf.inputs == std::vector<int>{CharVocab::kSos, 5, 6, 7});
  CHECK(tf.targets == std::vector<int>{5, 6, 7, CharVocab::kEos});
  for (std::size_t t = 1; t < tf.inputs.size(); ++t) CHECK(tf.inputs[t] == tf.targets[t - 1]);

  const auto empty = teacher_forcing(std::vector<int>{});
  CHECK(empty.inputs == std::vector<int>{CharVocab::kSos});
  CHECK(empty.targets == std::vector<int>{CharVocab::kEos});
}

TEST_CASE("pair files parse and report bad lines") {
  const auto pairs = parse_pairs("ami\tआमि\n\nkhub\tखुब\r\n");
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[1].roman == "khub");
  CHECK(pairs[1].devanagari == "खुब");
  try {
    (void)parse_pairs("ami\tआमि\nbroken\n", "p.tsv");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("p.tsv:2:") != std::string::npos);
  }
}

TEST_CASE("backprop through encoder and decoder matches finite differences") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto model = small_model(seed);
    Seq2SeqModel::Example ex{{4, 5, 6, 4}, {5, 4, 6}};
    CHECK(nnet::grad_check(model, ex) < 1e-4);
  }
  const auto single = small_model(9, 1);
  CHECK(nnet::grad_check(single, Seq2SeqModel::Example{{6}, {4, 4}}) < 1e-4);
  // Empty source: decoder starts from zero states.
  CHECK(nnet::grad_check(single, Seq2SeqModel::Example{{}, {5}}) < 1e-4);
}

TEST_CASE("greedy decoding stays within the vocabulary and length bound") {
  auto model = small_model(4);
  for (std::size_t len = 0; len < 6; ++len) {
    const std::vector<int> source(len, 5);
    const auto out = model.greedy_decode(source);
    CHECK(out.size() <= model.decode_options.max_length(len));
    for (int id : out) {
      CHECK(id >= CharVocab::kNumReserved);
      CHECK(id < static_cast<int>(model.decoder().vocab.size()));
    }
  }
  model.decode_options = {0.0, 1};
  CHECK(model.greedy_decode(std::vector<int>{4, 5}).size() <= 1);
  CHECK_THROWS_AS((void)Seq2SeqModel().transliterate("ami"), std::logic_error);
}

TEST_CASE("model files round-trip exactly") {
  const auto model = small_model(5);
  const auto path = std::filesystem::temp_directory_path() / "codemix_translit.bin";
  model.save(path);
  const auto loaded = Seq2SeqModel::load(path);
  CHECK(loaded == model);
  CHECK(loaded.transliterate("cab") == model.transliterate("cab"));
  CHECK_THROWS_AS((void)Seq2SeqModel::load("/nonexistent/model.bin"), ModelError);
}

TEST_CASE("training learns a tiny mapping deterministically") {
  const std::vector<TranslitPair> pairs = {{"ami", "आमि"}, {"tumi", "तुमि"}, {"mati", "माति"}, {"Tam", "ताम"}};
  nnet::TrainConfig cfg;
  cfg.batch_size = 4;
  cfg.epochs = 150;
  cfg.validation_split = 0.0;
  cfg.learning_rate = 0.01;
  const auto a = train_translit(pairs, cfg, {8, 16, 1});
  const auto b = train_translit(pairs, cfg, {8, 16, 1});
  CHECK(a.model == b.model);
  CHECK(exact_match(a.model, pairs) == doctest::Approx(1.0));
  CHECK(a.model.transliterate("AMI") == "आमि");
  CHECK_THROWS_AS((void)train_translit(std::span<const TranslitPair>{}, cfg), std::invalid_argument);

  segment::Segment bn{LanguageTag::kBengali, {Token{"tumi", LanguageTag::kBengali, {}}}, {0}, {0, 1}};
  CHECK(transliterate_segment(a.model, bn) == std::vector<std::string>{"तुमि"});
  bn.language = LanguageTag::kEnglish;
  CHECK_THROWS_AS((void)transliterate_segment(a.model, bn), std::invalid_argument);
}
