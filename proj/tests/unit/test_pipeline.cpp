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

#include <json.hpp>
#include <fstream>
#include <sstream>

#include "codemix/pipeline.hpp"
#include "codemix/utf8.hpp"

using namespace codemix;
using namespace codemix::pipeline;

namespace {

// Untrained but well-formed models: enough to exercise the wiring.
Pipeline tiny_pipeline() {
  nnet::Rng rng(1);
  const std::vector<std::u32string> roman = {U"abcdefghijklmnopqrstuvwxyz'"};
  const std::vector<std::u32string> native = {U"आमिखुबभालो"};
  const auto roman_vocab = nnet::CharVocab::from_texts(roman);
  langid::LanguageModel lid(nnet::SequenceClassifier::initialize(roman_vocab, {4, 4, 1}, rng));
  auto translit =
      translit::Seq2SeqModel::initialize(roman_vocab, nnet::CharVocab::from_texts(native), {4, 4, 1}, rng);
  auto en = postag::train_hmm(postag::parse_tagged_corpus("the/DT movie/NN was/VBD good/JJ ./.\n"));
  auto bn = postag::train_hmm(postag::parse_tagged_corpus("आमि/PRP खुब/INTF भालो/JJ ./SYM\n"));
  return Pipeline{std::move(lid), std::move(translit), std::move(en), std::move(bn),
                  tagmap::english_mapping(), tagmap::bengali_mapping(), {}};
}

}  // namespace

TEST_CASE("config parsing, defaults and overrides") {
  const auto cfg = parse_config(R"({
    "seed": 7,
    "models": {"langid": "m/lid.bin", "hmm_bn": "/abs/bn.json"},
    "langid": {"threshold": 0.6, "unknown_rule": "any-non-alphanumeric",
               "train": {"batch_size": 10, "epochs": 5}},
    "translit": {"max_length_factor": 3.0, "train": {"hidden_dim": 16}},
    "segment": {"unknown": "split"},
    "eval": {"log_base": 2}
  })",
                                "/base");
  CHECK(cfg.seed == 7);
  CHECK(cfg.langid_train.seed == 7);
  CHECK(cfg.translit_train.seed == 7);
  CHECK(cfg.langid_model == std::filesystem::path("/base/m/lid.bin"));
  CHECK(cfg.bn_tagger_model == std::filesystem::path("/abs/bn.json"));
  CHECK(cfg.langid_threshold == 0.6);
  CHECK(cfg.unknown.rule == langid::UnknownRule::kAnyNonAlphanumeric);
  CHECK(cfg.langid_train.batch_size == 10);
  CHECK(cfg.langid_train.epochs == 5);
  CHECK(cfg.langid_train.validation_split == 0.2);
  CHECK(cfg.translit_train.batch_size == 1024);
  CHECK(cfg.translit_train.epochs == 50);
  CHECK(cfg.translit_dims.hidden_dim == 16);
  CHECK(cfg.decode.length_factor == 3.0);
  CHECK(cfg.segmentation.unknown == segment::UnknownHandling::kSplit);
  CHECK(cfg.scoring.log_base == 2.0);

  CHECK_THROWS_AS((void)parse_config(R"({"sed": 1})", "."), ConfigError);
  CHECK_THROWS_AS((void)parse_config(R"({"langid": {"threshold": "high"}})", "."), ConfigError);
  CHECK_THROWS_AS((void)parse_config(R"({"eval": {"log_base": 1}})", "."), ConfigError);
  CHECK_THROWS_AS((void)parse_config(R"({"translit": {"train": {"epochs": 0}}})", "."), ConfigError);
  CHECK_THROWS_AS((void)parse_config("{not json", "."), ConfigError);
  CHECK_THROWS_AS((void)load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("tagging conserves tweets and is deterministic") {
  const auto pipeline = tiny_pipeline();
  const std::vector<textprep::RawTweet> corpus = {
      {"1", "the movie was khub bhalo ."}, {"2", "😂 #fun @x"}, {"3", "!!! ..."},
      {"4", "Movie ta bhalo chilo"},      {"5", "http://t.co/a"},
  };
  const auto run = run_tagging(pipeline, corpus);
  CHECK(run.kept.size() + run.discarded.size() == corpus.size());
  CHECK(run.summary.tweets_before == 5);
  CHECK(run.summary.tweets_after == run.kept.size());
  CHECK(run.summary.tokens_after <= run.summary.tokens_before);
  REQUIRE(run.discarded.size() == 3);
  CHECK(run.discarded[0].id == "2");
  CHECK(run.discarded[0].reason == "empty-after-cleaning");
  CHECK(run.discarded[1].reason == "no-language-tag");
  CHECK(run.kept[0].tokens.size() == 6);
  CHECK(run.kept[0].tokens.back().universal == UniversalTag::kSym);

  std::ostringstream a;
  std::ostringstream b;
  write_tagged(a, run, OutputFormat::kText);
  write_tagged(b, run_tagging(pipeline, corpus), OutputFormat::kText);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("# tweets before cleaning\t5") != std::string::npos);

  std::ostringstream records;
  write_tagged(records, run, OutputFormat::kRecords);
  std::istringstream lines(records.str());
  std::string line;
  std::size_t tokens = 0;
  nlohmann::json last;
  while (std::getline(lines, line)) {
    last = nlohmann::json::parse(line);
    if (!last.contains("summary")) ++tokens;
  }
  CHECK(tokens == run.summary.tokens_after);
  CHECK(last["discarded"] == 3);

  std::ostringstream discards;
  write_discards(discards, run.discarded);
  CHECK(nlohmann::json::parse(discards.str().substr(0, discards.str().find('\n')))["reason"] ==
        "empty-after-cleaning");
}

TEST_CASE("empty corpus gives empty output and a zero summary") {
  const auto run = run_tagging(tiny_pipeline(), std::vector<textprep::RawTweet>{});
  CHECK(run.kept.empty());
  std::ostringstream out;
  write_tagged(out, run, OutputFormat::kText);
  CHECK(out.str() == format_summary(CorpusSummary{}));
}

TEST_CASE("switch statistics from tagged output") {
  const auto corpus = parse_language_tagged("# header\na\\en b\\bn\n\nx\\en\\NOUN .\\un\\SYM y\\en\\VERB\n");
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[1].tokens[0].pos == UniversalTag::kNoun);
  const std::vector<std::size_t> thresholds = {500, 1000};
  const auto stats = segment::switch_stats(corpus, thresholds);
  CHECK(stats.count(segment::SwitchCategory::kEnBn) == 1);
  CHECK(stats.total() == 1);
  const std::string table = format_switch_stats(stats);
  CHECK(table.find("Freq > 500\tFreq > 1000") != std::string::npos);
  CHECK(table.find("EN-BN\t1\t0\t0") != std::string::npos);
  CHECK_THROWS_AS((void)parse_language_tagged("a b\\en\n"), DataError);
  CHECK_THROWS_AS((void)parse_language_tagged("a\\xx\n"), DataError);
}

TEST_CASE("training subjects") {
  CHECK(parse_train_subject("langid") == TrainSubject::kLangId);
  CHECK(parse_train_subject("hmm-bn") == TrainSubject::kHmmBn);
  CHECK_FALSE(parse_train_subject("pos").has_value());
  const auto dir = std::filesystem::temp_directory_path();
  std::ofstream(dir / "codemix_pos.txt") << "the/DT movie/NN\n";
  PipelineConfig cfg;
  cfg.finalize();
  const auto outcome = train_model(TrainSubject::kHmmEn, dir / "codemix_pos.txt", dir / "codemix_hmm_en.json", cfg);
  CHECK(outcome.train_size == 1);
  CHECK(postag::HmmTagger::load(dir / "codemix_hmm_en.json").tagset().size() == 2);
  CHECK_THROWS_AS((void)train_model(TrainSubject::kLangId, "/nonexistent/lex.tsv", dir / "x.bin", cfg), DataError);
}
