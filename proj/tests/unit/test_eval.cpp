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

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "../support/oracles.hpp"
#include "codemix/eval.hpp"

using namespace codemix;
using namespace codemix::eval;

namespace {

SentencePair sentence(const std::vector<UniversalTag>& manual, const std::vector<UniversalTag>& system,
                       std::vector<std::size_t> switches = {}) {
  SentencePair p;
  for (std::size_t i = 0; i < manual.size(); ++i) {
    p.manual.push_back({"w" + std::to_string(i), manual[i]});
    p.system.push_back({"w" + std::to_string(i), system[i]});
  }
  p.switch_points = std::move(switches);
  return p;
}

constexpr auto N = UniversalTag::kNoun;
constexpr auto V = UniversalTag::kVerb;
constexpr auto A = UniversalTag::kAdj;
constexpr auto D = UniversalTag::kDet;

}  // namespace

TEST_CASE("score_a is the match fraction") {
  CHECK(score_a(sentence(std::vector<UniversalTag>(10, N), std::vector<UniversalTag>(10, N))) == 1.0);
  CHECK(score_a(sentence({N, N, N, N}, {V, V, V, V})) == 0.0);
  CHECK(score_a(sentence({N, V, A, D}, {N, V, A, N})) == 0.75);
  CHECK_THROWS_AS((void)score_a(SentencePair{}), std::invalid_argument);
  auto mismatch = sentence({N, V}, {N, V});
  mismatch.system.pop_back();
  CHECK_THROWS_AS((void)score_a(mismatch), DataError);
}

TEST_CASE("score_b follows the switch-point formula") {
  const auto one = score_b(sentence({N, V}, {N, V}, {1}));
  CHECK(one.value == doctest::Approx(0.6021).epsilon(1e-4));
  CHECK(std::abs(one.value - std::abs(std::log10(0.25))) < 1e-12);
  CHECK(score_b(sentence({N, V, A}, {N, V, A}, {1, 2})).value == doctest::Approx(1.2041).epsilon(1e-4));

  // n = 0 reduces to |log(score_A)|.
  CHECK(score_b(sentence({N, V, A, D}, {N, V, A, N})).value == doctest::Approx(std::abs(std::log10(0.75))));
  CHECK(score_b(sentence({N, V}, {N, V}, {1}), {2.0, 10.0}).value == doctest::Approx(2.0));

  // A switch point whose tags disagree falls back to score_A.
  const auto fallback = score_b(sentence({N, V, A, D}, {N, A, A, D}, {2}));
  CHECK(fallback.value == 0.75);
  CHECK_FALSE(fallback.capped);

  const auto capped = score_b(sentence({N}, {V}));
  CHECK(capped.capped);
  CHECK(capped.value == 10.0);

  CHECK_THROWS_AS((void)score_b(sentence({N}, {N}), {1.0, 10.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)score_b(sentence({N}, {N}), {-2.0, 10.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)score_b(sentence({N, V}, {N, V}, {2})), DataError);
}

TEST_CASE("alpha is 1 under perfect agreement and defined when all ratings agree") {
  const std::vector<SentencePair> same = {sentence({N, V, A}, {N, V, A}), sentence({D}, {D})};
  CHECK(krippendorff_alpha(same, Metric::kNominal) == 1.0);
  CHECK(krippendorff_alpha(same, Metric::kInterval) == 1.0);
  const std::vector<SentencePair> constant = {sentence({N, N}, {N, N})};
  CHECK(krippendorff_alpha(constant, Metric::kNominal) == 1.0);
  CHECK_THROWS_AS((void)krippendorff_alpha(std::vector<SentencePair>{}, Metric::kNominal), std::invalid_argument);
}

TEST_CASE("alpha for two observers on binary data") {
  // Two observers, ten units, binary values.
  const std::vector<int> a = {0, 1, 0, 0, 0, 0, 0, 0, 1, 0};
  const std::vector<int> b = {1, 1, 1, 0, 0, 1, 0, 0, 0, 0};
  std::vector<std::pair<double, double>> units;
  for (std::size_t i = 0; i < a.size(); ++i) units.emplace_back(a[i], b[i]);
  const double alpha = krippendorff_alpha(units, Metric::kNominal);
  CHECK(alpha == doctest::Approx(0.095).epsilon(1e-3));
  CHECK(std::abs(alpha - 2.0 / 21.0) < 1e-12);
  // Binary data: interval and nominal coincide.
  CHECK(std::abs(krippendorff_alpha(units, Metric::kInterval) - alpha) < 1e-12);
}

TEST_CASE("alpha matches the pairable-value oracle") {
  nnet::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t units = 1 + rng.below(5);
    const std::size_t tags = 1 + rng.below(3);
    std::vector<std::pair<double, double>> data;
    for (std::size_t u = 0; u < units; ++u) {
      data.emplace_back(static_cast<double>(rng.below(tags)), static_cast<double>(rng.below(tags)));
    }
    CHECK(std::abs(krippendorff_alpha(data, Metric::kNominal) - testing::brute_force_alpha(data, false)) < 1e-10);
    CHECK(std::abs(krippendorff_alpha(data, Metric::kInterval) - testing::brute_force_alpha(data, true)) < 1e-10);
  }
}

TEST_CASE("nominal alpha ignores tag names") {
  nnet::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SentencePair> pairs;
    std::vector<SentencePair> renamed;
    std::vector<UniversalTag> perm(kAllUniversalTags.begin(), kAllUniversalTags.end());
    rng.shuffle(std::span(perm));
    for (int s = 0; s < 3; ++s) {
      std::vector<UniversalTag> m;
      std::vector<UniversalTag> y;
      for (std::size_t i = 0; i < 1 + rng.below(5); ++i) {
        m.push_back(kAllUniversalTags[rng.below(4)]);
        y.push_back(kAllUniversalTags[rng.below(4)]);
      }
      pairs.push_back(sentence(m, y));
      for (auto& t : m) t = perm[code_of(t)];
      for (auto& t : y) t = perm[code_of(t)];
      renamed.push_back(sentence(m, y));
    }
    CHECK(std::abs(krippendorff_alpha(pairs, Metric::kNominal) - krippendorff_alpha(renamed, Metric::kNominal)) <
          1e-12);
  }
}

TEST_CASE("confusion report") {
  const std::vector<SentencePair> single = {sentence({N}, {A})};
  const auto r = confusion_report(single);
  REQUIRE(r.rows.size() == kNumUniversalTags);
  const auto& noun = r.rows[code_of(N)];
  CHECK(noun.manual == 1);
  CHECK(noun.system == 0);
  CHECK(noun.difference == 1);
  REQUIRE(noun.confusions.size() == 1);
  CHECK(noun.confusions[0] == std::pair{A, std::size_t{1}});
  CHECK(r.capped_sentences == std::vector<std::size_t>{0});

  const std::vector<SentencePair> same = {sentence({N, V, A}, {N, V, A}), sentence({D, N}, {D, N})};
  const auto s = confusion_report(same);
  for (const auto& row : s.rows) {
    CHECK(row.difference == 0);
    CHECK(row.confusions.empty());
  }
  CHECK(s.mean_score_a == 1.0);
  CHECK(s.alpha_interval == 1.0);

  const std::vector<SentencePair> mixed = {sentence({N, N, N, V}, {A, A, D, V}), sentence({V, A}, {N, A})};
  const auto m = confusion_report(mixed);
  std::size_t manual = 0;
  std::size_t system = 0;
  for (const auto& row : m.rows) {
    manual += row.manual;
    system += row.system;
  }
  CHECK(manual == 6);
  CHECK(system == 6);
  CHECK(m.tokens == 6);
  CHECK(m.rows[code_of(N)].confusions.front() == std::pair{A, std::size_t{2}});
  CHECK(m.mean_score_a == doctest::Approx((0.25 + 0.5) / 2));

  std::vector<SentencePair> reversed(mixed.rbegin(), mixed.rend());
  CHECK(confusion_report(reversed).mean_score_a == m.mean_score_a);
  CHECK(confusion_report(reversed).mean_score_b == m.mean_score_b);

  const auto j = nlohmann::json::parse(report_json(m));
  CHECK(j["tokens"] == 6);
  CHECK(format_report(m).find("NOUN") != std::string::npos);
  CHECK(confusion_report(std::vector<SentencePair>{}).tokens == 0);
}

TEST_CASE("parallel and merged input") {
  const auto pairs = parse_parallel("a/NOUN b/VERB\nc\\en\\NOUN d\\bn\\VERB e\\bn\\ADJ\n",
                                    "a/NOUN b/ADJ\nc\\en\\NOUN d\\bn\\VERB e\\bn\\NOUN\n");
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].switch_points.empty());
  CHECK(pairs[1].switch_points == std::vector<std::size_t>{1});
  CHECK(score_a(pairs[0]) == 0.5);

  try {
    (void)parse_parallel("a/NOUN\nb/NOUN c/NOUN\n", "a/NOUN\nb/NOUN\n");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("sentence 2") != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_parallel("a/NOUN\n", "a/NOUN\nb/NOUN\n"), DataError);
  CHECK_THROWS_AS((void)parse_parallel("a/FOO\n", "a/NOUN\n"), DataError);

  const auto merged = parse_merged(
      "{\"manual\": [[\"a\", \"NOUN\"], [\"b\", \"VERB\"]], \"system\": [[\"a\", \"NOUN\"], [\"b\", \"VERB\"]], "
      "\"switch_points\": [1]}\n");
  REQUIRE(merged.size() == 1);
  CHECK(score_b(merged[0]).value == doctest::Approx(0.6021).epsilon(1e-4));
  CHECK_THROWS_AS((void)parse_merged("{\"manual\": [[\"a\", \"NOUN\"]], \"system\": []}\n"), DataError);
}
