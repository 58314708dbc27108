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
#include <utility>
#include <vector>

#include "codemix/types.hpp"

namespace codemix::eval {

struct TaggedToken {
  std::string surface;
  UniversalTag tag = UniversalTag::kX;

  bool operator==(const TaggedToken&) const = default;
};

// One sentence tagged by a human and by the system. switch_points[j] = i
// marks the boundary between tokens i-1 and i.
struct SentencePair {
  std::vector<TaggedToken> manual;
  std::vector<TaggedToken> system;
  std::vector<std::size_t> switch_points;

  // Throws DataError if the streams differ in length or surfaces, or a
  // switch point is out of range.
  void validate() const;
};

// Fraction of tokens whose tags agree. Throws std::invalid_argument when empty.
double score_a(const SentencePair& pair);

// True when both tokens at every switch point carry agreeing tags.
bool switch_points_match(const SentencePair& pair);

struct ScoreBOptions {
  double log_base = 10.0;
  double cap = 10.0;  // returned when score_A is 0 but the switch points match
};

struct ScoreB {
  double value = 0.0;
  bool capped = false;
};

// |log_base(score_A * 0.25^n)| when the switch points match, otherwise
// score_A. Throws std::invalid_argument for a base that is not positive or 1.
ScoreB score_b(const SentencePair& pair, const ScoreBOptions& options = {});

enum class Metric { kNominal, kInterval };

// Alpha for units rated by exactly two coders. Values are numeric codes;
// nominal distance is 0/1, interval distance is the squared difference.
// Returns 1.0 when expected disagreement is zero. Throws
// std::invalid_argument when there are no units.
double krippendorff_alpha(std::span<const std::pair<double, double>> units, Metric metric);

// Every token is a unit; codes are UniversalTag declaration indices.
double krippendorff_alpha(std::span<const SentencePair> pairs, Metric metric);

struct TagRow {
  UniversalTag tag = UniversalTag::kX;
  std::size_t manual = 0;
  std::size_t system = 0;
  std::size_t difference = 0;
  // System tags assigned where the manual tag is `tag`, most frequent first.
  std::vector<std::pair<UniversalTag, std::size_t>> confusions;
};

struct AgreementReport {
  std::vector<TagRow> rows;  // one per UniversalTag, declaration order
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  double mean_score_a = 0.0;
  double mean_score_b = 0.0;
  double alpha_nominal = 1.0;
  double alpha_interval = 1.0;
  std::vector<std::size_t> capped_sentences;  // indices where score_B hit the cap
};

AgreementReport confusion_report(std::span<const SentencePair> pairs, const ScoreBOptions& options = {});

std::string format_report(const AgreementReport& report);
std::string report_json(const AgreementReport& report);

// Parallel files, one sentence per line. Tokens are "word/UTAG" or
// "surface\lang\UTAG"; with the latter, switch points come from the manual
// languages. Throws DataError naming the first offending sentence.
std::vector<SentencePair> parse_parallel(std::string_view manual, std::string_view system);
std::vector<SentencePair> load_parallel(const std::filesystem::path& manual, const std::filesystem::path& system);

// JSON lines: {"manual": [[w, UTAG], ...], "system": [...], "switch_points": [...]}.
std::vector<SentencePair> parse_merged(std::string_view content, std::string_view source_name = "<merged>");
std::vector<SentencePair> load_merged(const std::filesystem::path& path);

}  // namespace codemix::eval
