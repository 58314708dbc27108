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

#include "codemix/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace codemix::eval {
namespace {

struct ParsedToken {
  TaggedToken token;
  std::optional<LanguageTag> language;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read evaluation file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_lines(std::string_view content) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

ParsedToken parse_token(const std::string& item, std::size_t sentence) {
  auto fail = [&](std::string_view why) {
    std::ostringstream msg;
    msg << "sentence " << sentence << ": " << why << " '" << item << "'";
    return DataError(msg.str());
  };
  ParsedToken out;
  std::string tag_text;
  const auto last = item.rfind('\\');
  if (last != std::string::npos && last > 0) {
    const auto first = item.rfind('\\', last - 1);
    if (first == std::string::npos || first == 0) throw fail("expected surface\\lang\\UTAG");
    out.token.surface = item.substr(0, first);
    out.language = parse_language(item.substr(first + 1, last - first - 1));
    if (!out.language) throw fail("unknown language in");
    tag_text = item.substr(last + 1);
  } else {
    const auto slash = item.rfind('/');
    if (slash == std::string::npos || slash == 0) throw fail("expected word/UTAG, got");
    out.token.surface = item.substr(0, slash);
    tag_text = item.substr(slash + 1);
  }
  const auto tag = parse_universal(tag_text);
  if (!tag) throw fail("unknown universal tag in");
  out.token.tag = *tag;
  return out;
}

std::vector<ParsedToken> parse_sentence(const std::string& line, std::size_t sentence) {
  std::vector<ParsedToken> out;
  std::istringstream in(line);
  std::string item;
  while (in >> item) out.push_back(parse_token(item, sentence));
  return out;
}

bool is_switch(std::optional<LanguageTag> a, std::optional<LanguageTag> b) {
  if (!a || !b || *a == LanguageTag::kUnknown || *b == LanguageTag::kUnknown) return false;
  return *a != *b;
}

std::vector<TaggedToken> json_tokens(const nlohmann::json& j) {
  std::vector<TaggedToken> out;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2) throw DataError("token must be [surface, UTAG]");
    const auto tag = parse_universal(item.at(1).get<std::string>());
    if (!tag) throw DataError("unknown universal tag '" + item.at(1).get<std::string>() + "'");
    out.push_back({item.at(0).get<std::string>(), *tag});
  }
  return out;
}

}  // namespace

void SentencePair::validate() const {
  if (manual.size() != system.size()) {
    throw DataError("manual has " + std::to_string(manual.size()) + " tokens, system has " +
                    std::to_string(system.size()));
  }
  for (std::size_t i = 0; i < manual.size(); ++i) {
    if (manual[i].surface != system[i].surface) {
      throw DataError("token " + std::to_string(i) + " differs: '" + manual[i].surface + "' vs '" +
                      system[i].surface + "'");
    }
  }
  for (std::size_t sp : switch_points) {
    if (sp == 0 || sp >= manual.size()) throw DataError("switch point " + std::to_string(sp) + " out of range");
  }
}

double score_a(const SentencePair& pair) {
  if (pair.manual.empty()) throw std::invalid_argument("score_a: empty sentence");
  pair.validate();
  std::size_t matched = 0;
  for (std::size_t i = 0; i < pair.manual.size(); ++i) matched += pair.manual[i].tag == pair.system[i].tag ? 1 : 0;
  return static_cast<double>(matched) / static_cast<double>(pair.manual.size());
}

bool switch_points_match(const SentencePair& pair) {
  pair.validate();
  for (std::size_t sp : pair.switch_points) {
    if (pair.manual[sp - 1].tag != pair.system[sp - 1].tag || pair.manual[sp].tag != pair.system[sp].tag) {
      return false;
    }
  }
  return true;
}

ScoreB score_b(const SentencePair& pair, const ScoreBOptions& options) {
  if (!(options.log_base > 0.0) || options.log_base == 1.0 || !std::isfinite(options.log_base)) {
    throw std::invalid_argument("score_b: log base must be positive and not 1");
  }
  const double a = score_a(pair);
  if (!switch_points_match(pair)) return {a, false};
  if (a == 0.0) return {options.cap, true};
  const double n = static_cast<double>(pair.switch_points.size());
  const double product = a * std::pow(0.25, n);
  return {std::abs(std::log(product) / std::log(options.log_base)), false};
}

double krippendorff_alpha(std::span<const std::pair<double, double>> units, Metric metric) {
  if (units.empty()) throw std::invalid_argument("krippendorff_alpha: no units");
  std::map<double, std::size_t> index;
  for (const auto& [a, b] : units) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("krippendorff_alpha: non-finite value");
    index.emplace(a, 0);
    index.emplace(b, 0);
  }
  std::vector<double> values;
  for (auto& [v, i] : index) {
    i = values.size();
    values.push_back(v);
  }
  const std::size_t k = values.size();
  // Two values per unit, so each ordered pair contributes 1 / (m_u - 1) = 1.
  std::vector<double> coincidence(k * k, 0.0);
  for (const auto& [a, b] : units) {
    const std::size_t ia = index[a];
    const std::size_t ib = index[b];
    coincidence[ia * k + ib] += 1.0;
    coincidence[ib * k + ia] += 1.0;
  }
  std::vector<double> marginal(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) marginal[c] += coincidence[c * k + d];
  }
  const double n = 2.0 * static_cast<double>(units.size());
  auto delta = [&](std::size_t c, std::size_t d) {
    if (metric == Metric::kNominal) return c == d ? 0.0 : 1.0;
    const double diff = values[c] - values[d];
    return diff * diff;
  };
  double observed = 0.0;
  double expected = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < k; ++d) {
      const double dist = delta(c, d);
      observed += coincidence[c * k + d] * dist;
      expected += marginal[c] * marginal[d] * dist;
    }
  }
  if (expected == 0.0) return 1.0;
  return 1.0 - (n - 1.0) * observed / expected;
}

double krippendorff_alpha(std::span<const SentencePair> pairs, Metric metric) {
  std::vector<std::pair<double, double>> units;
  for (const auto& pair : pairs) {
    pair.validate();
    for (std::size_t i = 0; i < pair.manual.size(); ++i) {
      units.emplace_back(static_cast<double>(code_of(pair.manual[i].tag)),
                         static_cast<double>(code_of(pair.system[i].tag)));
    }
  }
  return krippendorff_alpha(units, metric);
}

AgreementReport confusion_report(std::span<const SentencePair> pairs, const ScoreBOptions& options) {
  AgreementReport report;
  std::array<std::array<std::size_t, kNumUniversalTags>, kNumUniversalTags> confusion{};
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    const auto& pair = pairs[s];
    try {
      pair.validate();
    } catch (const DataError& e) {
      throw DataError("sentence " + std::to_string(s + 1) + ": " + e.what());
    }
    for (std::size_t i = 0; i < pair.manual.size(); ++i) {
      ++confusion[code_of(pair.manual[i].tag)][code_of(pair.system[i].tag)];
    }
    report.tokens += pair.manual.size();
    if (pair.manual.empty()) continue;
    ++report.sentences;
    sum_a += score_a(pair);
    const ScoreB b = score_b(pair, options);
    sum_b += b.value;
    if (b.capped) report.capped_sentences.push_back(s);
  }
  for (UniversalTag tag : kAllUniversalTags) {
    const std::size_t t = code_of(tag);
    TagRow row;
    row.tag = tag;
    for (std::size_t o = 0; o < kNumUniversalTags; ++o) {
      row.manual += confusion[t][o];
      row.system += confusion[o][t];
      if (o != t && confusion[t][o] > 0) row.confusions.emplace_back(kAllUniversalTags[o], confusion[t][o]);
    }
    row.difference = row.manual > row.system ? row.manual - row.system : row.system - row.manual;
    std::stable_sort(row.confusions.begin(), row.confusions.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    report.rows.push_back(std::move(row));
  }
  if (report.sentences > 0) {
    report.mean_score_a = sum_a / static_cast<double>(report.sentences);
    report.mean_score_b = sum_b / static_cast<double>(report.sentences);
  }
  if (report.tokens > 0) {
    report.alpha_nominal = krippendorff_alpha(pairs, Metric::kNominal);
    report.alpha_interval = krippendorff_alpha(pairs, Metric::kInterval);
  }
  return report;
}

std::string format_report(const AgreementReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(6) << "Tag" << std::right << std::setw(10) << "Manual" << std::setw(10) << "System"
      << std::setw(8) << "Diff" << "  Confusions\n";
  for (const auto& row : report.rows) {
    out << std::left << std::setw(6) << to_string(row.tag) << std::right << std::setw(10) << row.manual
        << std::setw(10) << row.system << std::setw(8) << row.difference << "  ";
    for (std::size_t i = 0; i < row.confusions.size(); ++i) {
      if (i > 0) out << ", ";
      out << to_string(row.confusions[i].first) << ":" << row.confusions[i].second;
    }
    out << "\n";
  }
  out << std::fixed << std::setprecision(4);
  out << "sentences " << report.sentences << "\n";
  out << "tokens " << report.tokens << "\n";
  out << "mean score_A " << report.mean_score_a << "\n";
  out << "mean score_B " << report.mean_score_b << "\n";
  out << "alpha (nominal) " << report.alpha_nominal << "\n";
  out << "alpha (interval) " << report.alpha_interval << "\n";
  if (!report.capped_sentences.empty()) {
    out << "capped score_B sentences:";
    for (std::size_t s : report.capped_sentences) out << " " << s + 1;
    out << "\n";
  }
  return out.str();
}

std::string report_json(const AgreementReport& report) {
  nlohmann::ordered_json j;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["tag"] = to_string(row.tag);
    r["manual"] = row.manual;
    r["system"] = row.system;
    r["difference"] = row.difference;
    auto conf = nlohmann::ordered_json::array();
    for (const auto& [tag, count] : row.confusions) conf.push_back({to_string(tag), count});
    r["confusions"] = conf;
    rows.push_back(r);
  }
  j["rows"] = rows;
  j["sentences"] = report.sentences;
  j["tokens"] = report.tokens;
  j["mean_score_a"] = report.mean_score_a;
  j["mean_score_b"] = report.mean_score_b;
  j["alpha_nominal"] = report.alpha_nominal;
  j["alpha_interval"] = report.alpha_interval;
  auto capped = nlohmann::ordered_json::array();
  for (std::size_t s : report.capped_sentences) capped.push_back(s + 1);
  j["capped_sentences"] = capped;
  return j.dump();
}

std::vector<SentencePair> parse_parallel(std::string_view manual, std::string_view system) {
  const auto m_lines = split_lines(manual);
  const auto s_lines = split_lines(system);
  if (m_lines.size() != s_lines.size()) {
    const std::size_t first = std::min(m_lines.size(), s_lines.size()) + 1;
    throw DataError("sentence " + std::to_string(first) + ": manual has " + std::to_string(m_lines.size()) +
                    " sentences, system has " + std::to_string(s_lines.size()));
  }
  std::vector<SentencePair> pairs;
  for (std::size_t s = 0; s < m_lines.size(); ++s) {
    const auto m = parse_sentence(m_lines[s], s + 1);
    const auto y = parse_sentence(s_lines[s], s + 1);
    SentencePair pair;
    for (const auto& t : m) pair.manual.push_back(t.token);
    for (const auto& t : y) pair.system.push_back(t.token);
    for (std::size_t i = 1; i < m.size(); ++i) {
      if (is_switch(m[i - 1].language, m[i].language)) pair.switch_points.push_back(i);
    }
    try {
      pair.validate();
    } catch (const DataError& e) {
      throw DataError("sentence " + std::to_string(s + 1) + ": " + e.what());
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<SentencePair> load_parallel(const std::filesystem::path& manual, const std::filesystem::path& system) {
  return parse_parallel(read_file(manual), read_file(system));
}

std::vector<SentencePair> parse_merged(std::string_view content, std::string_view source_name) {
  std::vector<SentencePair> pairs;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      SentencePair pair;
      pair.manual = json_tokens(j.at("manual"));
      pair.system = json_tokens(j.at("system"));
      if (j.contains("switch_points")) pair.switch_points = j.at("switch_points").get<std::vector<std::size_t>>();
      pair.validate();
      pairs.push_back(std::move(pair));
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << source_name << ":" << line_no << ": sentence " << pairs.size() + 1 << ": " << e.what();
      throw DataError(msg.str());
    }
  }
  return pairs;
}

std::vector<SentencePair> load_merged(const std::filesystem::path& path) {
  return parse_merged(read_file(path), path.string());
}

}  // namespace codemix::eval
