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

// Command-line front end: train, tag, switch-stats, eval.
//
// Exit codes: 0 success, 2 usage or config error, 3 data error, 4 model
// error, 5 I/O error.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "codemix/pipeline.hpp"

namespace {

using namespace codemix;
using pipeline::PipelineConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitModel = 4;
constexpr int kExitIo = 5;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> log_base;
};

PipelineConfig resolve_config(const CommonOptions& common) {
  PipelineConfig cfg = common.config.empty() ? PipelineConfig{} : pipeline::load_config(common.config);
  if (common.seed) cfg.seed = *common.seed;
  if (common.log_base) cfg.scoring.log_base = *common.log_base;
  cfg.finalize();
  return cfg;
}

// Writes through a temporary buffer so a failed run leaves no partial file.
class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {}
  std::ostream& stream() { return buffer_; }
  void commit() {
    if (path_.empty() || path_ == "-") {
      std::cout << buffer_.str();
      std::cout.flush();
      if (!std::cout) throw IoError("failed writing standard output");
      return;
    }
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw IoError("cannot write output file: " + path_);
    out << buffer_.str();
    if (!out) throw IoError("failed writing output file: " + path_);
  }

 private:
  std::string path_;
  std::ostringstream buffer_;
};

int run_train(const std::string& subject_name, const std::string& data, const std::string& model_out,
              const std::string& metrics_path, const CommonOptions& common) {
  const auto subject = pipeline::parse_train_subject(subject_name);
  if (!subject) throw pipeline::ConfigError("unknown training subject '" + subject_name + "'");
  const PipelineConfig cfg = resolve_config(common);
  std::ostringstream metrics;
  const auto outcome = pipeline::train_model(*subject, data, model_out, cfg, &metrics);
  std::cout << "trained " << subject_name << " on " << outcome.train_size << " examples";
  if (outcome.validation_size > 0) std::cout << " (" << outcome.validation_size << " held out)";
  std::cout << "\n";
  std::cout << std::fixed << std::setprecision(4);
  for (const auto& e : outcome.epochs) {
    std::cout << "epoch " << e.epoch << "\tloss " << e.train_loss << "\tacc " << e.train_accuracy << "\tval_loss "
              << e.validation_loss << "\tval_acc " << e.validation_accuracy << "\n";
  }
  if (!metrics_path.empty()) {
    Output out(metrics_path);
    out.stream() << metrics.str();
    out.commit();
  }
  return kExitOk;
}

int run_tag(const std::string& input, const std::string& input_format, const std::string& output,
            const std::string& format_name, const std::string& discards_path, const CommonOptions& common) {
  const auto format = pipeline::parse_output_format(format_name);
  if (!format) throw pipeline::ConfigError("--format must be text or records");
  textprep::CorpusFormat corpus_format;
  if (input_format == "text") {
    corpus_format = textprep::CorpusFormat::kText;
  } else if (input_format == "records") {
    corpus_format = textprep::CorpusFormat::kRecords;
  } else {
    throw pipeline::ConfigError("--input-format must be text or records");
  }
  const PipelineConfig cfg = resolve_config(common);
  const auto models = pipeline::Pipeline::load(cfg);
  const auto corpus = textprep::ingest_corpus(input, corpus_format);
  const auto run = pipeline::run_tagging(models, corpus);

  Output out(output);
  pipeline::write_tagged(out.stream(), run, *format);
  out.commit();
  if (!discards_path.empty()) {
    Output log(discards_path);
    pipeline::write_discards(log.stream(), run.discarded);
    log.commit();
  }
  for (const auto& d : run.discarded) {
    if (d.reason == "error") std::cerr << "warning: tweet " << d.id << ": " << d.detail << "\n";
  }
  return kExitOk;
}

int run_switch_stats(const std::string& input, const std::vector<std::size_t>& thresholds,
                     const std::string& output) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw DataError("cannot read tagged corpus: " + input);
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto corpus = pipeline::parse_language_tagged(buf.str(), input);
  const auto stats = segment::switch_stats(corpus, thresholds);
  Output out(output);
  out.stream() << pipeline::format_switch_stats(stats);
  out.commit();
  return kExitOk;
}

int run_eval(const std::string& manual, const std::string& system, const std::string& merged,
             const std::string& format_name, const std::string& output, const CommonOptions& common) {
  const auto format = pipeline::parse_output_format(format_name);
  if (!format) throw pipeline::ConfigError("--format must be text or records");
  if (merged.empty() == (manual.empty() || system.empty())) {
    throw pipeline::ConfigError("give either --manual and --system, or --merged");
  }
  const PipelineConfig cfg = resolve_config(common);
  const auto pairs = merged.empty() ? eval::load_parallel(manual, system) : eval::load_merged(merged);
  const auto report = eval::confusion_report(pairs, cfg.scoring);
  Output out(output);
  if (*format == pipeline::OutputFormat::kText) {
    out.stream() << eval::format_report(report);
  } else {
    out.stream() << eval::report_json(report) << '\n';
  }
  out.commit();
  for (std::size_t s : report.capped_sentences) {
    std::cerr << "warning: sentence " << s + 1 << ": score_A is 0 with matching switch points; score_B capped\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Code-mixed English-Bengali language identification and POS tagging"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* sub, bool log_base) {
    sub->add_option("--config", common.config, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", common.seed, "Random seed (overrides the config)");
    if (log_base) sub->add_option("--log-base", common.log_base, "Logarithm base for score_B");
  };

  std::string subject, data, model_out, metrics;
  auto* train = app.add_subcommand("train", "Train a model: langid, translit, hmm-en or hmm-bn");
  train->add_option("subject", subject, "What to train")->required()->check(
      CLI::IsMember({"langid", "translit", "hmm-en", "hmm-bn"}));
  train->add_option("--data", data, "Training data file")->required();
  train->add_option("--out", model_out, "Model output file")->required();
  train->add_option("--metrics", metrics, "Write per-epoch metrics as JSON lines");
  add_common(train, false);

  std::string input, input_format = "text", output = "-", format = "text", discards;
  auto* tag = app.add_subcommand("tag", "Run the full tagging pipeline over a corpus");
  tag->add_option("--input", input, "Corpus file")->required();
  tag->add_option("--input-format", input_format, "text (one tweet per line) or records (JSON lines)");
  tag->add_option("--output", output, "Output file, '-' for stdout");
  tag->add_option("--format", format, "text or records");
  tag->add_option("--discards", discards, "Discard log (JSON lines)");
  add_common(tag, false);

  std::vector<std::size_t> thresholds = {500, 1000};
  auto* stats = app.add_subcommand("switch-stats", "Language switch bigram counts");
  stats->add_option("--input", input, "Language-tagged corpus")->required();
  stats->add_option("--thresholds", thresholds, "Distinct-bigram frequency thresholds")->delimiter(',');
  stats->add_option("--output", output, "Output file, '-' for stdout");

  std::string manual, system, merged;
  auto* ev = app.add_subcommand("eval", "Agreement between manual and system tags");
  ev->add_option("--manual", manual, "Manually tagged sentences");
  ev->add_option("--system", system, "System tagged sentences");
  ev->add_option("--merged", merged, "Merged JSON-lines file");
  ev->add_option("--format", format, "text or records");
  ev->add_option("--output", output, "Output file, '-' for stdout");
  add_common(ev, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*train) return run_train(subject, data, model_out, metrics, common);
    if (*tag) return run_tag(input, input_format, output, format, discards, common);
    if (*stats) return run_switch_stats(input, thresholds, output);
    if (*ev) return run_eval(manual, system, merged, format, output, common);
  } catch (const pipeline::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitConfig;
}
