//
// Copyright 2026 The spamadv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line front end: corpus generation, training, scoring, attacks,
// sweeps and report rendering. Every experiment flag can also come from a
// `--config FILE` of `name=value` lines; flags on the command line win.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spamadv/corpus.h"
#include "spamadv/error.h"
#include "spamadv/harness.h"
#include "spamadv/models.h"
#include "spamadv/synthetic.h"

namespace {

using spamadv::ExperimentConfig;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spamadv::ValidationError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw spamadv::Error("cannot write '" + path + "'");
  }
}

// Turns `name=value` lines into `--name=value` arguments.
std::vector<std::string> config_arguments(const std::string& path) {
  std::vector<std::string> args;
  std::istringstream in(read_text(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw spamadv::ParseError("expected name=value in '" + path + "'", line_no);
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (key.empty() || key == "config") {
      throw spamadv::ParseError("bad key in '" + path + "'", line_no);
    }
    args.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  return args;
}

// Splits out `--config PATH`; returns the remaining arguments.
std::vector<std::string> strip_config(int argc, char** argv, std::string* config) {
  std::vector<std::string> in(argv + 1, argv + argc);
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == "--config" && i + 1 < in.size()) {
      *config = in[++i];
    } else if (in[i].starts_with("--config=")) {
      *config = in[i].substr(9);
    } else {
      rest.push_back(in[i]);
    }
  }
  return rest;
}

// Places config-file arguments right after the subcommand name so that the
// last-value-wins policy lets command-line flags override them. Keys the
// chosen subcommand does not take are ignored, so one file can drive every
// subcommand; keys no subcommand takes are an error.
std::vector<std::string> expand_config(const CLI::App& app,
                                       std::vector<std::string> rest,
                                       const std::string& config) {
  if (config.empty() || rest.empty()) return rest;
  const CLI::App* sub = nullptr;
  for (const CLI::App* s : app.get_subcommands({})) {
    if (s->get_name() == rest.front()) sub = s;
  }
  if (sub == nullptr) return rest;
  std::vector<std::string> out{rest.front()};
  for (std::string& a : config_arguments(config)) {
    const std::string key = a.substr(0, a.find('='));
    if (sub->get_option_no_throw(key) != nullptr) {
      out.push_back(std::move(a));
      continue;
    }
    bool known = false;
    for (const CLI::App* s : app.get_subcommands({})) {
      known = known || s->get_option_no_throw(key) != nullptr;
    }
    if (!known) {
      throw spamadv::ValidationError("unknown config key '" + key.substr(2) +
                                     "' in '" + config + "'");
    }
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

struct ExperimentFlags {
  ExperimentConfig config;
  std::string model = "nb";
  std::string scoring_model;
  std::string scorer_remote;
  std::string scoring = "sw";
  std::string level = "none";

  void attach(CLI::App* app, bool attack_options) {
    ExperimentConfig& c = config;
    app->add_option("--corpus", c.corpus_path, "label,text CSV; synthetic if omitted");
    app->add_option("--synthetic-spam", c.synthetic_spam, "Synthetic spam count");
    app->add_option("--synthetic-ham", c.synthetic_ham, "Synthetic ham count");
    app->add_option("--corpus-seed", c.corpus_seed, "Synthetic corpus seed");
    app->add_option("--testset", c.testset_path, "Evaluation CSV replacing the held-out split");
    app->add_option("--test-fraction", c.test_fraction, "Held-out fraction per class");
    app->add_option("--split-seed", c.split_seed, "Split seed");
    app->add_option("--max-vocab", c.max_vocab, "Vocabulary words, excluding pad and unk");
    app->add_option("--max-len", c.max_len, "Sequence length");
    app->add_option("--stopwords", c.stopwords_path, "Stopword file");
    app->add_option("--thesaurus", c.thesaurus_path, "Thesaurus TSV");
    app->add_option("--model", model, "Target: nb, logistic, attention, remote");
    app->add_option("--remote", c.target.remote, "Remote endpoint: cmd:COMMAND or tcp:HOST:PORT");
    app->add_option("--nb-alpha", c.target.nb_alpha, "Naive Bayes smoothing");
    app->add_option("--lr", lr_, "Learning rate (logistic, attention)");
    app->add_option("--epochs", epochs_, "Epochs (logistic, attention)");
    app->add_option("--l2", c.target.logistic.l2, "Logistic L2 strength");
    app->add_option("--dim", c.target.attention.dim, "Attention embedding size");
    app->add_option("--model-seed", model_seed_, "Model initialization seed");
    app->add_option("--scoring-model", scoring_model, "Scoring model kind; defaults to the target");
    app->add_option("--scoring-remote", scorer_remote, "Endpoint for a remote scoring model");
    app->add_option("--threshold", c.threshold, "Spam threshold");
    app->add_option("--threads", c.threads, "Worker threads (results do not depend on it)");
    if (!attack_options) return;
    app->add_option("--scoring", scoring, "Scoring function: sw, r1s, aw");
    app->add_flag("--global-selection", c.global_selection,
                  "Select the corpus-wide top words of the spam weight table");
    app->add_option("--score-table", c.score_table_path, "Import a spam weight table");
    app->add_option("--level", level, "none, char, word, sentence, paragraph");
    app->add_option("--attack", c.attack, "Attack name within the level");
    app->add_option("--word-fraction", c.word_fraction, "Fraction of distinct words targeted");
    app->add_option("--char-fraction", c.char_fraction, "Fraction of characters edited per word");
    app->add_option("--sentence-rank", c.sentence_rank, "Sentence pool rank");
  }

  ExperimentConfig resolve() {
    ExperimentConfig c = config;
    c.target.kind = spamadv::parse_model_kind(model);
    apply_hyper(c.target);
    if (!scoring_model.empty()) {
      spamadv::ModelSpec s = c.target;
      s.kind = spamadv::parse_model_kind(scoring_model);
      s.remote = scorer_remote;
      c.scoring_model = s;
    }
    c.scoring = spamadv::parse_scoring_kind(scoring);
    c.level = spamadv::parse_attack_level(level);
    if (c.level == spamadv::AttackLevel::kParagraph && c.attack == "none") {
      c.attack = "paragraph";
    }
    return c;
  }

 private:
  void apply_hyper(spamadv::ModelSpec& m) const {
    if (lr_) {
      m.logistic.learning_rate = *lr_;
      m.attention.learning_rate = *lr_;
    }
    if (epochs_) {
      m.logistic.epochs = *epochs_;
      m.attention.epochs = *epochs_;
    }
    if (model_seed_) {
      m.logistic.seed = *model_seed_;
      m.attention.seed = *model_seed_;
    }
  }

  std::optional<double> lr_;
  std::optional<int> epochs_;
  std::optional<std::uint64_t> model_seed_;
};

spamadv::ReportFormat parse_format(const std::string& name) {
  if (name == "table") return spamadv::ReportFormat::kTable;
  if (name == "structured" || name == "json") return spamadv::ReportFormat::kStructured;
  throw spamadv::ValidationError("unknown format '" + name +
                                 "' (expected table or structured)");
}

std::string render(const spamadv::AttackReport& r, spamadv::ReportFormat f) {
  if (f == spamadv::ReportFormat::kStructured) return spamadv::report_to_json(r);
  return spamadv::table_header() + "\n" + spamadv::table_row(r, false) + "\n" +
         spamadv::table_row(r, true) + "\n";
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw spamadv::ValidationError("bad sweep value '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Black-box adversarial attacks against text spam classifiers"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  app.footer("Any flag may also be set in a --config FILE of name=value lines; flags win.");
  std::string config_path;
  std::vector<std::string> rest = strip_config(argc, argv, &config_path);

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "Write the synthetic corpus as CSV");
  std::size_t gen_spam = 1000;
  std::size_t gen_ham = 1000;
  std::uint64_t gen_seed = 7;
  std::string gen_out;
  gen->add_option("--synthetic-spam", gen_spam, "Spam count");
  gen->add_option("--synthetic-ham", gen_ham, "Ham count");
  gen->add_option("--corpus-seed", gen_seed, "Seed");
  gen->add_option("--out", gen_out, "Output CSV")->required();

  // train
  auto* train = app.add_subcommand("train", "Train the target and report attack-free metrics");
  ExperimentFlags train_flags;
  train_flags.attach(train, false);
  std::string train_out;
  train->add_option("--out", train_out, "Write the trained parameters");

  // score
  auto* score = app.add_subcommand("score", "Build the spam weight table");
  ExperimentFlags score_flags;
  score_flags.attach(score, false);
  std::string score_out;
  score->add_option("--out", score_out, "Output TSV")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Attack-free evaluation");
  ExperimentFlags eval_flags;
  eval_flags.attach(eval, false);
  std::string eval_out = "-";
  std::string eval_format = "table";
  eval->add_option("--out", eval_out, "Report path, - for stdout");
  eval->add_option("--format", eval_format, "table or structured");

  // attack
  auto* attack = app.add_subcommand("attack", "Run one attack experiment");
  ExperimentFlags attack_flags;
  attack_flags.attach(attack, true);
  std::string attack_out = "-";
  std::string attack_format = "structured";
  std::string attacked_corpus;
  std::string attack_log;
  attack->add_option("--seed", attack_flags.config.seed, "Attack seed")->required();
  attack->add_option("--out", attack_out, "Report path, - for stdout");
  attack->add_option("--format", attack_format, "table or structured");
  attack->add_option("--attacked-corpus", attacked_corpus, "Write the attacked test set");
  attack->add_option("--log", attack_log, "Write the perturbation log (JSON lines)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Train once, attack for each value");
  ExperimentFlags sweep_flags;
  sweep_flags.attach(sweep, true);
  std::string sweep_param;
  std::string sweep_values;
  std::string sweep_out = "-";
  std::string sweep_format = "table";
  sweep->add_option("--seed", sweep_flags.config.seed, "Attack seed")->required();
  sweep->add_option("--parameter", sweep_param, "word_fraction or char_fraction")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated ascending values")->required();
  sweep->add_option("--out", sweep_out, "Output path, - for stdout");
  sweep->add_option("--format", sweep_format, "table or structured");

  // report
  auto* report = app.add_subcommand("report", "Render a structured report");
  std::string report_in;
  std::string report_format = "table";
  std::string report_out = "-";
  report->add_option("--in", report_in, "Structured report")->required();
  report->add_option("--format", report_format, "table or structured");
  report->add_option("--out", report_out, "Output path, - for stdout");

  std::vector<std::string> args = expand_config(app, std::move(rest), config_path);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (gen->parsed()) {
    spamadv::save_csv_corpus(gen_out,
                             spamadv::generate_synthetic_corpus(gen_spam, gen_ham, gen_seed));
    std::cout << "wrote " << gen_spam + gen_ham << " emails to " << gen_out << "\n";
  } else if (train->parsed()) {
    ExperimentConfig c = train_flags.resolve();
    spamadv::Experiment e(c);
    if (!train_out.empty()) {
      write_text(train_out, spamadv::dump_parameters(e.target_oracle().classifier()));
    }
    std::cout << "vocabulary " << e.vocab().size() << "\n"
              << spamadv::table_header() << "\n"
              << spamadv::table_row(e.run(), false) << "\n";
  } else if (score->parsed()) {
    ExperimentConfig c = score_flags.resolve();
    spamadv::Experiment e(c);
    const spamadv::ScoreTable& table = e.score_table();
    table.save(score_out);
    std::cout << "scored " << table.size() << " words with " << table.queries()
              << " queries\n";
  } else if (eval->parsed()) {
    ExperimentConfig c = eval_flags.resolve();
    write_text(eval_out, render(spamadv::run_experiment(c), parse_format(eval_format)));
  } else if (attack->parsed()) {
    ExperimentConfig c = attack_flags.resolve();
    const auto format = parse_format(attack_format);
    spamadv::Experiment e(c);
    const spamadv::AttackReport r = e.run();
    write_text(attack_out, render(r, format));
    if (!attacked_corpus.empty()) {
      spamadv::save_csv_corpus(attacked_corpus, e.last_attacked_emails());
    }
    if (!attack_log.empty()) write_text(attack_log, e.last_log().to_jsonl());
  } else if (sweep->parsed()) {
    ExperimentConfig c = sweep_flags.resolve();
    const auto format = parse_format(sweep_format);
    const auto reports = spamadv::run_sweep(
        c, spamadv::parse_sweep_parameter(sweep_param), parse_values(sweep_values));
    std::string out;
    if (format == spamadv::ReportFormat::kTable) {
      out = spamadv::table_header() + "\n" +
            spamadv::table_row(reports.front(), false) + "\n";
      for (const auto& r : reports) out += spamadv::table_row(r) + "\n";
    } else {
      nlohmann::json array = nlohmann::json::array();
      for (const auto& r : reports) {
        array.push_back(nlohmann::json::parse(spamadv::report_to_json(r)));
      }
      out = array.dump(2) + "\n";
    }
    write_text(sweep_out, out);
  } else if (report->parsed()) {
    const auto r = spamadv::report_from_json(read_text(report_in));
    write_text(report_out, render(r, parse_format(report_format)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const spamadv::StageError& e) {
    std::cerr << "spamadv: " << e.what() << "\n";
    return e.is_validation() ? kExitValidation : kExitRuntime;
  } catch (const spamadv::ValidationError& e) {
    std::cerr << "spamadv: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "spamadv: " << e.what() << "\n";
    return kExitRuntime;
  }
}
