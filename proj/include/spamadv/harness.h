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

#ifndef SPAMADV_HARNESS_H_
#define SPAMADV_HARNESS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spamadv/attacks.h"
#include "spamadv/corpus.h"
#include "spamadv/models.h"
#include "spamadv/oracle.h"
#include "spamadv/scoring.h"

namespace spamadv {

// Spam is the positive class.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct MetricsBundle {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when the metric's denominator was zero; the metric is then 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;

  bool operator==(const MetricsBundle&) const = default;
};

ConfusionMatrix compute_confusion(const std::vector<Label>& predictions,
                                  const std::vector<Label>& truth);
// Throws ValidationError for an empty matrix.
MetricsBundle compute_metrics(const ConfusionMatrix& cm);

enum class ModelKind { kNaiveBayes, kLogistic, kAttention, kRemote };
enum class ScoringKind { kSpamWeights, kReplaceOne, kAttentionWeights };
enum class AttackLevel { kNone, kChar, kWord, kSentence, kParagraph };

std::string_view model_kind_name(ModelKind kind);    // nb, logistic, attention, remote
std::string_view scoring_kind_name(ScoringKind kind);  // sw, r1s, aw
std::string_view attack_level_name(AttackLevel level);  // none, char, word, sentence, paragraph
ModelKind parse_model_kind(std::string_view name);
ScoringKind parse_scoring_kind(std::string_view name);
AttackLevel parse_attack_level(std::string_view name);

struct ModelSpec {
  ModelKind kind = ModelKind::kNaiveBayes;
  double nb_alpha = 1.0;
  LogisticHyper logistic;
  AttentionHyper attention;
  std::string remote;  // endpoint for kRemote, see RemoteEndpoint::parse

  bool operator==(const ModelSpec&) const = default;
};

struct ExperimentConfig {
  // Corpus: a `label,text` CSV, or the synthetic generator when empty.
  std::string corpus_path;
  std::size_t synthetic_spam = 1000;
  std::size_t synthetic_ham = 1000;
  std::uint64_t corpus_seed = 7;
  // Replaces the held-out split as the evaluation set when nonempty.
  // Required for the paragraph level.
  std::string testset_path;

  double test_fraction = 0.2;
  std::uint64_t split_seed = 11;
  std::size_t max_vocab = 500;
  std::size_t max_len = Vocabulary::kDefaultMaxLen;
  std::string stopwords_path;  // bundled list when empty
  std::string thesaurus_path;  // bundled table when empty

  ModelSpec target;
  // Defaults to `target` (same trained model, separately counted).
  std::optional<ModelSpec> scoring_model;
  double threshold = 0.5;

  ScoringKind scoring = ScoringKind::kSpamWeights;
  bool global_selection = false;
  std::string score_table_path;  // import instead of querying when nonempty

  AttackLevel level = AttackLevel::kNone;
  std::string attack = "none";   // kind name within the level
  double word_fraction = 0.03;
  double char_fraction = 0.30;
  std::size_t sentence_rank = 0;
  std::uint64_t seed = 1;  // attack randomness

  unsigned threads = 1;  // does not affect results

  // Throws ValidationError for inconsistent combinations.
  void validate() const;
  // Stable key/value echo of every result-affecting field.
  std::map<std::string, std::string> echo() const;
};

struct PerturbationSummary {
  std::uint64_t emails_touched = 0;
  std::uint64_t tokens_edited = 0;
  std::uint64_t chars_edited = 0;
  std::uint64_t skipped = 0;

  bool operator==(const PerturbationSummary&) const = default;
};

struct AttackReport {
  std::map<std::string, std::string> config;
  std::string model;         // target classifier name
  std::string attack_level;  // display form, e.g. "Word-Level"
  std::string attack;        // display form, e.g. "Out Of Vocab"
  std::uint64_t test_size = 0;
  ConfusionMatrix clean_confusion;
  MetricsBundle clean_metrics;
  ConfusionMatrix attacked_confusion;
  MetricsBundle attacked_metrics;
  std::uint64_t scoring_queries = 0;
  std::uint64_t evaluation_queries = 0;
  PerturbationSummary perturbation;
  double wall_time_seconds = 0.0;  // not serialized

  bool operator==(const AttackReport&) const = default;
};

// Everything up to and including the attack-free evaluation; shared by the
// points of a sweep.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);
  ~Experiment();
  Experiment(const Experiment&) = delete;
  Experiment& operator=(const Experiment&) = delete;

  // Attacks the evaluation set with the attack fields of `cell`, which must
  // agree with the construction config on every other field.
  AttackReport run(const ExperimentConfig& cell);
  AttackReport run() { return run(config()); }

  const ExperimentConfig& config() const;
  const Vocabulary& vocab() const;
  const std::vector<RawEmail>& train_emails() const;
  const std::vector<RawEmail>& test_emails() const;
  const std::vector<CleanDoc>& test_docs() const;
  OracleHandle& target_oracle();
  OracleHandle& scoring_oracle();
  // Built on first use.
  const ScoreTable& score_table();
  // Attacked corpus and log of the most recent run().
  const std::vector<RawEmail>& last_attacked_emails() const;
  const std::vector<CleanDoc>& last_attacked_docs() const;
  const PerturbationLog& last_log() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// Stage failures are rethrown as StageError naming the stage.
AttackReport run_experiment(const ExperimentConfig& config);

enum class SweepParameter { kWordFraction, kCharFraction };
SweepParameter parse_sweep_parameter(std::string_view name);

// Trains once, then runs one report per value (ascending).
std::vector<AttackReport> run_sweep(const ExperimentConfig& config,
                                    SweepParameter parameter,
                                    const std::vector<double>& values);

// Column order: Model | Attack Level | Attack | TP | TN | FP | FN | Accuracy
// | Precision | Recall | F1. Ratios print as percentages with two decimals.
std::string table_header();
std::string table_row(const AttackReport& report, bool attacked = true);

enum class ReportFormat { kTable, kStructured };

std::string report_to_json(const AttackReport& report);
AttackReport report_from_json(std::string_view text);
void emit_report(const AttackReport& report, ReportFormat format,
                 const std::string& path);

}  // namespace spamadv

#endif  // SPAMADV_HARNESS_H_
