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

#include "spamadv/harness.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <unordered_set>

#include "json.hpp"
#include "spamadv/error.h"
#include "spamadv/parallel.h"
#include "spamadv/synthetic.h"
#include "text_util.h"

namespace spamadv {
namespace {

using nlohmann::json;

constexpr std::string_view kModelNames[] = {"nb", "logistic", "attention",
                                            "remote"};
constexpr std::string_view kScoringNames[] = {"sw", "r1s", "aw"};
constexpr std::string_view kLevelNames[] = {"none", "char", "word", "sentence",
                                            "paragraph"};

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name, const std::string_view (&names)[N],
                std::string_view what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<Enum>(i);
  }
  std::string choices;
  for (std::string_view n : names) {
    if (!choices.empty()) choices += ", ";
    choices += n;
  }
  throw ValidationError("unknown " + std::string(what) + " '" +
                        std::string(name) + "' (expected one of " + choices + ")");
}

// Shortest form that parses back to the same double.
std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string pct(double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * x);
  return std::string(buf, static_cast<std::size_t>(n));
}

double ratio(std::uint64_t num, std::uint64_t den, bool* undefined) {
  if (den == 0) {
    *undefined = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

// Runs `fn`, attaching the stage name to any failure.
template <typename Fn>
auto in_stage(std::string_view stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const ValidationError& e) {
    throw StageError(std::string(stage), e.what(), true);
  } catch (const std::exception& e) {
    throw StageError(std::string(stage), e.what(), false);
  }
}

std::string display_attack(AttackLevel level, std::string_view attack) {
  static const std::unordered_map<std::string_view, std::string_view> kNames = {
      {"swap", "Swap Letter"},
      {"delete", "Delete Character"},
      {"insert", "Insert Character"},
      {"replace", "Replace Character"},
      {"oov", "Out Of Vocab"},
      {"word_deletion", "Word Deletion"},
      {"synonym", "Synonym Replacement"},
      {"antonym", "Antonym Replacement"},
      {"add_ham", "Add Ham Sentence"},
      {"add_spam", "Add Spam Sentence"},
      {"add_ham_spam", "Add Ham-Spam Sentence"},
  };
  if (level == AttackLevel::kNone) return "Attack Free";
  if (level == AttackLevel::kParagraph) return "Supplied Set";
  const auto it = kNames.find(attack);
  return it == kNames.end() ? std::string(attack) : std::string(it->second);
}

std::string display_level(AttackLevel level) {
  switch (level) {
    case AttackLevel::kNone:
      return "-";
    case AttackLevel::kChar:
      return "Character-Level";
    case AttackLevel::kWord:
      return "Word-Level";
    case AttackLevel::kSentence:
      return "Sentence-Level";
    case AttackLevel::kParagraph:
      return "Paragraph-Level";
  }
  return "-";
}

void echo_model(std::map<std::string, std::string>& out, const std::string& key,
                const ModelSpec& m) {
  out[key + ".kind"] = std::string(model_kind_name(m.kind));
  switch (m.kind) {
    case ModelKind::kNaiveBayes:
      out[key + ".alpha"] = fmt(m.nb_alpha);
      break;
    case ModelKind::kLogistic:
      out[key + ".lr"] = fmt(m.logistic.learning_rate);
      out[key + ".epochs"] = std::to_string(m.logistic.epochs);
      out[key + ".l2"] = fmt(m.logistic.l2);
      out[key + ".seed"] = std::to_string(m.logistic.seed);
      break;
    case ModelKind::kAttention:
      out[key + ".dim"] = std::to_string(m.attention.dim);
      out[key + ".lr"] = fmt(m.attention.learning_rate);
      out[key + ".epochs"] = std::to_string(m.attention.epochs);
      out[key + ".seed"] = std::to_string(m.attention.seed);
      break;
    case ModelKind::kRemote:
      out[key + ".endpoint"] = m.remote;
      break;
  }
}

std::shared_ptr<const Classifier> build_model(
    const ModelSpec& spec, const std::vector<CleanDoc>& train,
    const std::shared_ptr<const Vocabulary>& vocab) {
  switch (spec.kind) {
    case ModelKind::kNaiveBayes:
      return std::make_shared<NaiveBayesModel>(
          train_naive_bayes(train, vocab, spec.nb_alpha));
    case ModelKind::kLogistic:
      return std::make_shared<LogisticModel>(
          train_logistic(train, vocab, spec.logistic));
    case ModelKind::kAttention:
      return std::make_shared<AttentionModel>(
          train_attention(train, vocab, spec.attention));
    case ModelKind::kRemote:
      return connect_remote_classifier(RemoteEndpoint::parse(spec.remote));
  }
  throw ValidationError("unknown model kind");
}

json confusion_json(const ConfusionMatrix& cm) {
  return {{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}};
}

ConfusionMatrix confusion_from(const json& j) {
  return {j.at("tp").get<std::uint64_t>(), j.at("tn").get<std::uint64_t>(),
          j.at("fp").get<std::uint64_t>(), j.at("fn").get<std::uint64_t>()};
}

json metrics_json(const MetricsBundle& m) {
  return {{"accuracy", m.accuracy},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1},
          {"precision_undefined", m.precision_undefined},
          {"recall_undefined", m.recall_undefined},
          {"f1_undefined", m.f1_undefined}};
}

MetricsBundle metrics_from(const json& j) {
  MetricsBundle m;
  m.accuracy = j.at("accuracy").get<double>();
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f1 = j.at("f1").get<double>();
  m.precision_undefined = j.at("precision_undefined").get<bool>();
  m.recall_undefined = j.at("recall_undefined").get<bool>();
  m.f1_undefined = j.at("f1_undefined").get<bool>();
  return m;
}

}  // namespace

ConfusionMatrix compute_confusion(const std::vector<Label>& predictions,
                                  const std::vector<Label>& truth) {
  if (predictions.size() != truth.size()) {
    throw ValidationError("prediction count " + std::to_string(predictions.size()) +
                          " does not match label count " +
                          std::to_string(truth.size()));
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool spam_pred = predictions[i] == Label::kSpam;
    if (truth[i] == Label::kSpam) {
      ++(spam_pred ? cm.tp : cm.fn);
    } else {
      ++(spam_pred ? cm.fp : cm.tn);
    }
  }
  return cm;
}

MetricsBundle compute_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw ValidationError("metrics of an empty confusion matrix");
  MetricsBundle m;
  bool unused = false;
  m.accuracy = ratio(cm.tp + cm.tn, cm.total(), &unused);
  m.precision = ratio(cm.tp, cm.tp + cm.fp, &m.precision_undefined);
  m.recall = ratio(cm.tp, cm.tp + cm.fn, &m.recall_undefined);
  const double denom = m.precision + m.recall;
  if (denom == 0.0) {
    m.f1_undefined = true;
    m.f1 = 0.0;
  } else {
    m.f1 = 2.0 * m.precision * m.recall / denom;
  }
  return m;
}

std::string_view model_kind_name(ModelKind kind) {
  return kModelNames[static_cast<int>(kind)];
}
std::string_view scoring_kind_name(ScoringKind kind) {
  return kScoringNames[static_cast<int>(kind)];
}
std::string_view attack_level_name(AttackLevel level) {
  return kLevelNames[static_cast<int>(level)];
}
ModelKind parse_model_kind(std::string_view name) {
  return parse_enum<ModelKind>(name, kModelNames, "model");
}
ScoringKind parse_scoring_kind(std::string_view name) {
  return parse_enum<ScoringKind>(name, kScoringNames, "scoring function");
}
AttackLevel parse_attack_level(std::string_view name) {
  return parse_enum<AttackLevel>(name, kLevelNames, "attack level");
}

void ExperimentConfig::validate() const {
  if (corpus_path.empty() && (synthetic_spam == 0 || synthetic_ham == 0)) {
    throw ValidationError("synthetic corpus needs at least one email per class");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ValidationError("test_fraction must lie in (0, 1)");
  }
  if (max_vocab == 0) throw ValidationError("max_vocab must be positive");
  if (max_len == 0) throw ValidationError("max_len must be positive");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ValidationError("threshold must lie in (0, 1)");
  }
  if (!(word_fraction > 0.0 && word_fraction <= 1.0)) {
    throw ValidationError("word_fraction must lie in (0, 1]");
  }
  if (!(char_fraction > 0.0 && char_fraction <= 1.0)) {
    throw ValidationError("char_fraction must lie in (0, 1]");
  }
  for (const ModelSpec* m : {&target, scoring_model ? &*scoring_model : nullptr}) {
    if (m == nullptr) continue;
    if (m->kind == ModelKind::kRemote && m->remote.empty()) {
      throw ValidationError("remote model needs an endpoint");
    }
    if (m->kind == ModelKind::kNaiveBayes && !(m->nb_alpha > 0.0)) {
      throw ValidationError("naive Bayes alpha must be positive");
    }
  }
  const ModelSpec& scorer = scoring_model ? *scoring_model : target;
  if (scoring == ScoringKind::kAttentionWeights &&
      scorer.kind != ModelKind::kAttention &&
      (level == AttackLevel::kChar || level == AttackLevel::kWord)) {
    throw ValidationError("attention-weight scoring needs an attention scoring model");
  }
  if (global_selection && scoring != ScoringKind::kSpamWeights) {
    throw ValidationError("global selection ranks the spam weight table; use scoring sw");
  }
  switch (level) {
    case AttackLevel::kNone:
      if (attack != "none") {
        throw ValidationError("attack level none takes attack 'none', got '" +
                              attack + "'");
      }
      break;
    case AttackLevel::kChar:
      if (!parse_char_attack(attack)) {
        throw ValidationError("unknown character attack '" + attack + "'");
      }
      break;
    case AttackLevel::kWord:
      if (!parse_word_attack(attack)) {
        throw ValidationError("unknown word attack '" + attack + "'");
      }
      break;
    case AttackLevel::kSentence:
      if (!parse_sentence_attack(attack)) {
        throw ValidationError("unknown sentence attack '" + attack + "'");
      }
      break;
    case AttackLevel::kParagraph:
      if (testset_path.empty()) {
        throw ValidationError("paragraph level needs a testset path");
      }
      if (attack != "none" && attack != "paragraph") {
        throw ValidationError("paragraph level takes attack 'paragraph'");
      }
      break;
  }
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::map<std::string, std::string> out;
  if (corpus_path.empty()) {
    out["corpus"] = "synthetic";
    out["synthetic_spam"] = std::to_string(synthetic_spam);
    out["synthetic_ham"] = std::to_string(synthetic_ham);
    out["corpus_seed"] = std::to_string(corpus_seed);
  } else {
    out["corpus"] = corpus_path;
  }
  if (!testset_path.empty()) out["testset"] = testset_path;
  out["test_fraction"] = fmt(test_fraction);
  out["split_seed"] = std::to_string(split_seed);
  out["max_vocab"] = std::to_string(max_vocab);
  out["max_len"] = std::to_string(max_len);
  out["stopwords"] = stopwords_path.empty() ? "bundled" : stopwords_path;
  out["thesaurus"] = thesaurus_path.empty() ? "bundled" : thesaurus_path;
  echo_model(out, "target", target);
  echo_model(out, "scorer", scoring_model ? *scoring_model : target);
  out["threshold"] = fmt(threshold);
  out["scoring"] = std::string(scoring_kind_name(scoring));
  out["global_selection"] = global_selection ? "true" : "false";
  if (!score_table_path.empty()) out["score_table"] = score_table_path;
  out["level"] = std::string(attack_level_name(level));
  out["attack"] = attack;
  out["word_fraction"] = fmt(word_fraction);
  out["char_fraction"] = fmt(char_fraction);
  out["sentence_rank"] = std::to_string(sentence_rank);
  out["seed"] = std::to_string(seed);
  return out;
}

struct Experiment::State {
  ExperimentConfig config;
  StopwordSet stopwords;
  Thesaurus thesaurus;
  std::vector<RawEmail> train_raw;
  std::vector<RawEmail> test_raw;
  std::vector<CleanDoc> train_docs;
  std::vector<CleanDoc> test_docs;
  std::shared_ptr<Vocabulary> vocab;
  std::optional<OracleHandle> target;
  std::optional<OracleHandle> scoring;

  std::optional<ScoreTable> table;
  std::optional<SentencePools> pools;
  std::optional<std::vector<TokenScoreList>> r1s;
  std::uint64_t r1s_queries = 0;

  ConfusionMatrix clean_confusion;
  MetricsBundle clean_metrics;
  std::uint64_t clean_queries = 0;

  std::vector<RawEmail> last_emails;
  std::vector<CleanDoc> last_docs;
  PerturbationLog last_log;

  std::vector<Label> evaluate(const std::vector<CleanDoc>& docs) {
    std::vector<Label> preds(docs.size());
    OracleHandle& oracle = *target;
    parallel_for(docs.size(), config.threads,
                 [&](std::size_t i) { preds[i] = oracle.classify(docs[i]); });
    return preds;
  }

  std::vector<Label> truth() const {
    std::vector<Label> out;
    out.reserve(test_docs.size());
    for (const CleanDoc& d : test_docs) out.push_back(d.label);
    return out;
  }

  const ScoreTable& ensure_table() {
    if (!table) {
      table = config.score_table_path.empty()
                  ? build_spam_weights(*scoring, *vocab)
                  : ScoreTable::load(config.score_table_path);
    }
    return *table;
  }

  const std::vector<TokenScoreList>& ensure_r1s() {
    if (!r1s) {
      std::vector<TokenScoreList> lists(test_docs.size());
      const std::uint64_t before = scoring->query_count();
      parallel_for(test_docs.size(), config.threads, [&](std::size_t i) {
        lists[i] = replace_one_scores(*scoring, test_docs[i]);
      });
      r1s_queries = scoring->query_count() - before;
      r1s = std::move(lists);
    }
    return *r1s;
  }
};

Experiment::Experiment(ExperimentConfig config)
    : state_(std::make_unique<State>()) {
  State& s = *state_;
  s.config = std::move(config);
  in_stage("config", [&] { s.config.validate(); });
  const ExperimentConfig& c = s.config;

  in_stage("load", [&] {
    s.stopwords = c.stopwords_path.empty() ? StopwordSet::english()
                                           : StopwordSet::load(c.stopwords_path);
    s.thesaurus = c.thesaurus_path.empty() ? Thesaurus::bundled()
                                           : Thesaurus::load(c.thesaurus_path);
  });
  const std::vector<RawEmail> corpus = in_stage("load", [&] {
    return c.corpus_path.empty()
               ? generate_synthetic_corpus(c.synthetic_spam, c.synthetic_ham,
                                           c.corpus_seed)
               : load_csv_corpus(c.corpus_path);
  });
  in_stage("split", [&] {
    if (corpus.empty()) throw ValidationError("corpus is empty");
    auto [train, test] = split_corpus(corpus, c.test_fraction, c.split_seed);
    s.train_raw = std::move(train);
    s.test_raw = std::move(test);
    if (!c.testset_path.empty()) s.test_raw = load_paragraph_testset(c.testset_path);
    if (s.test_raw.empty()) throw ValidationError("evaluation set is empty");
    s.train_docs = clean_all(s.train_raw, s.stopwords, c.threads);
    s.test_docs = clean_all(s.test_raw, s.stopwords, c.threads);
  });
  in_stage("train", [&] {
    s.vocab = std::make_shared<Vocabulary>(
        build_vocabulary(s.train_docs, c.max_vocab, c.max_len));
    auto target = build_model(c.target, s.train_docs, s.vocab);
    auto scorer = c.scoring_model && !(*c.scoring_model == c.target)
                      ? build_model(*c.scoring_model, s.train_docs, s.vocab)
                      : target;
    s.target.emplace(std::move(target), c.threshold);
    s.scoring.emplace(std::move(scorer), c.threshold);
  });
  in_stage("evaluate", [&] {
    const std::uint64_t before = s.target->query_count();
    s.clean_confusion = compute_confusion(s.evaluate(s.test_docs), s.truth());
    s.clean_metrics = compute_metrics(s.clean_confusion);
    s.clean_queries = s.target->query_count() - before;
  });
}

Experiment::~Experiment() = default;

const ExperimentConfig& Experiment::config() const { return state_->config; }
const Vocabulary& Experiment::vocab() const { return *state_->vocab; }
const std::vector<RawEmail>& Experiment::train_emails() const {
  return state_->train_raw;
}
const std::vector<RawEmail>& Experiment::test_emails() const {
  return state_->test_raw;
}
const std::vector<CleanDoc>& Experiment::test_docs() const {
  return state_->test_docs;
}
OracleHandle& Experiment::target_oracle() { return *state_->target; }
OracleHandle& Experiment::scoring_oracle() { return *state_->scoring; }
const ScoreTable& Experiment::score_table() {
  return in_stage("score", [&]() -> const ScoreTable& {
    return state_->ensure_table();
  });
}
const std::vector<RawEmail>& Experiment::last_attacked_emails() const {
  return state_->last_emails;
}
const std::vector<CleanDoc>& Experiment::last_attacked_docs() const {
  return state_->last_docs;
}
const PerturbationLog& Experiment::last_log() const { return state_->last_log; }

AttackReport Experiment::run(const ExperimentConfig& cell) {
  const auto started = std::chrono::steady_clock::now();
  State& s = *state_;
  // Only the attack fields of `cell` apply; everything trained stays shared.
  ExperimentConfig c = s.config;
  c.scoring = cell.scoring;
  c.global_selection = cell.global_selection;
  c.level = cell.level;
  c.attack = cell.attack;
  c.word_fraction = cell.word_fraction;
  c.char_fraction = cell.char_fraction;
  c.sentence_rank = cell.sentence_rank;
  c.seed = cell.seed;
  in_stage("config", [&] {
    if (c.echo() != cell.echo()) {
      throw ValidationError("sweep cell differs from the experiment outside the attack fields");
    }
    c.validate();
  });

  // Scoring.
  std::uint64_t scoring_queries = 0;
  std::vector<std::set<std::size_t>> targets(s.test_docs.size());
  const SelectionPolicy policy{
      c.level == AttackLevel::kChar ? SelectionLevel::kChar : SelectionLevel::kWord,
      c.word_fraction};
  in_stage("score", [&] {
    if (c.level == AttackLevel::kSentence) {
      const ScoreTable& table = s.ensure_table();
      scoring_queries = table.queries();
      if (!s.pools) s.pools = build_sentence_pools(s.train_raw, table, s.stopwords);
      return;
    }
    if (c.level != AttackLevel::kChar && c.level != AttackLevel::kWord) return;
    switch (c.scoring) {
      case ScoringKind::kSpamWeights: {
        const ScoreTable& table = s.ensure_table();
        scoring_queries = table.queries();
        if (c.global_selection) {
          const GlobalSelection global(table, c.word_fraction);
          for (std::size_t i = 0; i < targets.size(); ++i) {
            targets[i] = global.select(s.test_docs[i]);
          }
        } else {
          parallel_for(targets.size(), c.threads, [&](std::size_t i) {
            targets[i] = select_target_words(s.test_docs[i], table, policy);
          });
        }
        break;
      }
      case ScoringKind::kReplaceOne: {
        const auto& lists = s.ensure_r1s();
        scoring_queries = s.r1s_queries;
        parallel_for(targets.size(), c.threads, [&](std::size_t i) {
          targets[i] = select_target_words(s.test_docs[i], lists[i], policy);
        });
        break;
      }
      case ScoringKind::kAttentionWeights: {
        const auto* model =
            dynamic_cast<const AttentionModel*>(&s.scoring->classifier());
        if (model == nullptr) {
          throw ValidationError("attention-weight scoring needs an attention model");
        }
        parallel_for(targets.size(), c.threads, [&](std::size_t i) {
          const CleanDoc& doc = s.test_docs[i];
          if (doc.tokens.empty()) return;
          targets[i] = select_target_words(doc, attention_token_scores(*model, doc),
                                           policy);
        });
        break;
      }
    }
  });

  // Attack.
  std::vector<CleanDoc> attacked;
  std::vector<RawEmail> attacked_raw;
  PerturbationLog log;
  in_stage("attack", [&] {
    const DeterministicRng rng(c.seed);
    std::vector<PerturbationLog> logs(s.test_docs.size());
    switch (c.level) {
      case AttackLevel::kNone:
      case AttackLevel::kParagraph:
        attacked = s.test_docs;
        attacked_raw = s.test_raw;
        break;
      case AttackLevel::kChar:
      case AttackLevel::kWord: {
        attacked.resize(s.test_docs.size());
        const auto char_kind = parse_char_attack(c.attack);
        const auto word_kind = parse_word_attack(c.attack);
        parallel_for(s.test_docs.size(), c.threads, [&](std::size_t i) {
          AttackedDoc out =
              c.level == AttackLevel::kChar
                  ? apply_char_attack(s.test_docs[i], targets[i], *char_kind,
                                      c.char_fraction, rng)
                  : apply_word_attack(s.test_docs[i], targets[i], *word_kind,
                                      s.thesaurus);
          attacked[i] = std::move(out.doc);
          logs[i] = std::move(out.log);
        });
        for (const PerturbationLog& l : logs) log.append(l);
        break;
      }
      case AttackLevel::kSentence: {
        AttackedCorpus out = apply_sentence_attack(
            s.test_raw, *s.pools, *parse_sentence_attack(c.attack), c.sentence_rank);
        attacked_raw = std::move(out.emails);
        log = std::move(out.log);
        attacked = clean_all(attacked_raw, s.stopwords, c.threads);
        break;
      }
    }
  });

  AttackReport report;
  in_stage("evaluate", [&] {
    const std::uint64_t before = s.target->query_count();
    report.attacked_confusion = compute_confusion(s.evaluate(attacked), s.truth());
    report.attacked_metrics = compute_metrics(report.attacked_confusion);
    report.evaluation_queries = s.clean_queries + (s.target->query_count() - before);
  });

  report.config = c.echo();
  report.model = s.target->id();
  report.attack_level = display_level(c.level);
  report.attack = display_attack(c.level, c.attack);
  report.test_size = s.test_docs.size();
  report.clean_confusion = s.clean_confusion;
  report.clean_metrics = s.clean_metrics;
  report.scoring_queries = scoring_queries;

  std::unordered_set<std::string> touched;
  const auto char_kind = parse_char_attack(c.attack);
  for (const Edit& e : log.edits) {
    if (e.skipped) {
      ++report.perturbation.skipped;
      continue;
    }
    touched.insert(e.email_id);
    if (e.tail) continue;
    ++report.perturbation.tokens_edited;
    if (c.level == AttackLevel::kChar) {
      report.perturbation.chars_edited +=
          chars_affected(e.before.size(), c.char_fraction, *char_kind);
    }
  }
  report.perturbation.emails_touched = touched.size();

  if (c.level == AttackLevel::kChar || c.level == AttackLevel::kWord) {
    // Token attacks act on cleaned documents; the raw form is their join.
    attacked_raw.clear();
    for (const CleanDoc& d : attacked) {
      std::string text;
      for (const std::string& t : d.tokens) {
        if (!text.empty()) text += ' ';
        text += t;
      }
      attacked_raw.push_back({d.id, d.label, std::move(text)});
    }
  }
  s.last_emails = std::move(attacked_raw);
  s.last_docs = std::move(attacked);
  s.last_log = std::move(log);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

AttackReport run_experiment(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  Experiment experiment(config);
  AttackReport report = experiment.run();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return report;
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "word_fraction") return SweepParameter::kWordFraction;
  if (name == "char_fraction") return SweepParameter::kCharFraction;
  throw ValidationError("unknown sweep parameter '" + std::string(name) +
                        "' (expected word_fraction or char_fraction)");
}

std::vector<AttackReport> run_sweep(const ExperimentConfig& config,
                                    SweepParameter parameter,
                                    const std::vector<double>& values) {
  if (values.empty()) throw ValidationError("sweep needs at least one value");
  if (!std::is_sorted(values.begin(), values.end())) {
    throw ValidationError("sweep values must be sorted ascending");
  }
  Experiment experiment(config);
  std::vector<AttackReport> reports;
  reports.reserve(values.size());
  for (double v : values) {
    ExperimentConfig cell = config;
    (parameter == SweepParameter::kWordFraction ? cell.word_fraction
                                                : cell.char_fraction) = v;
    reports.push_back(experiment.run(cell));
  }
  return reports;
}

std::string table_header() {
  return "Model | Attack Level | Attack | TP | TN | FP | FN | Accuracy | "
         "Precision | Recall | F1";
}

std::string table_row(const AttackReport& report, bool attacked) {
  const ConfusionMatrix& cm =
      attacked ? report.attacked_confusion : report.clean_confusion;
  const MetricsBundle& m = attacked ? report.attacked_metrics : report.clean_metrics;
  const std::vector<std::string> cells = {
      report.model,
      attacked ? report.attack_level : "-",
      attacked ? report.attack : "Attack Free",
      std::to_string(cm.tp),
      std::to_string(cm.tn),
      std::to_string(cm.fp),
      std::to_string(cm.fn),
      pct(m.accuracy),
      pct(m.precision),
      pct(m.recall),
      pct(m.f1)};
  std::string row;
  for (const std::string& cell : cells) {
    if (!row.empty()) row += " | ";
    row += cell;
  }
  return row;
}

std::string report_to_json(const AttackReport& r) {
  json j;
  j["format"] = "spamadv-report-1";
  j["config"] = r.config;
  j["model"] = r.model;
  j["attack_level"] = r.attack_level;
  j["attack"] = r.attack;
  j["test_size"] = r.test_size;
  j["attack_free"] = {{"confusion", confusion_json(r.clean_confusion)},
                      {"metrics", metrics_json(r.clean_metrics)}};
  j["attacked"] = {{"confusion", confusion_json(r.attacked_confusion)},
                   {"metrics", metrics_json(r.attacked_metrics)}};
  j["queries"] = {{"scoring", r.scoring_queries},
                  {"evaluation", r.evaluation_queries}};
  j["perturbation"] = {{"emails_touched", r.perturbation.emails_touched},
                       {"tokens_edited", r.perturbation.tokens_edited},
                       {"chars_edited", r.perturbation.chars_edited},
                       {"skipped", r.perturbation.skipped}};
  return j.dump(2) + "\n";
}

AttackReport report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.at("format") != "spamadv-report-1") {
      throw ValidationError("unsupported report format");
    }
    AttackReport r;
    r.config = j.at("config").get<std::map<std::string, std::string>>();
    r.model = j.at("model").get<std::string>();
    r.attack_level = j.at("attack_level").get<std::string>();
    r.attack = j.at("attack").get<std::string>();
    r.test_size = j.at("test_size").get<std::uint64_t>();
    r.clean_confusion = confusion_from(j.at("attack_free").at("confusion"));
    r.clean_metrics = metrics_from(j.at("attack_free").at("metrics"));
    r.attacked_confusion = confusion_from(j.at("attacked").at("confusion"));
    r.attacked_metrics = metrics_from(j.at("attacked").at("metrics"));
    r.scoring_queries = j.at("queries").at("scoring").get<std::uint64_t>();
    r.evaluation_queries = j.at("queries").at("evaluation").get<std::uint64_t>();
    const json& p = j.at("perturbation");
    r.perturbation.emails_touched = p.at("emails_touched").get<std::uint64_t>();
    r.perturbation.tokens_edited = p.at("tokens_edited").get<std::uint64_t>();
    r.perturbation.chars_edited = p.at("chars_edited").get<std::uint64_t>();
    r.perturbation.skipped = p.at("skipped").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
}

void emit_report(const AttackReport& report, ReportFormat format,
                 const std::string& path) {
  std::string out;
  if (format == ReportFormat::kStructured) {
    out = report_to_json(report);
  } else {
    out = table_header() + "\n" + table_row(report, false) + "\n" +
          table_row(report, true) + "\n";
  }
  internal::write_file(path, out);
}

}  // namespace spamadv
