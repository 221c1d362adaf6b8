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

#ifndef SPAMADV_SCORING_H_
#define SPAMADV_SCORING_H_

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spamadv/corpus.h"
#include "spamadv/models.h"
#include "spamadv/oracle.h"

namespace spamadv {

// Spam weight of every vocabulary word: the oracle's score on the
// single-token document [word].
class ScoreTable {
 public:
  ScoreTable() = default;
  ScoreTable(std::vector<std::pair<std::string, double>> entries,
             std::string provenance, std::uint64_t queries);

  // nullptr when `token` has no entry.
  const double* find(const std::string& token) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Entries in insertion (vocabulary id) order.
  const std::vector<std::pair<std::string, double>>& entries() const {
    return entries_;
  }
  const std::string& provenance() const { return provenance_; }
  std::uint64_t queries() const { return queries_; }

  // `token<TAB>weight` per line, weights printed round-trip exact. The
  // provenance goes in a leading `# provenance:` comment.
  std::string to_tsv() const;
  static ScoreTable from_tsv(std::string_view text);
  void save(const std::string& path) const;
  static ScoreTable load(const std::string& path);

 private:
  std::vector<std::pair<std::string, double>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::string provenance_;
  std::uint64_t queries_ = 0;
};

// Position-aligned (token, score) pairs for one document.
struct TokenScoreList {
  std::vector<std::pair<std::string, double>> scores;
};

enum class SelectionLevel { kWord, kChar };

struct SelectionPolicy {
  SelectionLevel level = SelectionLevel::kWord;
  double fraction = 0.03;  // in (0, 1]
};

// One query per non-reserved vocabulary id, sequentially. If the oracle
// fails, throws Error with the number of entries completed.
ScoreTable build_spam_weights(OracleHandle& scoring_oracle,
                              const Vocabulary& vocab);

// score_i = F(doc) - F(doc with token i replaced by UNK); 1 + n queries.
TokenScoreList replace_one_scores(OracleHandle& oracle, const CleanDoc& doc);

// Attention weights of the doc, position-aligned. Positions past max_len
// (never seen by the model) score 0. No oracle queries.
TokenScoreList attention_token_scores(const AttentionModel& model,
                                      const CleanDoc& doc);

// k = max(1, ceil(fraction * distinct scored tokens in the doc)); positions
// ranked by score (descending for spam docs, ascending for ham docs), ties by
// position; tokens without a table entry rank last.
std::set<std::size_t> select_target_words(const CleanDoc& doc,
                                          const ScoreTable& table,
                                          const SelectionPolicy& policy);
std::set<std::size_t> select_target_words(const CleanDoc& doc,
                                          const TokenScoreList& scores,
                                          const SelectionPolicy& policy);

// Vocabulary-wide variant: the ceil(fraction * |table|) highest-weight words
// are targets in spam docs and the same number of lowest-weight words in ham
// docs; every position holding a target word is selected.
class GlobalSelection {
 public:
  GlobalSelection(const ScoreTable& table, double fraction);
  std::set<std::size_t> select(const CleanDoc& doc) const;
  const std::set<std::string>& spam_targets() const { return spam_targets_; }
  const std::set<std::string>& ham_targets() const { return ham_targets_; }

 private:
  std::set<std::string> spam_targets_;
  std::set<std::string> ham_targets_;
};

struct SentencePools {
  struct Entry {
    SentenceSpan span;
    double key = 0.0;  // sum of spam weights over the cleaned tokens
  };
  std::vector<Entry> ham_pool;   // ascending key
  std::vector<Entry> spam_pool;  // descending key
};

SentencePools build_sentence_pools(const std::vector<RawEmail>& train,
                                   const ScoreTable& table,
                                   const StopwordSet& stopwords);

}  // namespace spamadv

#endif  // SPAMADV_SCORING_H_
