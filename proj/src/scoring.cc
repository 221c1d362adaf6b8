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

#include "spamadv/scoring.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <unordered_set>

#include "spamadv/error.h"
#include "text_util.h"

namespace spamadv {
namespace {

std::string format_double(double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::size_t target_count(double fraction, std::size_t distinct) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ValidationError("selection fraction must lie in (0, 1]");
  }
  const auto k = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(distinct) - 1e-9));
  return std::max<std::size_t>(1, k);
}

// Ranks positions with per-position optional scores and returns the top k.
std::set<std::size_t> top_positions(const std::vector<std::optional<double>>& s,
                                    Label label, std::size_t k) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  const bool descending = label == Label::kSpam;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (s[a].has_value() != s[b].has_value()) return s[a].has_value();
    if (!s[a].has_value()) return false;
    return descending ? *s[a] > *s[b] : *s[a] < *s[b];
  });
  order.resize(std::min(k, order.size()));
  return {order.begin(), order.end()};
}

std::size_t distinct_count(const std::vector<std::string>& tokens) {
  return std::unordered_set<std::string>(tokens.begin(), tokens.end()).size();
}

}  // namespace

ScoreTable::ScoreTable(std::vector<std::pair<std::string, double>> entries,
                       std::string provenance, std::uint64_t queries)
    : entries_(std::move(entries)),
      provenance_(std::move(provenance)),
      queries_(queries) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double w = entries_[i].second;
    if (!(w >= 0.0 && w <= 1.0)) {
      throw ValidationError("spam weight of '" + entries_[i].first +
                            "' outside [0, 1]");
    }
    if (!index_.emplace(entries_[i].first, i).second) {
      throw ValidationError("duplicate score table token '" +
                            entries_[i].first + "'");
    }
  }
}

const double* ScoreTable::find(const std::string& token) const {
  const auto it = index_.find(token);
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

std::string ScoreTable::to_tsv() const {
  std::string out = "# provenance: " + provenance_ + "\n";
  for (const auto& [token, weight] : entries_) {
    out += token;
    out += '\t';
    out += format_double(weight);
    out += '\n';
  }
  return out;
}

ScoreTable ScoreTable::from_tsv(std::string_view text) {
  std::vector<std::pair<std::string, double>> entries;
  std::string provenance = "imported";
  std::size_t line_no = 0;
  for (std::string_view line : internal::split_lines(text)) {
    ++line_no;
    if (line.starts_with("# provenance: ")) {
      provenance = std::string(line.substr(14));
      continue;
    }
    if (line.empty() || line.front() == '#') continue;
    const auto fields = internal::split(line, '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError("expected 'token<TAB>weight'", line_no);
    }
    double w = 0.0;
    const auto [ptr, ec] =
        std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), w);
    if (ec != std::errc() || ptr != fields[1].data() + fields[1].size()) {
      throw ParseError("bad weight '" + std::string(fields[1]) + "'", line_no);
    }
    entries.emplace_back(std::string(fields[0]), w);
  }
  return ScoreTable(std::move(entries), std::move(provenance), 0);
}

void ScoreTable::save(const std::string& path) const {
  internal::write_file(path, to_tsv());
}

ScoreTable ScoreTable::load(const std::string& path) {
  return from_tsv(internal::read_file(path));
}

ScoreTable build_spam_weights(OracleHandle& scoring_oracle,
                              const Vocabulary& vocab) {
  std::vector<std::pair<std::string, double>> entries;
  entries.reserve(vocab.size() > 2 ? vocab.size() - 2 : 0);
  const std::uint64_t before = scoring_oracle.query_count();
  for (std::size_t id = 2; id < vocab.size(); ++id) {
    const std::string& token = vocab.token(static_cast<std::int32_t>(id));
    try {
      entries.emplace_back(token, scoring_oracle.predict(std::vector<std::string>{token}));
    } catch (const Error& e) {
      throw Error("spam weight table aborted after " +
                  std::to_string(entries.size()) + " of " +
                  std::to_string(vocab.size() - 2) + " words at '" + token +
                  "': " + e.what());
    }
  }
  return ScoreTable(std::move(entries), scoring_oracle.id(),
                    scoring_oracle.query_count() - before);
}

TokenScoreList replace_one_scores(OracleHandle& oracle, const CleanDoc& doc) {
  TokenScoreList out;
  if (doc.tokens.empty()) return out;
  const double baseline = oracle.predict(doc.tokens);
  std::vector<std::string> probe = doc.tokens;
  out.scores.reserve(doc.tokens.size());
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    probe[i] = std::string(kUnkToken);
    out.scores.emplace_back(doc.tokens[i], baseline - oracle.predict(probe));
    probe[i] = doc.tokens[i];
  }
  return out;
}

TokenScoreList attention_token_scores(const AttentionModel& model,
                                      const CleanDoc& doc) {
  const AttentionReadout r = model.readout(doc);
  TokenScoreList out;
  out.scores.reserve(doc.tokens.size());
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    out.scores.emplace_back(doc.tokens[i], i < r.true_len ? r.weights[i] : 0.0);
  }
  return out;
}

std::set<std::size_t> select_target_words(const CleanDoc& doc,
                                          const ScoreTable& table,
                                          const SelectionPolicy& policy) {
  if (doc.tokens.empty()) return {};
  std::vector<std::optional<double>> s(doc.tokens.size());
  std::unordered_set<std::string> scored;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (const double* w = table.find(doc.tokens[i])) {
      s[i] = *w;
      scored.insert(doc.tokens[i]);
    }
  }
  return top_positions(s, doc.label, target_count(policy.fraction, scored.size()));
}

std::set<std::size_t> select_target_words(const CleanDoc& doc,
                                          const TokenScoreList& scores,
                                          const SelectionPolicy& policy) {
  if (doc.tokens.empty()) return {};
  if (scores.scores.size() != doc.tokens.size()) {
    throw ValidationError("token score list does not align with document '" +
                          doc.id + "'");
  }
  std::vector<std::optional<double>> s(doc.tokens.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = scores.scores[i].second;
  return top_positions(s, doc.label,
                       target_count(policy.fraction, distinct_count(doc.tokens)));
}

GlobalSelection::GlobalSelection(const ScoreTable& table, double fraction) {
  if (table.empty()) return;
  const std::size_t k = target_count(fraction, table.size());
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& e = table.entries();
  // Ties by token for a stable, order-independent set.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (e[a].second != e[b].second) return e[a].second > e[b].second;
    return e[a].first < e[b].first;
  });
  for (std::size_t i = 0; i < k; ++i) spam_targets_.insert(e[order[i]].first);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (e[a].second != e[b].second) return e[a].second < e[b].second;
    return e[a].first < e[b].first;
  });
  for (std::size_t i = 0; i < k; ++i) ham_targets_.insert(e[order[i]].first);
}

std::set<std::size_t> GlobalSelection::select(const CleanDoc& doc) const {
  const auto& targets = doc.label == Label::kSpam ? spam_targets_ : ham_targets_;
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (targets.contains(doc.tokens[i])) out.insert(i);
  }
  return out;
}

SentencePools build_sentence_pools(const std::vector<RawEmail>& train,
                                   const ScoreTable& table,
                                   const StopwordSet& stopwords) {
  SentencePools pools;
  for (const RawEmail& email : train) {
    for (SentenceSpan& span : split_sentences(email, stopwords)) {
      double key = 0.0;
      for (const std::string& t : span.clean_tokens) {
        if (const double* w = table.find(t)) key += *w;
      }
      auto& pool = email.label == Label::kSpam ? pools.spam_pool : pools.ham_pool;
      pool.push_back({std::move(span), key});
    }
  }
  const auto tie = [](const SentencePools::Entry& a, const SentencePools::Entry& b) {
    if (a.span.source_email_id != b.span.source_email_id) {
      return a.span.source_email_id < b.span.source_email_id;
    }
    return a.span.index < b.span.index;
  };
  std::sort(pools.ham_pool.begin(), pools.ham_pool.end(),
            [&](const auto& a, const auto& b) {
              return a.key != b.key ? a.key < b.key : tie(a, b);
            });
  std::sort(pools.spam_pool.begin(), pools.spam_pool.end(),
            [&](const auto& a, const auto& b) {
              return a.key != b.key ? a.key > b.key : tie(a, b);
            });
  return pools;
}

}  // namespace spamadv
