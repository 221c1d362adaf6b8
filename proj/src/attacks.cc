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

#include "spamadv/attacks.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "json.hpp"
#include "spamadv/error.h"
#include "text_util.h"

namespace spamadv {
namespace {

constexpr std::string_view kCharNames[] = {"swap", "delete", "insert", "replace"};
constexpr std::string_view kWordNames[] = {"oov", "word_deletion", "synonym",
                                           "antonym"};
constexpr std::string_view kSentenceNames[] = {"add_ham", "add_spam",
                                               "add_ham_spam"};

template <typename Enum, std::size_t N>
std::optional<Enum> parse_name(std::string_view name,
                               const std::string_view (&names)[N]) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

// m distinct positions in [0, n), drawn by partial Fisher-Yates.
std::vector<std::size_t> draw_positions(std::size_t n, std::size_t m,
                                        DeterministicRng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + rng.uniform_below(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(m);
  return idx;
}

char random_letter(DeterministicRng& rng) {
  return static_cast<char>('a' + rng.uniform_below(26));
}

}  // namespace

std::string_view attack_name(CharAttackKind kind) {
  return kCharNames[static_cast<int>(kind)];
}
std::string_view attack_name(WordAttackKind kind) {
  return kWordNames[static_cast<int>(kind)];
}
std::string_view attack_name(SentenceAttackKind kind) {
  return kSentenceNames[static_cast<int>(kind)];
}

std::optional<CharAttackKind> parse_char_attack(std::string_view name) {
  return parse_name<CharAttackKind>(name, kCharNames);
}
std::optional<WordAttackKind> parse_word_attack(std::string_view name) {
  return parse_name<WordAttackKind>(name, kWordNames);
}
std::optional<SentenceAttackKind> parse_sentence_attack(std::string_view name) {
  return parse_name<SentenceAttackKind>(name, kSentenceNames);
}

void PerturbationLog::append(const PerturbationLog& other) {
  edits.insert(edits.end(), other.edits.begin(), other.edits.end());
}

std::string PerturbationLog::to_jsonl() const {
  std::string out;
  for (const Edit& e : edits) {
    nlohmann::ordered_json j;
    j["email"] = e.email_id;
    if (e.tail) {
      j["slot"] = "tail";
    } else {
      j["slot"] = e.position;
    }
    j["before"] = e.before;
    j["after"] = e.after;
    j["kind"] = e.kind;
    if (e.skipped) j["skipped"] = true;
    out += j.dump();
    out += '\n';
  }
  return out;
}

PerturbationLog PerturbationLog::from_jsonl(std::string_view text) {
  PerturbationLog log;
  std::size_t line_no = 0;
  for (std::string_view line : internal::split_lines(text)) {
    ++line_no;
    if (internal::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Edit e;
      e.email_id = j.at("email").get<std::string>();
      if (j.at("slot").is_string()) {
        if (j["slot"].get<std::string>() != "tail") {
          throw ParseError("unknown slot", line_no);
        }
        e.tail = true;
      } else {
        e.position = j.at("slot").get<std::size_t>();
      }
      e.before = j.at("before").get<std::string>();
      e.after = j.at("after").get<std::string>();
      e.kind = j.at("kind").get<std::string>();
      e.skipped = j.value("skipped", false);
      log.edits.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(std::string("bad perturbation record: ") + ex.what(),
                       line_no);
    }
  }
  return log;
}

std::size_t chars_affected(std::size_t length, double fraction,
                           CharAttackKind kind) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ValidationError("character fraction must lie in (0, 1]");
  }
  // Half-up rounding; the epsilon keeps 0.3 * 5 = 1.4999999... at 1.5.
  auto m = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(length) + 0.5 + 1e-9));
  m = std::max<std::size_t>(1, m);
  switch (kind) {
    case CharAttackKind::kDelete:
      return length < 2 ? 0 : std::min(m, length - 1);
    case CharAttackKind::kSwap:
    case CharAttackKind::kReplace:
      return std::min(m, length);
    case CharAttackKind::kInsert:
      return m;
  }
  return m;
}

std::optional<std::string> perturb_word_chars(std::string_view word,
                                              CharAttackKind kind,
                                              double fraction,
                                              DeterministicRng& rng) {
  const std::size_t n = word.size();
  if (n == 0) return std::nullopt;
  if ((kind == CharAttackKind::kSwap || kind == CharAttackKind::kDelete) &&
      n < 2) {
    return std::nullopt;
  }
  const std::size_t m = chars_affected(n, fraction, kind);
  std::string out(word);
  switch (kind) {
    case CharAttackKind::kSwap: {
      auto pos = draw_positions(n, m, rng);
      std::sort(pos.begin(), pos.end());
      for (std::size_t p : pos) {
        const std::size_t q = p + 1 < n ? p + 1 : p - 1;
        std::swap(out[p], out[q]);
      }
      break;
    }
    case CharAttackKind::kDelete: {
      auto pos = draw_positions(n, m, rng);
      std::sort(pos.begin(), pos.end(), std::greater<>());
      for (std::size_t p : pos) out.erase(p, 1);
      break;
    }
    case CharAttackKind::kInsert: {
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t slot = rng.uniform_below(out.size() + 1);
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(slot),
                   random_letter(rng));
      }
      break;
    }
    case CharAttackKind::kReplace: {
      for (std::size_t p : draw_positions(n, m, rng)) {
        const char orig = out[p];
        if (orig >= 'a' && orig <= 'z') {
          // Uniform over the 25 other letters.
          char c = static_cast<char>('a' + rng.uniform_below(25));
          if (c >= orig) ++c;
          out[p] = c;
        } else {
          out[p] = random_letter(rng);
        }
      }
      break;
    }
  }
  return out;
}

AttackedDoc apply_char_attack(const CleanDoc& doc,
                              const std::set<std::size_t>& targets,
                              CharAttackKind kind, double fraction,
                              const DeterministicRng& rng) {
  AttackedDoc out{doc, {}};
  const std::string kind_name(attack_name(kind));
  DeterministicRng stream = rng.substream(doc.id, kind_name);
  for (std::size_t pos : targets) {
    if (pos >= doc.tokens.size()) {
      throw ValidationError("target position " + std::to_string(pos) +
                            " outside document '" + doc.id + "'");
    }
    const std::string& before = doc.tokens[pos];
    const auto after = perturb_word_chars(before, kind, fraction, stream);
    Edit e{doc.id, false, pos, before, after.value_or(before), kind_name,
           !after.has_value()};
    if (after) out.doc.tokens[pos] = *after;
    out.log.edits.push_back(std::move(e));
  }
  return out;
}

AttackedDoc apply_word_attack(const CleanDoc& doc,
                              const std::set<std::size_t>& targets,
                              WordAttackKind kind, const Thesaurus& thesaurus) {
  AttackedDoc out{doc, {}};
  const std::string kind_name(attack_name(kind));
  for (std::size_t pos : targets) {
    if (pos >= doc.tokens.size()) {
      throw ValidationError("target position " + std::to_string(pos) +
                            " outside document '" + doc.id + "'");
    }
    const std::string& before = doc.tokens[pos];
    Edit e{doc.id, false, pos, before, before, kind_name, false};
    switch (kind) {
      case WordAttackKind::kOov:
        e.after = std::string(kUnkToken);
        break;
      case WordAttackKind::kWordDeletion:
        e.after.clear();
        break;
      case WordAttackKind::kSynonym:
      case WordAttackKind::kAntonym: {
        const auto mode = kind == WordAttackKind::kSynonym
                              ? ThesaurusMode::kSynonym
                              : ThesaurusMode::kAntonym;
        if (const auto repl = thesaurus.lookup(before, mode)) {
          // The replacement enters the cleaned space, so it is stemmed.
          e.after = porter_stem(*repl);
        } else {
          e.skipped = true;
        }
        break;
      }
    }
    out.log.edits.push_back(std::move(e));
  }
  out.doc = replay(std::vector<CleanDoc>{doc}, out.log).front();
  return out;
}

AttackedCorpus apply_sentence_attack(const std::vector<RawEmail>& test,
                                     const SentencePools& pools,
                                     SentenceAttackKind kind, std::size_t rank) {
  const bool to_spam = kind == SentenceAttackKind::kAddHam ||
                       kind == SentenceAttackKind::kAddHamSpam;
  const bool to_ham = kind == SentenceAttackKind::kAddSpam ||
                      kind == SentenceAttackKind::kAddHamSpam;
  const bool has_spam = std::any_of(test.begin(), test.end(), [](const RawEmail& e) {
    return e.label == Label::kSpam;
  });
  const bool has_ham = std::any_of(test.begin(), test.end(), [](const RawEmail& e) {
    return e.label == Label::kHam;
  });
  if (to_spam && has_spam && rank >= pools.ham_pool.size()) {
    throw AttackError("ham sentence pool has no entry at rank " +
                      std::to_string(rank));
  }
  if (to_ham && has_ham && rank >= pools.spam_pool.size()) {
    throw AttackError("spam sentence pool has no entry at rank " +
                      std::to_string(rank));
  }
  AttackedCorpus out;
  out.emails.reserve(test.size());
  const std::string kind_name(attack_name(kind));
  for (const RawEmail& email : test) {
    RawEmail attacked = email;
    const SentencePools::Entry* entry = nullptr;
    if (email.label == Label::kSpam && to_spam) entry = &pools.ham_pool[rank];
    if (email.label == Label::kHam && to_ham) entry = &pools.spam_pool[rank];
    if (entry != nullptr) {
      std::string suffix = std::string(kSentenceSeparator) + entry->span.raw_text;
      attacked.text += suffix;
      out.log.edits.push_back(
          Edit{email.id, true, 0, "", std::move(suffix), kind_name, false});
    }
    out.emails.push_back(std::move(attacked));
  }
  return out;
}

std::vector<CleanDoc> replay(const std::vector<CleanDoc>& originals,
                             const PerturbationLog& log) {
  std::unordered_map<std::string, std::map<std::size_t, const Edit*>> by_email;
  for (const Edit& e : log.edits) {
    if (e.tail || e.skipped) continue;
    by_email[e.email_id][e.position] = &e;
  }
  std::vector<CleanDoc> out;
  out.reserve(originals.size());
  for (const CleanDoc& doc : originals) {
    const auto it = by_email.find(doc.id);
    if (it == by_email.end()) {
      out.push_back(doc);
      continue;
    }
    CleanDoc rebuilt{doc.id, doc.label, {}};
    rebuilt.tokens.reserve(doc.tokens.size());
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      const auto edit = it->second.find(i);
      if (edit == it->second.end()) {
        rebuilt.tokens.push_back(doc.tokens[i]);
      } else if (!edit->second->after.empty()) {
        rebuilt.tokens.push_back(edit->second->after);
      }
    }
    out.push_back(std::move(rebuilt));
  }
  return out;
}

std::vector<RawEmail> replay(const std::vector<RawEmail>& originals,
                             const PerturbationLog& log) {
  std::unordered_map<std::string, std::vector<const Edit*>> tails;
  for (const Edit& e : log.edits) {
    if (e.tail && !e.skipped) tails[e.email_id].push_back(&e);
  }
  std::vector<RawEmail> out = originals;
  for (RawEmail& email : out) {
    const auto it = tails.find(email.id);
    if (it == tails.end()) continue;
    for (const Edit* e : it->second) email.text += e->after;
  }
  return out;
}

std::vector<RawEmail> load_paragraph_testset(const std::string& path) {
  return load_csv_corpus(path);
}

}  // namespace spamadv
