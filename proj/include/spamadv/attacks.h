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

#ifndef SPAMADV_ATTACKS_H_
#define SPAMADV_ATTACKS_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spamadv/corpus.h"
#include "spamadv/lexicon.h"
#include "spamadv/rng.h"
#include "spamadv/scoring.h"

namespace spamadv {

enum class CharAttackKind { kSwap, kDelete, kInsert, kReplace };
enum class WordAttackKind { kOov, kWordDeletion, kSynonym, kAntonym };
enum class SentenceAttackKind { kAddHam, kAddSpam, kAddHamSpam };

std::string_view attack_name(CharAttackKind kind);
std::string_view attack_name(WordAttackKind kind);
std::string_view attack_name(SentenceAttackKind kind);
// Canonical names: swap, delete, insert, replace, oov, word_deletion,
// synonym, antonym, add_ham, add_spam, add_ham_spam.
std::optional<CharAttackKind> parse_char_attack(std::string_view name);
std::optional<WordAttackKind> parse_word_attack(std::string_view name);
std::optional<SentenceAttackKind> parse_sentence_attack(std::string_view name);

// One edit. Token edits carry the original position; sentence edits append
// at the tail of the raw text.
struct Edit {
  std::string email_id;
  bool tail = false;       // sentence append rather than token position
  std::size_t position = 0;
  std::string before;
  std::string after;       // empty for a deleted token
  std::string kind;
  bool skipped = false;    // attack could not apply; before == after

  bool operator==(const Edit&) const = default;
};

struct PerturbationLog {
  std::vector<Edit> edits;

  void append(const PerturbationLog& other);
  // One JSON object per line: email, slot, before, after, kind[, skipped].
  std::string to_jsonl() const;
  static PerturbationLog from_jsonl(std::string_view text);
};

// Number of characters a character attack touches for a word of `length`:
// max(1, round_half_up(fraction * length)), capped at length - 1 for delete
// (a word never vanishes) and at length for swap/replace.
std::size_t chars_affected(std::size_t length, double fraction,
                           CharAttackKind kind);

// Returns nullopt (and leaves the caller to log a skip) when the word is too
// short: empty for any kind, a single character for swap and delete.
std::optional<std::string> perturb_word_chars(std::string_view word,
                                              CharAttackKind kind,
                                              double fraction,
                                              DeterministicRng& rng);

struct AttackedDoc {
  CleanDoc doc;
  PerturbationLog log;
};

// Perturbs the targeted tokens with a stream derived from
// (doc.id, attack name). Non-target tokens are copied unchanged.
AttackedDoc apply_char_attack(const CleanDoc& doc,
                              const std::set<std::size_t>& targets,
                              CharAttackKind kind, double fraction,
                              const DeterministicRng& rng);

// oov -> "<unk>"; word_deletion drops the token; synonym/antonym substitute
// the stem of the thesaurus replacement, or log a skip when there is none.
AttackedDoc apply_word_attack(const CleanDoc& doc,
                              const std::set<std::size_t>& targets,
                              WordAttackKind kind, const Thesaurus& thesaurus);

struct AttackedCorpus {
  std::vector<RawEmail> emails;
  PerturbationLog log;
};

// Separator placed between the original text and an appended sentence.
inline constexpr std::string_view kSentenceSeparator = ". ";

// add_ham appends ham_pool[rank] to every spam email, add_spam appends
// spam_pool[rank] to every ham email, add_ham_spam does both. Throws
// AttackError when a required pool has no entry at `rank`.
AttackedCorpus apply_sentence_attack(const std::vector<RawEmail>& test,
                                     const SentencePools& pools,
                                     SentenceAttackKind kind,
                                     std::size_t rank = 0);

// Rebuilds attacked documents from the originals and a log.
std::vector<CleanDoc> replay(const std::vector<CleanDoc>& originals,
                             const PerturbationLog& log);
std::vector<RawEmail> replay(const std::vector<RawEmail>& originals,
                             const PerturbationLog& log);

// Same contract as load_csv_corpus; the set is evaluated as paragraph-level.
std::vector<RawEmail> load_paragraph_testset(const std::string& path);

}  // namespace spamadv

#endif  // SPAMADV_ATTACKS_H_
