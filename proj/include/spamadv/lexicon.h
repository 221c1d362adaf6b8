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

#ifndef SPAMADV_LEXICON_H_
#define SPAMADV_LEXICON_H_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace spamadv {

// Classic Porter (1980) suffix stripper, steps 1a through 5b, applied once.
// Input must be lowercase ASCII letters; other input is returned unchanged.
std::string porter_stem(std::string_view word);

// True iff `word` is nonempty and every character is in [a-z].
bool is_lower_alpha(std::string_view word);

class StopwordSet {
 public:
  StopwordSet() = default;
  // Throws ValidationError if any member is not lowercase alphabetic.
  explicit StopwordSet(std::unordered_set<std::string> words);

  // Parses one token per line; blank lines and `#` comments are skipped.
  static StopwordSet parse(std::string_view text);
  static StopwordSet load(const std::string& path);
  // The bundled English list (data/stopwords.txt, compiled in).
  static const StopwordSet& english();

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

enum class ThesaurusMode { kSynonym, kAntonym };

// Synonym and antonym side-tables for the word-replacement attacks.
//
// TSV format, one entry per line:
//   syn|ant <TAB> head <TAB> candidate1 <TAB> candidate2 ...
// `#` starts a comment line. A repeated head within one mode replaces the
// earlier entry and reports a warning through the callback.
class Thesaurus {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  static Thesaurus parse(std::string_view text, const WarningSink& warn = {});
  static Thesaurus load(const std::string& path, const WarningSink& warn = {});
  // The bundled table (data/thesaurus.tsv, compiled in).
  static const Thesaurus& bundled();

  // Candidates in file order, or nullptr when `head` has no entry.
  const std::vector<std::string>* candidates(std::string_view head,
                                             ThesaurusMode mode) const;

  // First candidate whose stem differs from the stem of `word`. `word` may be
  // a surface form or an already-stemmed token: entries are found by exact
  // head first, then by head stem.
  std::optional<std::string> lookup(std::string_view word,
                                    ThesaurusMode mode) const;

  std::size_t size(ThesaurusMode mode) const;

 private:
  struct Table {
    std::unordered_map<std::string, std::vector<std::string>> by_head;
    // stem(head) -> head, first head in file order wins.
    std::unordered_map<std::string, std::string> by_stem;
  };

  const Table& table(ThesaurusMode mode) const;
  Table& table(ThesaurusMode mode);

  Table synonyms_;
  Table antonyms_;
};

}  // namespace spamadv

#endif  // SPAMADV_LEXICON_H_
