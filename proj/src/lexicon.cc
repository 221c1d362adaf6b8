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

#include "spamadv/lexicon.h"

#include <string>
#include <utility>

#include "embedded_data.h"
#include "spamadv/error.h"
#include "text_util.h"

namespace spamadv {

StopwordSet::StopwordSet(std::unordered_set<std::string> words)
    : words_(std::move(words)) {
  for (const auto& w : words_) {
    if (!is_lower_alpha(w)) {
      throw ValidationError("stopword '" + w + "' is not lowercase alphabetic");
    }
  }
}

StopwordSet StopwordSet::parse(std::string_view text) {
  std::unordered_set<std::string> words;
  std::size_t line_no = 0;
  for (std::string_view line : internal::split_lines(text)) {
    ++line_no;
    line = internal::trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!is_lower_alpha(line)) {
      throw ParseError("stopword '" + std::string(line) +
                           "' is not lowercase alphabetic",
                       line_no);
    }
    words.emplace(line);
  }
  return StopwordSet(std::move(words));
}

StopwordSet StopwordSet::load(const std::string& path) {
  return parse(internal::read_file(path));
}

const StopwordSet& StopwordSet::english() {
  static const StopwordSet kSet = parse(embedded::kStopwords);
  return kSet;
}

bool StopwordSet::contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

Thesaurus Thesaurus::parse(std::string_view text, const WarningSink& warn) {
  Thesaurus t;
  std::size_t line_no = 0;
  for (std::string_view line : internal::split_lines(text)) {
    ++line_no;
    if (internal::trim(line).empty() || line.front() == '#') continue;
    const auto fields = internal::split(line, '\t');
    if (fields.size() < 3) {
      throw ParseError("expected 'syn|ant<TAB>head<TAB>candidate...'",
                       line_no);
    }
    ThesaurusMode mode;
    if (fields[0] == "syn") {
      mode = ThesaurusMode::kSynonym;
    } else if (fields[0] == "ant") {
      mode = ThesaurusMode::kAntonym;
    } else {
      throw ParseError("unknown relation '" + std::string(fields[0]) + "'",
                       line_no);
    }
    const std::string head(fields[1]);
    if (!is_lower_alpha(head)) {
      throw ParseError("head '" + head + "' is not lowercase alphabetic",
                       line_no);
    }
    std::vector<std::string> candidates;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      if (!is_lower_alpha(fields[i])) {
        throw ParseError(
            "candidate '" + std::string(fields[i]) + "' is not lowercase alphabetic",
            line_no);
      }
      candidates.emplace_back(fields[i]);
    }
    if (candidates.front() == head) {
      throw ParseError("first candidate repeats head '" + head + "'", line_no);
    }

    Table& table = t.table(mode);
    if (table.by_head.contains(head) && warn) {
      warn("line " + std::to_string(line_no) + ": duplicate head '" + head +
           "', later entry wins");
    }
    table.by_head[head] = std::move(candidates);
    table.by_stem.emplace(porter_stem(head), head);
  }
  return t;
}

Thesaurus Thesaurus::load(const std::string& path, const WarningSink& warn) {
  return parse(internal::read_file(path), warn);
}

const Thesaurus& Thesaurus::bundled() {
  static const Thesaurus kThesaurus = parse(embedded::kThesaurus);
  return kThesaurus;
}

const Thesaurus::Table& Thesaurus::table(ThesaurusMode mode) const {
  return mode == ThesaurusMode::kSynonym ? synonyms_ : antonyms_;
}

Thesaurus::Table& Thesaurus::table(ThesaurusMode mode) {
  return mode == ThesaurusMode::kSynonym ? synonyms_ : antonyms_;
}

const std::vector<std::string>* Thesaurus::candidates(
    std::string_view head, ThesaurusMode mode) const {
  const Table& t = table(mode);
  const auto it = t.by_head.find(std::string(head));
  return it == t.by_head.end() ? nullptr : &it->second;
}

std::optional<std::string> Thesaurus::lookup(std::string_view word,
                                             ThesaurusMode mode) const {
  const Table& t = table(mode);
  const std::vector<std::string>* list = candidates(word, mode);
  std::string query_stem;
  if (list != nullptr) {
    query_stem = porter_stem(word);
  } else {
    // `word` is taken to be a stem already.
    const auto it = t.by_stem.find(std::string(word));
    if (it == t.by_stem.end()) return std::nullopt;
    list = candidates(it->second, mode);
    query_stem = std::string(word);
  }
  for (const std::string& candidate : *list) {
    if (candidate != word && porter_stem(candidate) != query_stem) {
      return candidate;
    }
  }
  return std::nullopt;
}

std::size_t Thesaurus::size(ThesaurusMode mode) const {
  return table(mode).by_head.size();
}

}  // namespace spamadv
