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

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "spamadv/lexicon.h"

namespace spamadv {
namespace {

// Word being stemmed. All predicates look at the prefix [0, len).
class Stem {
 public:
  explicit Stem(std::string_view word) : b_(word) {}

  std::string str() const { return b_; }

  bool consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 || !consonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && consonant(len - 1);
  }

  // *o: prefix ends consonant-vowel-consonant, last one not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) {
      return false;
    }
    const char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends_with(std::string_view suffix) const {
    return b_.size() >= suffix.size() &&
           std::string_view(b_).substr(b_.size() - suffix.size()) == suffix;
  }

  std::size_t size() const { return b_.size(); }
  char back() const { return b_.back(); }
  char at(std::size_t i) const { return b_[i]; }

  void replace_suffix(std::size_t suffix_len, std::string_view replacement) {
    b_.resize(b_.size() - suffix_len);
    b_.append(replacement);
  }

 private:
  std::string b_;
};

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Applies the first rule whose suffix matches, provided the remaining stem has
// measure > min_measure. A matching rule whose condition fails stops the step.
void apply_rules(Stem& s, std::span<const Rule> rules, int min_measure) {
  for (const Rule& r : rules) {
    if (!s.ends_with(r.suffix)) continue;
    const std::size_t stem_len = s.size() - r.suffix.size();
    if (s.measure(stem_len) > min_measure) {
      s.replace_suffix(r.suffix.size(), r.replacement);
    }
    return;
  }
}

void step1a(Stem& s) {
  if (s.ends_with("sses")) {
    s.replace_suffix(4, "ss");
  } else if (s.ends_with("ies")) {
    s.replace_suffix(3, "i");
  } else if (s.ends_with("ss")) {
    // unchanged
  } else if (s.ends_with("s")) {
    s.replace_suffix(1, "");
  }
}

void step1b(Stem& s) {
  if (s.ends_with("eed")) {
    if (s.measure(s.size() - 3) > 0) s.replace_suffix(1, "");
    return;
  }
  bool stripped = false;
  if (s.ends_with("ed") && s.has_vowel(s.size() - 2)) {
    s.replace_suffix(2, "");
    stripped = true;
  } else if (s.ends_with("ing") && s.has_vowel(s.size() - 3)) {
    s.replace_suffix(3, "");
    stripped = true;
  }
  if (!stripped) return;

  if (s.ends_with("at") || s.ends_with("bl") || s.ends_with("iz")) {
    s.replace_suffix(0, "e");
  } else if (s.double_consonant(s.size())) {
    const char c = s.back();
    if (c != 'l' && c != 's' && c != 'z') s.replace_suffix(1, "");
  } else if (s.measure(s.size()) == 1 && s.cvc(s.size())) {
    s.replace_suffix(0, "e");
  }
}

void step1c(Stem& s) {
  if (s.ends_with("y") && s.has_vowel(s.size() - 1)) s.replace_suffix(1, "i");
}

constexpr std::array<Rule, 20> kStep2 = {{
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
    {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
    {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
    {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
    {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
    {"iviti", "ive"},   {"biliti", "ble"},
}};

constexpr std::array<Rule, 7> kStep3 = {{
    {"icate", "ic"},
    {"ative", ""},
    {"alize", "al"},
    {"iciti", "ic"},
    {"ical", "ic"},
    {"ful", ""},
    {"ness", ""},
}};

void step4(Stem& s) {
  static constexpr std::array<std::string_view, 19> kSuffixes = {
      "al",  "ance", "ence", "er",  "ic",  "able", "ible",
      "ant", "ement", "ment", "ent", "ion", "ou",  "ism",
      "ate", "iti",  "ous",  "ive", "ize"};
  for (std::string_view suffix : kSuffixes) {
    if (!s.ends_with(suffix)) continue;
    const std::size_t stem_len = s.size() - suffix.size();
    if (s.measure(stem_len) <= 1) return;
    if (suffix == "ion") {
      const char c = s.at(stem_len - 1);
      if (c != 's' && c != 't') return;
    }
    s.replace_suffix(suffix.size(), "");
    return;
  }
}

void step5(Stem& s) {
  if (s.ends_with("e")) {
    const std::size_t stem_len = s.size() - 1;
    const int m = s.measure(stem_len);
    if (m > 1 || (m == 1 && !s.cvc(stem_len))) s.replace_suffix(1, "");
  }
  if (s.measure(s.size()) > 1 && s.double_consonant(s.size()) &&
      s.back() == 'l') {
    s.replace_suffix(1, "");
  }
}

}  // namespace

bool is_lower_alpha(std::string_view word) {
  if (word.empty()) return false;
  for (char c : word) {
    if (c < 'a' || c > 'z') return false;
  }
  return true;
}

std::string porter_stem(std::string_view word) {
  if (!is_lower_alpha(word)) return std::string(word);
  Stem s(word);
  step1a(s);
  step1b(s);
  step1c(s);
  apply_rules(s, kStep2, 0);
  apply_rules(s, kStep3, 0);
  step4(s);
  step5(s);
  return s.str();
}

}  // namespace spamadv
