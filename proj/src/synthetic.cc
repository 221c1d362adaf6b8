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

#include "spamadv/synthetic.h"

#include <array>
#include <cctype>
#include <cmath>
#include <span>
#include <string>
#include <string_view>

#include "spamadv/rng.h"

namespace spamadv {
namespace {

// Most indicative first; spam emails carry one or two of these.
constexpr std::array<std::string_view, 15> kSpamTriggers = {
    "viagra",  "casino", "lottery",  "jackpot", "winner",
    "prize",   "cash",   "bonus",    "pharmacy", "mortgage",
    "loan",    "credit", "discount", "offer",    "free",
};

constexpr std::array<std::string_view, 45> kSpamWords = {
    "click",    "unsubscribe", "guarantee", "limited",   "exclusive",
    "cheap",    "deal",        "save",      "order",     "money",
    "rich",     "income",      "earn",      "million",   "dollars",
    "bargain",  "investment",  "luxury",    "replica",   "watches",
    "pills",    "weight",      "diet",      "insurance", "refinance",
    "approved", "debt",        "urgent",    "act",       "subscribe",
    "promotion", "sale",       "buy",       "online",    "special",
    "wealth",   "bitcoin",     "profit",    "trial",     "gift",
    "coupon",   "rolex",       "medication", "dating",   "winning",
};

constexpr std::array<std::string_view, 70> kHamWords = {
    "meeting",   "project",    "schedule",   "report",     "review",
    "team",      "agenda",     "budget",     "deadline",   "draft",
    "attached",  "comments",   "thanks",     "regards",    "conference",
    "call",      "office",     "manager",    "contract",   "minutes",
    "presentation", "quarter", "forecast",   "analysis",   "spreadsheet",
    "discussion", "proposal",  "colleague",  "lunch",      "tomorrow",
    "monday",    "tuesday",    "wednesday",  "thursday",   "friday",
    "weekly",    "status",     "issue",      "plan",       "pipeline",
    "gas",       "energy",     "trading",    "desk",       "memo",
    "policy",    "legal",      "counsel",    "signoff",    "revision",
    "feedback",  "questions",  "interview",  "calendar",   "notes",
    "summary",   "slides",     "handbook",   "training",   "workshop",
    "seminar",   "committee",  "board",      "department", "finance",
    "accounting", "audit",     "compliance", "staff",      "travel",
};

constexpr std::array<std::string_view, 80> kNeutralWords = {
    "time",     "day",       "week",     "year",      "people",
    "information", "please", "email",    "message",   "today",
    "get",      "need",      "help",     "see",       "know",
    "make",     "work",      "new",      "good",      "first",
    "last",     "long",      "great",    "little",    "right",
    "big",      "high",      "different", "small",    "large",
    "next",     "early",     "young",    "important", "public",
    "able",     "number",    "part",     "place",     "case",
    "point",    "company",   "group",    "problem",   "fact",
    "home",     "hand",      "world",    "area",      "way",
    "life",     "look",      "want",     "give",      "use",
    "find",     "tell",      "ask",      "seem",      "feel",
    "try",      "leave",     "keep",     "let",       "begin",
    "show",     "hear",      "play",     "run",       "move",
    "live",     "believe",   "bring",    "happen",    "write",
    "provide",  "sit",       "stand",    "lose",      "pay",
};

constexpr std::array<std::string_view, 20> kSyllables = {
    "ka", "lo", "mi", "ra", "ten", "vo", "zu", "pel", "dri", "son",
    "mar", "ga", "bri", "tha", "nel", "cor", "vin", "des", "ul", "fe",
};

constexpr std::array<std::string_view, 3> kTerminators = {". ", "! ", "? "};

struct Mixture {
  std::size_t min_len;
  std::size_t max_len;
  double spam_share;
  double ham_share;
  double name_share;
};

constexpr Mixture kSpamMixture = {20, 40, 0.05, 0.18, 0.0};
constexpr Mixture kHamMixture = {25, 50, 0.003, 0.35, 0.06};

// Index drawn with weight 1 / (i + 1)^s.
std::size_t zipf_index(std::size_t n, double s, DeterministicRng& rng) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += std::pow(static_cast<double>(i + 1), -s);
  double u = rng.uniform01() * total;
  for (std::size_t i = 0; i < n; ++i) {
    u -= std::pow(static_cast<double>(i + 1), -s);
    if (u < 0.0) return i;
  }
  return n - 1;
}

template <std::size_t N>
std::string_view zipf_pick(const std::array<std::string_view, N>& pool,
                           double s, DeterministicRng& rng) {
  return pool[zipf_index(N, s, rng)];
}

std::string make_name(DeterministicRng& rng) {
  const std::size_t parts = 2 + rng.uniform_below(2);
  std::string name;
  for (std::size_t i = 0; i < parts; ++i) {
    name += kSyllables[rng.uniform_below(kSyllables.size())];
  }
  name.front() = static_cast<char>(name.front() - 'a' + 'A');
  return name;
}

std::vector<std::string> draw_words(const Mixture& mix, DeterministicRng& rng) {
  const std::size_t n = mix.min_len + rng.uniform_below(mix.max_len - mix.min_len + 1);
  std::vector<std::string> words;
  words.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    if (u < mix.spam_share) {
      words.emplace_back(zipf_pick(kSpamWords, 1.0, rng));
    } else if (u < mix.spam_share + mix.ham_share) {
      words.emplace_back(zipf_pick(kHamWords, 1.0, rng));
    } else if (u < mix.spam_share + mix.ham_share + mix.name_share) {
      words.push_back(make_name(rng));
    } else {
      words.emplace_back(zipf_pick(kNeutralWords, 0.5, rng));
    }
  }
  return words;
}

// Joins words into sentences of 5 to 12 words with mixed terminators.
std::string assemble(const std::vector<std::string>& words,
                     DeterministicRng& rng) {
  std::string text;
  std::size_t i = 0;
  while (i < words.size()) {
    const std::size_t len = 5 + rng.uniform_below(8);
    for (std::size_t j = 0; j < len && i < words.size(); ++j, ++i) {
      std::string w = words[i];
      if (j == 0) w.front() = static_cast<char>(std::toupper(w.front()));
      if (j > 0) text += ' ';
      text += w;
    }
    text += kTerminators[rng.uniform_below(kTerminators.size())];
  }
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

std::string spam_email(DeterministicRng& rng) {
  std::vector<std::string> words = draw_words(kSpamMixture, rng);
  const std::size_t triggers = 1 + rng.uniform_below(2);
  for (std::size_t t = 0; t < triggers; ++t) {
    const std::size_t at = rng.uniform_below(words.size() + 1);
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(at),
                 std::string(zipf_pick(kSpamTriggers, 0.7, rng)));
  }
  std::string text = assemble(words, rng);
  // Links and figures are stripped by cleaning but keep the raw text honest.
  if (rng.bernoulli(0.5)) {
    text += " http://www.offer" + std::to_string(rng.uniform_below(1000)) +
            ".example.com/now";
  }
  if (rng.bernoulli(0.3)) {
    text += " $" + std::to_string(10 + rng.uniform_below(990)) + ".99";
  }
  return text;
}

std::string ham_email(DeterministicRng& rng) {
  std::string text = assemble(draw_words(kHamMixture, rng), rng);
  if (rng.bernoulli(0.2)) {
    text += " Call " + std::to_string(100 + rng.uniform_below(900)) + ".";
  }
  return text;
}

}  // namespace

std::vector<RawEmail> generate_synthetic_corpus(std::size_t n_spam,
                                                std::size_t n_ham,
                                                std::uint64_t seed) {
  const DeterministicRng root(seed);
  std::vector<RawEmail> out;
  out.reserve(n_spam + n_ham);
  // Interleaved so any prefix is roughly balanced.
  std::size_t s = 0;
  std::size_t h = 0;
  while (s < n_spam || h < n_ham) {
    if (s < n_spam && (s <= h || h >= n_ham)) {
      const std::string id = "spam-" + std::to_string(s++);
      DeterministicRng rng = root.substream(id);
      out.push_back({id, Label::kSpam, spam_email(rng)});
    } else {
      const std::string id = "ham-" + std::to_string(h++);
      DeterministicRng rng = root.substream(id);
      out.push_back({id, Label::kHam, ham_email(rng)});
    }
  }
  return out;
}

}  // namespace spamadv
