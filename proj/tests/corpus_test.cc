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

#include "spamadv/corpus.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "spamadv/error.h"
#include "spamadv/synthetic.h"
#include "test_util.h"

namespace spamadv {
namespace {

using ::spamadv::testing::TempDir;

using Tokens = std::vector<std::string>;

const StopwordSet& stop() { return StopwordSet::english(); }

TEST(LabelTest, CaseInsensitive) {
  EXPECT_EQ(parse_label("SPAM"), Label::kSpam);
  EXPECT_EQ(parse_label("Ham"), Label::kHam);
  EXPECT_THROW(parse_label("eggs"), ValidationError);
}

TEST(CsvTest, ParsesQuotedFieldsWithCommasQuotesAndNewlines) {
  const auto emails = parse_csv_corpus(
      "label,text\n"
      "spam,\"Buy, now\"\n"
      "HAM,\"He said \"\"hi\"\"\nbye\"\n"
      "ham,plain\r\n");
  ASSERT_EQ(emails.size(), 3u);
  EXPECT_EQ(emails[0].label, Label::kSpam);
  EXPECT_EQ(emails[0].text, "Buy, now");
  EXPECT_EQ(emails[1].text, "He said \"hi\"\nbye");
  EXPECT_EQ(emails[2].text, "plain");
  EXPECT_EQ(emails[0].id, "row-0");
  EXPECT_EQ(emails[2].id, "row-2");
}

TEST(CsvTest, EmptyFileIsEmptyCorpus) {
  EXPECT_TRUE(parse_csv_corpus("").empty());
  EXPECT_TRUE(parse_csv_corpus("label,text\n").empty());
}

TEST(CsvTest, WrongColumnCountNamesPhysicalLine) {
  try {
    parse_csv_corpus("label,text\nspam,\"two\nlines\"\nham,a,b\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(CsvTest, BadHeaderAndLabelAreValidationErrors) {
  EXPECT_THROW(parse_csv_corpus("kind,body\nspam,x\n"), ParseError);
  EXPECT_THROW(parse_csv_corpus("label,text\nmaybe,x\n"), ValidationError);
  EXPECT_THROW(parse_csv_corpus("label,text\nspam,\"open\n"), ParseError);
}

TEST(CsvTest, SaveLoadRoundTrip) {
  TempDir dir;
  const std::vector<RawEmail> emails = {
      {"row-0", Label::kSpam, "Win \"big\", now!\nReally."},
      {"row-1", Label::kHam, ""},
  };
  save_csv_corpus(dir.file("c.csv"), emails);
  EXPECT_EQ(load_csv_corpus(dir.file("c.csv")), emails);
  EXPECT_THROW(load_csv_corpus(dir.file("missing.csv")), ValidationError);
}

TEST(CleanTest, PipelineOrder) {
  // "money" and "today" reduce to "monei" and "todai"; y -> i after a
  // vowel-containing stem.
  EXPECT_EQ(clean_text("FREE Money!!! visit http://spam.example today 100", stop()),
            (Tokens{"free", "monei", "visit", "todai"}));
  EXPECT_EQ(clean_text("the a an in", stop()), Tokens{});
  EXPECT_EQ(clean_text("Cats running", stop()), (Tokens{"cat", "run"}));
}

TEST(CleanTest, UrlsRemovedBeforePunctuation) {
  EXPECT_EQ(clean_text("see www.cheap-pills.example/buy?x=1 soon", stop()),
            (Tokens{"see", "soon"}));
  EXPECT_EQ(clean_text("https://a.b/c", stop()), Tokens{});
}

TEST(CleanTest, NonAlphabeticBecomesSeparator) {
  EXPECT_EQ(clean_text("free!!!money", stop()), (Tokens{"free", "monei"}));
  EXPECT_EQ(clean_text("caf\xc3\xa9 r2x2", stop()), (Tokens{"caf", "r", "x"}));
}

TEST(CleanTest, PreservesIdAndLabel) {
  const CleanDoc d = clean({"e1", Label::kSpam, "Winner"}, stop());
  EXPECT_EQ(d.id, "e1");
  EXPECT_EQ(d.label, Label::kSpam);
  EXPECT_EQ(d.tokens, Tokens{"winner"});
}

TEST(CleanTest, TokensAreLowercaseNonStopwords) {
  const std::regex alpha("[a-z]+");
  for (const RawEmail& e : generate_synthetic_corpus(100, 100, 3)) {
    for (const std::string& t : clean(e, stop()).tokens) {
      EXPECT_TRUE(std::regex_match(t, alpha)) << t;
      EXPECT_FALSE(stop().contains(t)) << t;
    }
  }
}

TEST(CleanTest, RecleaningOnlyRestems) {
  // Porter is not idempotent, so re-cleaning a cleaned document applies one
  // more stemming pass and changes nothing else.
  for (const RawEmail& e : generate_synthetic_corpus(50, 50, 5)) {
    const CleanDoc d = clean(e, stop());
    std::string joined;
    Tokens restemmed;
    for (const std::string& t : d.tokens) {
      joined += t + " ";
      const std::string s = porter_stem(t);
      if (!s.empty() && !stop().contains(s)) restemmed.push_back(s);
    }
    EXPECT_EQ(clean_text(joined, stop()), restemmed) << e.id;
  }
}

TEST(CleanTest, IdempotentOnFixedPointStems) {
  for (const char* text : {"Cats running free", "meeting agenda attached",
                           "winner prize cash bonus"}) {
    const Tokens once = clean_text(text, stop());
    std::string joined;
    for (const std::string& t : once) joined += t + " ";
    EXPECT_EQ(clean_text(joined, stop()), once) << text;
  }
}

TEST(CleanTest, ParallelCleaningKeepsOrder) {
  const auto corpus = generate_synthetic_corpus(60, 60, 9);
  EXPECT_EQ(clean_all(corpus, stop(), 1), clean_all(corpus, stop(), 7));
}

std::vector<CleanDoc> docs(std::vector<Tokens> token_lists) {
  std::vector<CleanDoc> out;
  for (auto& t : token_lists) {
    out.push_back({"d" + std::to_string(out.size()), Label::kHam, std::move(t)});
  }
  return out;
}

TEST(VocabularyTest, RanksByFrequencyThenLexicographic) {
  const Vocabulary v = build_vocabulary(docs({{"a", "b", "a"}, {"b", "c"}}), 10);
  EXPECT_EQ(v.id("a"), 2);
  EXPECT_EQ(v.id("b"), 3);
  EXPECT_EQ(v.id("c"), 4);
  EXPECT_EQ(v.size(), 5u);
  EXPECT_EQ(v.token(Vocabulary::kUnkId), kUnkToken);
}

TEST(VocabularyTest, TruncatesToMaxVocab) {
  const Vocabulary v = build_vocabulary(docs({{"a", "b", "a"}, {"b", "c"}}), 1);
  EXPECT_EQ(v.id("a"), 2);
  EXPECT_EQ(v.id("b"), Vocabulary::kUnkId);
  EXPECT_EQ(v.id("c"), Vocabulary::kUnkId);
  EXPECT_THROW(build_vocabulary(docs({}), 0), ValidationError);
}

TEST(VocabularyTest, EmptyDocsGiveReservedIdsOnly) {
  const Vocabulary v = build_vocabulary({}, 10);
  EXPECT_EQ(v.size(), 2u);
  EXPECT_THROW(v.token(2), ValidationError);
}

TEST(VocabularyTest, IdOrderAgreesWithRanking) {
  const auto cleaned = clean_all(generate_synthetic_corpus(200, 200, 1), stop());
  const Vocabulary v = build_vocabulary(cleaned, 300);
  std::map<std::string, std::size_t> freq;
  for (const auto& d : cleaned) {
    for (const auto& t : d.tokens) ++freq[t];
  }
  for (std::int32_t id = 3; id < static_cast<std::int32_t>(v.size()); ++id) {
    const std::string& prev = v.token(id - 1);
    const std::string& cur = v.token(id);
    EXPECT_TRUE(freq[prev] > freq[cur] || (freq[prev] == freq[cur] && prev < cur))
        << prev << " before " << cur;
  }
}

TEST(EncodeTest, PadsAndMapsUnknown) {
  const Vocabulary v({"a", "b"}, 5);
  TokenSeq s = encode(Tokens{"a", "b"}, v);
  EXPECT_EQ(s.ids, (std::vector<std::int32_t>{2, 3, 0, 0, 0}));
  EXPECT_EQ(s.true_len, 2u);
  const Vocabulary v3({"a", "b"}, 3);
  s = encode(Tokens{"z"}, v3);
  EXPECT_EQ(s.ids, (std::vector<std::int32_t>{1, 0, 0}));
  EXPECT_EQ(s.true_len, 1u);
}

TEST(EncodeTest, TruncatesTail) {
  const Vocabulary v({"a", "b"}, Vocabulary::kDefaultMaxLen);
  Tokens t(400, "a");
  t[349] = "b";
  t[350] = "b";
  const TokenSeq s = encode(t, v);
  EXPECT_EQ(s.true_len, 350u);
  EXPECT_EQ(s.ids.size(), 350u);
  EXPECT_EQ(s.ids[349], 3);
}

TEST(EncodeTest, IdTokenIdRoundTrip) {
  const auto cleaned = clean_all(generate_synthetic_corpus(50, 50, 2), stop());
  const Vocabulary v = build_vocabulary(cleaned, 100);
  for (const auto& d : cleaned) {
    for (std::int32_t id : encode(d, v).ids) {
      if (id > Vocabulary::kUnkId) EXPECT_EQ(v.id(v.token(id)), id);
    }
  }
}

std::vector<RawEmail> labelled(std::size_t spam, std::size_t ham) {
  std::vector<RawEmail> out;
  for (std::size_t i = 0; i < spam; ++i) out.push_back({"s" + std::to_string(i), Label::kSpam, "x"});
  for (std::size_t i = 0; i < ham; ++i) out.push_back({"h" + std::to_string(i), Label::kHam, "y"});
  return out;
}

std::size_t count(const std::vector<RawEmail>& v, Label l) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [&](const RawEmail& e) { return e.label == l; }));
}

TEST(SplitTest, StratifiedEightyTwenty) {
  const auto corpus = labelled(100, 100);
  const auto [train, test] = split_corpus(corpus, 0.2, 42);
  EXPECT_EQ(count(train, Label::kSpam), 80u);
  EXPECT_EQ(count(train, Label::kHam), 80u);
  EXPECT_EQ(count(test, Label::kSpam), 20u);
  EXPECT_EQ(count(test, Label::kHam), 20u);
  std::set<std::string> ids;
  for (const auto& e : train) ids.insert(e.id);
  for (const auto& e : test) EXPECT_TRUE(ids.insert(e.id).second) << e.id;
  EXPECT_EQ(ids.size(), corpus.size());
}

TEST(SplitTest, DeterministicForSeed) {
  const auto corpus = labelled(37, 23);
  EXPECT_EQ(split_corpus(corpus, 0.2, 5), split_corpus(corpus, 0.2, 5));
  EXPECT_NE(split_corpus(corpus, 0.2, 5).second, split_corpus(corpus, 0.2, 6).second);
}

TEST(SplitTest, CeilingRuleAndAbsentClass) {
  const auto [train, test] = split_corpus(labelled(1, 0), 0.5, 1);
  EXPECT_TRUE(train.empty());
  ASSERT_EQ(test.size(), 1u);
  EXPECT_EQ(test[0].label, Label::kSpam);
  EXPECT_THROW(split_corpus(labelled(2, 2), 0.0, 1), ValidationError);
  EXPECT_THROW(split_corpus(labelled(2, 2), 1.0, 1), ValidationError);
}

TEST(SplitTest, PerLabelCountsPreserved) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto corpus = labelled(10 + seed, 31 - seed);
    const auto [train, test] = split_corpus(corpus, 0.3, seed);
    for (Label l : {Label::kSpam, Label::kHam}) {
      EXPECT_EQ(count(train, l) + count(test, l), count(corpus, l));
    }
  }
}

TEST(SentenceTest, SplitsOnTerminators) {
  auto spans = split_sentences({"e", Label::kSpam, "Buy now! Limited offer."}, stop());
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0].raw_text, "Buy now");
  EXPECT_EQ(spans[1].raw_text, "Limited offer");
  EXPECT_EQ(spans[1].index, 1u);
  EXPECT_EQ(spans[1].source_email_id, "e");
  EXPECT_EQ(spans[1].clean_tokens, (Tokens{"limit", "offer"}));
  EXPECT_EQ(split_sentences({"e", Label::kHam, "hello"}, stop()).size(), 1u);
  EXPECT_TRUE(split_sentences({"e", Label::kHam, "..."}, stop()).empty());
  EXPECT_EQ(split_sentences({"e", Label::kHam, "one\ntwo? three"}, stop()).size(), 3u);
}

TEST(SyntheticTest, DeterministicAndSized) {
  const auto a = generate_synthetic_corpus(1000, 1000, 7);
  EXPECT_EQ(a, generate_synthetic_corpus(1000, 1000, 7));
  EXPECT_EQ(format_csv_corpus(a), format_csv_corpus(generate_synthetic_corpus(1000, 1000, 7)));
  EXPECT_NE(a, generate_synthetic_corpus(1000, 1000, 8));
  EXPECT_EQ(count(a, Label::kSpam), 1000u);
  const auto b = generate_synthetic_corpus(0, 5, 1);
  EXPECT_EQ(b.size(), 5u);
  EXPECT_EQ(count(b, Label::kHam), 5u);
  EXPECT_TRUE(generate_synthetic_corpus(0, 0, 1).empty());
}

TEST(SyntheticTest, RawTextCarriesLinksAndFigures) {
  std::size_t links = 0;
  for (const auto& e : generate_synthetic_corpus(100, 0, 7)) {
    if (e.text.find("http://") != std::string::npos) ++links;
  }
  EXPECT_GT(links, 20u);
}

}  // namespace
}  // namespace spamadv
