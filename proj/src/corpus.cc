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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

#include "spamadv/error.h"
#include "spamadv/parallel.h"
#include "spamadv/rng.h"
#include "text_util.h"

namespace spamadv {
namespace {

const std::string kPadSurface = "<pad>";
const std::string kUnkSurface(kUnkToken);

bool ieq(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

struct CsvRecord {
  std::size_t line = 0;  // physical line where the record starts
  std::vector<std::string> fields;
};

std::vector<CsvRecord> parse_csv(std::string_view in) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < in.size()) {
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool quoted_field = false;
    bool record_done = false;
    while (!record_done) {
      if (i >= in.size()) {
        rec.fields.push_back(std::move(field));
        break;
      }
      const char c = in[i];
      if (c == '"' && field.empty() && !quoted_field) {
        quoted_field = true;
        ++i;
        bool closed = false;
        while (i < in.size()) {
          if (in[i] == '"') {
            if (i + 1 < in.size() && in[i + 1] == '"') {
              field.push_back('"');
              i += 2;
            } else {
              ++i;
              closed = true;
              break;
            }
          } else {
            if (in[i] == '\n') ++line;
            field.push_back(in[i++]);
          }
        }
        if (!closed) throw ParseError("unterminated quoted field", rec.line);
        if (i < in.size() && in[i] != ',' && in[i] != '\n' && in[i] != '\r') {
          throw ParseError("unexpected character after closing quote", line);
        }
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        quoted_field = false;
        ++i;
      } else if (c == '\r' || c == '\n') {
        if (c == '\r' && i + 1 < in.size() && in[i + 1] == '\n') ++i;
        ++i;
        ++line;
        rec.fields.push_back(std::move(field));
        record_done = true;
      } else {
        if (quoted_field) {
          throw ParseError("unexpected character after closing quote", line);
        }
        field.push_back(c);
        ++i;
      }
    }
    // A physical line with nothing on it is not a record.
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
    records.push_back(std::move(rec));
  }
  return records;
}

std::string csv_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Deletes http(s)://... and www.... runs up to the next whitespace.
std::string strip_urls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::string_view rest = text.substr(i);
    if (rest.starts_with("http://") || rest.starts_with("https://") ||
        rest.starts_with("www.")) {
      while (i < text.size() && !is_space(text[i])) ++i;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

}  // namespace

std::string_view label_name(Label label) {
  return label == Label::kSpam ? "spam" : "ham";
}

Label parse_label(std::string_view text) {
  const std::string_view t = internal::trim(text);
  if (ieq(t, "spam")) return Label::kSpam;
  if (ieq(t, "ham")) return Label::kHam;
  throw ValidationError("unknown label '" + std::string(text) + "'");
}

Vocabulary::Vocabulary(std::size_t max_len)
    : max_len_(max_len), id_to_token_{kPadSurface, kUnkSurface} {
  if (max_len_ == 0) throw ValidationError("max_len must be positive");
}

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::size_t max_len)
    : Vocabulary(max_len) {
  id_to_token_.reserve(tokens.size() + 2);
  for (auto& t : tokens) {
    const auto id = static_cast<std::int32_t>(id_to_token_.size());
    if (!token_to_id_.emplace(t, id).second) {
      throw ValidationError("duplicate vocabulary token '" + t + "'");
    }
    id_to_token_.push_back(std::move(t));
  }
}

std::int32_t Vocabulary::id(std::string_view token) const {
  const auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? kUnkId : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
  return token_to_id_.contains(std::string(token));
}

const std::string& Vocabulary::token(std::int32_t id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= id_to_token_.size()) {
    throw ValidationError("vocabulary id " + std::to_string(id) +
                          " out of range");
  }
  return id_to_token_[static_cast<std::size_t>(id)];
}

std::vector<RawEmail> parse_csv_corpus(std::string_view contents) {
  if (contents.starts_with("\xEF\xBB\xBF")) contents.remove_prefix(3);
  const std::vector<CsvRecord> records = parse_csv(contents);
  std::vector<RawEmail> emails;
  if (records.empty()) return emails;

  const CsvRecord& header = records.front();
  if (header.fields.size() != 2 || !ieq(internal::trim(header.fields[0]), "label") ||
      !ieq(internal::trim(header.fields[1]), "text")) {
    throw ParseError("expected header 'label,text'", header.line);
  }
  emails.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    if (rec.fields.size() != 2) {
      throw ParseError("expected 2 columns, found " +
                           std::to_string(rec.fields.size()),
                       rec.line);
    }
    Label label;
    try {
      label = parse_label(rec.fields[0]);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(rec.line) + ": " +
                            e.what());
    }
    emails.push_back(
        RawEmail{"row-" + std::to_string(r - 1), label, rec.fields[1]});
  }
  return emails;
}

std::vector<RawEmail> load_csv_corpus(const std::string& path) {
  return parse_csv_corpus(internal::read_file(path));
}

std::string format_csv_corpus(const std::vector<RawEmail>& emails) {
  std::string out = "label,text\n";
  for (const RawEmail& e : emails) {
    out += label_name(e.label);
    out += ',';
    out += csv_quote(e.text);
    out += '\n';
  }
  return out;
}

void save_csv_corpus(const std::string& path,
                     const std::vector<RawEmail>& emails) {
  internal::write_file(path, format_csv_corpus(emails));
}

std::vector<std::string> clean_text(std::string_view text,
                                    const StopwordSet& stopwords) {
  std::string lowered(text);
  for (char& c : lowered) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  std::string stripped = strip_urls(lowered);
  for (char& c : stripped) {
    if (c < 'a' || c > 'z') c = ' ';
  }
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < stripped.size()) {
    while (i < stripped.size() && stripped[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < stripped.size() && stripped[i] != ' ') ++i;
    if (i == start) continue;
    const std::string_view word(stripped.data() + start, i - start);
    if (stopwords.contains(word)) continue;
    std::string stem = porter_stem(word);
    if (stem.empty() || stopwords.contains(stem)) continue;
    tokens.push_back(std::move(stem));
  }
  return tokens;
}

CleanDoc clean(const RawEmail& raw, const StopwordSet& stopwords) {
  return CleanDoc{raw.id, raw.label, clean_text(raw.text, stopwords)};
}

std::vector<CleanDoc> clean_all(const std::vector<RawEmail>& raws,
                                const StopwordSet& stopwords,
                                unsigned threads) {
  std::vector<CleanDoc> docs(raws.size());
  parallel_for(raws.size(), threads,
               [&](std::size_t i) { docs[i] = clean(raws[i], stopwords); });
  return docs;
}

Vocabulary build_vocabulary(const std::vector<CleanDoc>& docs,
                            std::size_t max_vocab, std::size_t max_len) {
  if (max_vocab < 1) throw ValidationError("max_vocab must be >= 1");
  std::map<std::string, std::size_t> freq;
  for (const CleanDoc& d : docs) {
    for (const std::string& t : d.tokens) ++freq[t];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(),
                                                          freq.end());
  // std::map iteration is already lexicographic; stable_sort keeps it as the
  // tie-break.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > max_vocab) ranked.resize(max_vocab);
  std::vector<std::string> tokens;
  tokens.reserve(ranked.size());
  for (auto& [token, count] : ranked) tokens.push_back(std::move(token));
  return Vocabulary(std::move(tokens), max_len);
}

TokenSeq encode(const std::vector<std::string>& tokens,
                const Vocabulary& vocab) {
  TokenSeq seq;
  seq.ids.assign(vocab.max_len(), Vocabulary::kPadId);
  seq.true_len = std::min(tokens.size(), vocab.max_len());
  for (std::size_t i = 0; i < seq.true_len; ++i) {
    seq.ids[i] = vocab.id(tokens[i]);
  }
  return seq;
}

TokenSeq encode(const CleanDoc& doc, const Vocabulary& vocab) {
  return encode(doc.tokens, vocab);
}

std::pair<std::vector<RawEmail>, std::vector<RawEmail>> split_corpus(
    const std::vector<RawEmail>& corpus, double test_fraction,
    std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ValidationError("test_fraction must lie in (0, 1)");
  }
  const DeterministicRng root(seed);
  std::vector<bool> in_test(corpus.size(), false);
  for (Label label : {Label::kSpam, Label::kHam}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].label == label) members.push_back(i);
    }
    DeterministicRng rng = root.substream("split", label_name(label));
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng.uniform_below(i)]);
    }
    const auto n_test = static_cast<std::size_t>(
        std::ceil(test_fraction * static_cast<double>(members.size()) - 1e-9));
    for (std::size_t k = members.size() - n_test; k < members.size(); ++k) {
      in_test[members[k]] = true;
    }
  }
  std::pair<std::vector<RawEmail>, std::vector<RawEmail>> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (in_test[i] ? out.second : out.first).push_back(corpus[i]);
  }
  return out;
}

std::vector<SentenceSpan> split_sentences(const RawEmail& raw,
                                          const StopwordSet& stopwords) {
  std::vector<SentenceSpan> spans;
  std::size_t start = 0;
  const std::string_view text = raw.text;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != '.' && text[i] != '!' && text[i] != '?' &&
        text[i] != '\n') {
      continue;
    }
    const std::string_view span = internal::trim(text.substr(start, i - start));
    start = i + 1;
    if (span.empty()) continue;
    SentenceSpan s;
    s.source_email_id = raw.id;
    s.index = spans.size();
    s.raw_text = std::string(span);
    s.clean_tokens = clean_text(span, stopwords);
    spans.push_back(std::move(s));
  }
  return spans;
}

}  // namespace spamadv
