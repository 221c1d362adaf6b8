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

#ifndef SPAMADV_CORPUS_H_
#define SPAMADV_CORPUS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spamadv/lexicon.h"

namespace spamadv {

enum class Label { kHam = 0, kSpam = 1 };

std::string_view label_name(Label label);
// Case-insensitive "spam" / "ham". Throws ValidationError otherwise.
Label parse_label(std::string_view text);

struct RawEmail {
  std::string id;
  Label label = Label::kHam;
  std::string text;

  bool operator==(const RawEmail&) const = default;
};

// Cleaned, stemmed token list. Attacked copies may carry tokens outside
// [a-z]+ (for instance the UNK marker or character-perturbed words); those
// simply encode to the unknown id.
struct CleanDoc {
  std::string id;
  Label label = Label::kHam;
  std::vector<std::string> tokens;

  bool operator==(const CleanDoc&) const = default;
};

struct TokenSeq {
  std::vector<std::int32_t> ids;  // length == max_len
  std::size_t true_len = 0;
};

struct SentenceSpan {
  std::string source_email_id;
  std::size_t index = 0;  // position of the sentence within its email
  std::string raw_text;
  std::vector<std::string> clean_tokens;
};

// Surface form used for tokens forced onto the unknown id.
inline constexpr std::string_view kUnkToken = "<unk>";

class Vocabulary {
 public:
  static constexpr std::int32_t kPadId = 0;
  static constexpr std::int32_t kUnkId = 1;
  static constexpr std::size_t kDefaultMaxLen = 350;

  // Only the reserved ids.
  explicit Vocabulary(std::size_t max_len = kDefaultMaxLen);
  // `tokens[i]` receives id i + 2. Throws ValidationError on duplicates.
  Vocabulary(std::vector<std::string> tokens, std::size_t max_len);

  // Total id count V, including the two reserved ids.
  std::size_t size() const { return id_to_token_.size(); }
  std::size_t max_len() const { return max_len_; }

  // kUnkId when `token` is not in the vocabulary.
  std::int32_t id(std::string_view token) const;
  bool contains(std::string_view token) const;
  // Token for an id >= 2; "<pad>" / "<unk>" for the reserved ids.
  const std::string& token(std::int32_t id) const;

 private:
  std::size_t max_len_;
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, std::int32_t> token_to_id_;
};

// Reads the `label,text` CSV format. Records get ids `row-<index>` (0-based
// over data rows). Throws ParseError naming the physical line on malformed
// rows and ValidationError on unknown labels.
std::vector<RawEmail> parse_csv_corpus(std::string_view contents);
std::vector<RawEmail> load_csv_corpus(const std::string& path);

// Inverse of parse_csv_corpus for the label and text columns; quotes every
// text field.
std::string format_csv_corpus(const std::vector<RawEmail>& emails);
void save_csv_corpus(const std::string& path,
                     const std::vector<RawEmail>& emails);

// lowercase -> strip URLs -> non-letters to spaces -> split -> drop
// stopwords -> Porter stem. Stems that are empty or land in the stopword set
// are dropped as well.
std::vector<std::string> clean_text(std::string_view text,
                                    const StopwordSet& stopwords);
CleanDoc clean(const RawEmail& raw, const StopwordSet& stopwords);
std::vector<CleanDoc> clean_all(const std::vector<RawEmail>& raws,
                                const StopwordSet& stopwords,
                                unsigned threads = 1);

// Ranks tokens by descending document-collection frequency, ties broken by
// ascending byte order; the top `max_vocab` receive ids 2, 3, ...
Vocabulary build_vocabulary(const std::vector<CleanDoc>& docs,
                            std::size_t max_vocab,
                            std::size_t max_len = Vocabulary::kDefaultMaxLen);

// Maps tokens to ids, truncating at max_len (head kept) and right-padding.
TokenSeq encode(const CleanDoc& doc, const Vocabulary& vocab);
TokenSeq encode(const std::vector<std::string>& tokens,
                const Vocabulary& vocab);

// Stratified split. Each label class is shuffled with a seed-derived stream
// and the last ceil(test_fraction * count) members go to the test side.
// Output keeps the input order within each side.
std::pair<std::vector<RawEmail>, std::vector<RawEmail>> split_corpus(
    const std::vector<RawEmail>& corpus, double test_fraction,
    std::uint64_t seed);

// Splits on '.', '!', '?' and newline; trims spans and drops empty ones.
std::vector<SentenceSpan> split_sentences(const RawEmail& raw,
                                          const StopwordSet& stopwords);

}  // namespace spamadv

#endif  // SPAMADV_CORPUS_H_
