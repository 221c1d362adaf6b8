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

#ifndef SPAMADV_SRC_EMBEDDED_DATA_H_
#define SPAMADV_SRC_EMBEDDED_DATA_H_

#include <string_view>

namespace spamadv::embedded {

// Contents of data/stopwords.txt and data/thesaurus.tsv, generated at build
// time from src/embedded_data.cc.in.
extern const std::string_view kStopwords;
extern const std::string_view kThesaurus;

}  // namespace spamadv::embedded

#endif  // SPAMADV_SRC_EMBEDDED_DATA_H_
