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

#ifndef SPAMADV_SYNTHETIC_H_
#define SPAMADV_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "spamadv/corpus.h"

namespace spamadv {

// Desk-scale labeled corpus. Spam draws on a spam-indicative pool, ham on a
// ham-indicative pool, and both share a neutral pool; ham additionally
// mentions personal names and project codenames built from syllables, the
// long tail a real mailbox has and a template-driven spam run does not.
// Deterministic for a seed: emails are generated from per-email substreams.
// The pools are listed in src/synthetic.cc and README.md.
std::vector<RawEmail> generate_synthetic_corpus(std::size_t n_spam,
                                                std::size_t n_ham,
                                                std::uint64_t seed);

}  // namespace spamadv

#endif  // SPAMADV_SYNTHETIC_H_
