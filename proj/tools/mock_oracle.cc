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

// Line-protocol oracle for tests: reads {"tokens":[...]} per line on stdin
// and answers {"score":x}. The score is a fixed keyword rule, so it needs no
// training data.
//
//   mock_oracle [--count-file PATH] [--bad-reply]
//
// --count-file writes the number of requests served when stdin closes.
// --bad-reply answers every request with the out-of-range score 1.5.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "json.hpp"

namespace {

const std::set<std::string>& spam_stems() {
  static const std::set<std::string> kStems = {
      "viagra", "casino",  "lotteri", "jackpot",  "winner", "prize",
      "cash",   "bonu",    "pharmaci", "mortgag", "loan",   "credit",
      "discount", "offer", "free",    "click",    "cheap",  "deal",
      "monei",  "earn",    "buy",     "sale",     "gift",   "profit",
  };
  return kStems;
}

double score(const nlohmann::json& tokens) {
  double hits = 0.0;
  for (const auto& t : tokens) {
    if (spam_stems().contains(t.get<std::string>())) hits += 1.0;
  }
  return (hits + 0.5) / (static_cast<double>(tokens.size()) + 1.0);
}

}  // namespace

int main(int argc, char** argv) {
  std::string count_file;
  bool bad_reply = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--bad-reply") {
      bad_reply = true;
    } else if (arg == "--count-file" && i + 1 < argc) {
      count_file = argv[++i];
    } else {
      std::cerr << "usage: mock_oracle [--count-file PATH] [--bad-reply]\n";
      return 2;
    }
  }

  std::uint64_t served = 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    ++served;
    nlohmann::json reply;
    try {
      const auto request = nlohmann::json::parse(line);
      reply["score"] = bad_reply ? 1.5 : score(request.at("tokens"));
    } catch (const nlohmann::json::exception& e) {
      reply["error"] = e.what();
    }
    std::cout << reply.dump() << '\n' << std::flush;
  }
  if (!count_file.empty()) {
    std::ofstream(count_file) << served << '\n';
  }
  return 0;
}
