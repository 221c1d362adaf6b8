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

#ifndef SPAMADV_ORACLE_H_
#define SPAMADV_ORACLE_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spamadv/corpus.h"
#include "spamadv/models.h"

namespace spamadv {

// Query-counted black-box view of a classifier. Every predict() call adds
// exactly one to query_count(), including calls that end in an error.
class OracleHandle {
 public:
  explicit OracleHandle(std::shared_ptr<const Classifier> classifier,
                        double threshold = 0.5);

  OracleHandle(const OracleHandle&) = delete;
  OracleHandle& operator=(const OracleHandle&) = delete;
  OracleHandle(OracleHandle&& other) noexcept;
  OracleHandle& operator=(OracleHandle&& other) noexcept;

  double predict(const CleanDoc& doc);
  double predict(const std::vector<std::string>& tokens);
  Label classify(const CleanDoc& doc);

  std::uint64_t query_count() const {
    return count_.load(std::memory_order_relaxed);
  }
  double threshold() const { return threshold_; }
  const Classifier& classifier() const { return *classifier_; }
  std::shared_ptr<const Classifier> shared_classifier() const {
    return classifier_;
  }
  std::string id() const { return classifier_->name(); }

 private:
  std::shared_ptr<const Classifier> classifier_;
  double threshold_;
  std::atomic<std::uint64_t> count_{0};
};

// Where a remote classifier lives. Commands run under /bin/sh -c.
struct RemoteEndpoint {
  enum class Kind { kCommand, kTcp };
  Kind kind = Kind::kCommand;
  std::string command;
  std::string host;
  std::uint16_t port = 0;

  // "tcp:HOST:PORT" or "HOST:PORT" select TCP; "cmd:..." or anything else is
  // a command line.
  static RemoteEndpoint parse(const std::string& text);
};

// Speaks the newline-delimited JSON protocol: request {"tokens": [...]},
// reply {"score": x} with x in [0, 1]. Requests on one connection are
// serialized. Throws TransportError when the endpoint cannot be reached.
std::shared_ptr<const Classifier> connect_remote_classifier(
    const RemoteEndpoint& endpoint);

OracleHandle connect_remote_oracle(const RemoteEndpoint& endpoint,
                                   double threshold = 0.5);

// Parses one reply line. Throws OracleError carrying `line` on malformed
// JSON, a missing or non-numeric score, or a score outside [0, 1].
double parse_oracle_reply(const std::string& line);
std::string format_oracle_request(const std::vector<std::string>& tokens);

}  // namespace spamadv

#endif  // SPAMADV_ORACLE_H_
