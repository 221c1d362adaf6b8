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

#ifndef SPAMADV_ERROR_H_
#define SPAMADV_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace spamadv {

// Root of every error raised by the library. The CLI maps ValidationError and
// ParseError to exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: unknown labels, out-of-range parameters, invalid configs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line` is 1-based; 0 when not applicable.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(line == 0 ? what
                                  : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// Malformed or out-of-range reply from a classifier. Carries the raw reply.
class OracleError : public Error {
 public:
  OracleError(const std::string& what, std::string raw_reply)
      : Error(what + " (raw reply: '" + raw_reply + "')"),
        raw_reply_(std::move(raw_reply)) {}

  const std::string& raw_reply() const { return raw_reply_; }

 private:
  std::string raw_reply_;
};

// Could not reach a remote classifier, or the connection dropped.
class TransportError : public Error {
 public:
  using Error::Error;
};

class AttackError : public Error {
 public:
  using Error::Error;
};

// Wraps an error raised inside one pipeline stage of an experiment.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what, bool validation)
      : Error("stage '" + stage + "': " + what),
        stage_(std::move(stage)),
        validation_(validation) {}

  const std::string& stage() const { return stage_; }
  bool is_validation() const { return validation_; }

 private:
  std::string stage_;
  bool validation_;
};

}  // namespace spamadv

#endif  // SPAMADV_ERROR_H_
