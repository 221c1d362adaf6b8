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

#include "spamadv/oracle.h"

#include <fcntl.h>
#include <netdb.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <mutex>
#include <regex>

#include "json.hpp"
#include "spamadv/error.h"

namespace spamadv {

OracleHandle::OracleHandle(std::shared_ptr<const Classifier> classifier,
                           double threshold)
    : classifier_(std::move(classifier)), threshold_(threshold) {
  if (!classifier_) throw ValidationError("oracle needs a classifier");
}

OracleHandle::OracleHandle(OracleHandle&& other) noexcept
    : classifier_(std::move(other.classifier_)),
      threshold_(other.threshold_),
      count_(other.count_.load()) {}

OracleHandle& OracleHandle::operator=(OracleHandle&& other) noexcept {
  classifier_ = std::move(other.classifier_);
  threshold_ = other.threshold_;
  count_.store(other.count_.load());
  return *this;
}

double OracleHandle::predict(const std::vector<std::string>& tokens) {
  count_.fetch_add(1, std::memory_order_relaxed);
  return classifier_->spam_probability(tokens);
}

double OracleHandle::predict(const CleanDoc& doc) { return predict(doc.tokens); }

Label OracleHandle::classify(const CleanDoc& doc) {
  return spamadv::classify(predict(doc), threshold_);
}

RemoteEndpoint RemoteEndpoint::parse(const std::string& text) {
  static const std::regex kHostPort(R"(^(?:tcp:)?([A-Za-z0-9_.\-]+):([0-9]{1,5})$)");
  RemoteEndpoint ep;
  std::smatch m;
  if (text.rfind("cmd:", 0) == 0) {
    ep.kind = Kind::kCommand;
    ep.command = text.substr(4);
  } else if (std::regex_match(text, m, kHostPort)) {
    const unsigned long port = std::stoul(m[2].str());
    if (port == 0 || port > 65535) {
      throw ValidationError("invalid port in '" + text + "'");
    }
    ep.kind = Kind::kTcp;
    ep.host = m[1].str();
    ep.port = static_cast<std::uint16_t>(port);
  } else {
    ep.kind = Kind::kCommand;
    ep.command = text;
  }
  if (ep.kind == Kind::kCommand && ep.command.empty()) {
    throw ValidationError("empty remote oracle command");
  }
  return ep;
}

std::string format_oracle_request(const std::vector<std::string>& tokens) {
  nlohmann::json req;
  req["tokens"] = tokens;
  return req.dump();
}

double parse_oracle_reply(const std::string& line) {
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw OracleError("malformed oracle reply", line);
  }
  if (!reply.is_object() || !reply.contains("score") ||
      !reply["score"].is_number()) {
    throw OracleError("oracle reply lacks a numeric 'score'", line);
  }
  const double score = reply["score"].get<double>();
  if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
    throw OracleError("oracle score outside [0, 1]", line);
  }
  return score;
}

namespace {

// Line-oriented duplex channel over a pair of file descriptors.
class LineChannel {
 public:
  LineChannel(int read_fd, int write_fd, bool socket)
      : read_fd_(read_fd), write_fd_(write_fd), socket_(socket) {}

  void write_line(const std::string& line) {
    std::string buf = line;
    buf.push_back('\n');
    std::size_t off = 0;
    while (off < buf.size()) {
      ssize_t n;
      if (socket_) {
        n = ::send(write_fd_, buf.data() + off, buf.size() - off, MSG_NOSIGNAL);
      } else {
        n = ::write(write_fd_, buf.data() + off, buf.size() - off);
      }
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("remote oracle write failed: ") +
                             std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
  }

  std::string read_line() {
    while (true) {
      const std::size_t nl = pending_.find('\n');
      if (nl != std::string::npos) {
        std::string line = pending_.substr(0, nl);
        pending_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      char buf[4096];
      const ssize_t n = ::read(read_fd_, buf, sizeof(buf));
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("remote oracle read failed: ") +
                             std::strerror(errno));
      }
      if (n == 0) {
        throw TransportError("remote oracle closed the connection" +
                             (pending_.empty() ? std::string()
                                               : " after '" + pending_ + "'"));
      }
      pending_.append(buf, static_cast<std::size_t>(n));
    }
  }

 private:
  int read_fd_;
  int write_fd_;
  bool socket_;
  std::string pending_;
};

class RemoteClassifier final : public Classifier {
 public:
  RemoteClassifier(std::string name, int read_fd, int write_fd, bool socket,
                   pid_t child)
      : name_(std::move(name)),
        read_fd_(read_fd),
        write_fd_(write_fd),
        child_(child),
        channel_(read_fd, write_fd, socket) {}

  ~RemoteClassifier() override {
    if (write_fd_ != read_fd_) ::close(write_fd_);
    ::close(read_fd_);
    if (child_ > 0) {
      int status = 0;
      ::waitpid(child_, &status, 0);
    }
  }

  std::string name() const override { return name_; }

  double spam_probability(const std::vector<std::string>& tokens) const override {
    std::lock_guard<std::mutex> lock(mu_);
    channel_.write_line(format_oracle_request(tokens));
    return parse_oracle_reply(channel_.read_line());
  }

 private:
  std::string name_;
  int read_fd_;
  int write_fd_;
  pid_t child_;
  mutable std::mutex mu_;
  mutable LineChannel channel_;
};

std::shared_ptr<const Classifier> spawn_command(const std::string& command) {
  // A child that exits early must surface as a TransportError, not SIGPIPE.
  ::signal(SIGPIPE, SIG_IGN);
  int to_child[2];
  int from_child[2];
  if (::pipe(to_child) != 0) {
    throw TransportError(std::string("pipe: ") + std::strerror(errno));
  }
  if (::pipe(from_child) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw TransportError(std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    throw TransportError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  ::fcntl(to_child[1], F_SETFD, FD_CLOEXEC);
  ::fcntl(from_child[0], F_SETFD, FD_CLOEXEC);
  return std::make_shared<RemoteClassifier>("remote:" + command, from_child[0],
                                            to_child[1], false, pid);
}

std::shared_ptr<const Classifier> connect_tcp(const std::string& host,
                                              std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port_str = std::to_string(port);
  const int rc = ::getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res);
  if (rc != 0) {
    throw TransportError("cannot resolve '" + host + "': " + gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) {
    throw TransportError("cannot connect to " + host + ":" + port_str);
  }
  return std::make_shared<RemoteClassifier>("remote:" + host + ":" + port_str,
                                            fd, fd, true, -1);
}

}  // namespace

std::shared_ptr<const Classifier> connect_remote_classifier(
    const RemoteEndpoint& endpoint) {
  if (endpoint.kind == RemoteEndpoint::Kind::kTcp) {
    return connect_tcp(endpoint.host, endpoint.port);
  }
  return spawn_command(endpoint.command);
}

OracleHandle connect_remote_oracle(const RemoteEndpoint& endpoint,
                                   double threshold) {
  return OracleHandle(connect_remote_classifier(endpoint), threshold);
}

}  // namespace spamadv
