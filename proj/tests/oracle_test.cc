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

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "spamadv/error.h"
#include "spamadv/parallel.h"
#include "test_util.h"

namespace spamadv {
namespace {

using Tokens = std::vector<std::string>;
using ::spamadv::testing::slurp;
using ::spamadv::testing::TempDir;

class LengthClassifier final : public Classifier {
 public:
  std::string name() const override { return "length"; }
  double spam_probability(const Tokens& tokens) const override {
    return tokens.size() >= 3 ? 0.9 : 0.1;
  }
};

TEST(OracleHandleTest, CountsEveryCall) {
  OracleHandle oracle(std::make_shared<LengthClassifier>());
  EXPECT_EQ(oracle.query_count(), 0u);
  EXPECT_EQ(oracle.predict(Tokens{"a", "b", "c"}), 0.9);
  EXPECT_EQ(oracle.classify({"d", Label::kHam, {"a"}}), Label::kHam);
  EXPECT_EQ(oracle.query_count(), 2u);
}

TEST(OracleHandleTest, HandlesOnOneClassifierCountSeparately) {
  auto shared = std::make_shared<LengthClassifier>();
  OracleHandle a(shared);
  OracleHandle b(shared);
  a.predict(Tokens{});
  a.predict(Tokens{});
  b.predict(Tokens{});
  EXPECT_EQ(a.query_count(), 2u);
  EXPECT_EQ(b.query_count(), 1u);
}

TEST(OracleHandleTest, CounterIsExactUnderConcurrency) {
  OracleHandle oracle(std::make_shared<LengthClassifier>());
  parallel_for(10000, 8, [&](std::size_t) { oracle.predict(Tokens{"x"}); });
  EXPECT_EQ(oracle.query_count(), 10000u);
}

TEST(OracleHandleTest, ThresholdDecidesLabel) {
  OracleHandle strict(std::make_shared<LengthClassifier>(), 0.95);
  EXPECT_EQ(strict.classify({"d", Label::kSpam, {"a", "b", "c"}}), Label::kHam);
}

TEST(OracleReplyTest, ParsesScores) {
  EXPECT_EQ(parse_oracle_reply(R"({"score":0.25})"), 0.25);
  EXPECT_EQ(parse_oracle_reply(R"({"score":1})"), 1.0);
  EXPECT_EQ(parse_oracle_reply(R"({"score":0, "extra":"x"})"), 0.0);
}

TEST(OracleReplyTest, OutOfRangeScoreCarriesRawReply) {
  try {
    parse_oracle_reply(R"({"score":1.5})");
    FAIL() << "expected OracleError";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.raw_reply(), R"({"score":1.5})");
    EXPECT_NE(std::string(e.what()).find(R"({"score":1.5})"), std::string::npos);
  }
  EXPECT_THROW(parse_oracle_reply(R"({"score":-0.1})"), OracleError);
  EXPECT_THROW(parse_oracle_reply(R"({"score":"0.5"})"), OracleError);
  EXPECT_THROW(parse_oracle_reply(R"({"prob":0.5})"), OracleError);
  EXPECT_THROW(parse_oracle_reply("not json"), OracleError);
  EXPECT_THROW(parse_oracle_reply("[0.5]"), OracleError);
}

TEST(OracleRequestTest, FormatsTokenArray) {
  const auto req = nlohmann::json::parse(format_oracle_request({"free", "monei"}));
  EXPECT_EQ(req["tokens"], nlohmann::json::array({"free", "monei"}));
  EXPECT_EQ(format_oracle_request({}), R"({"tokens":[]})");
}

TEST(RemoteEndpointTest, ParsesForms) {
  const RemoteEndpoint tcp = RemoteEndpoint::parse("tcp:localhost:8080");
  EXPECT_EQ(tcp.kind, RemoteEndpoint::Kind::kTcp);
  EXPECT_EQ(tcp.host, "localhost");
  EXPECT_EQ(tcp.port, 8080);
  const RemoteEndpoint bare = RemoteEndpoint::parse("127.0.0.1:9");
  EXPECT_EQ(bare.kind, RemoteEndpoint::Kind::kTcp);
  EXPECT_EQ(bare.host, "127.0.0.1");
  const RemoteEndpoint cmd = RemoteEndpoint::parse("cmd:python3 serve.py:1");
  EXPECT_EQ(cmd.kind, RemoteEndpoint::Kind::kCommand);
  EXPECT_EQ(cmd.command, "python3 serve.py:1");
  EXPECT_EQ(RemoteEndpoint::parse("./oracle --fast").command, "./oracle --fast");
  EXPECT_THROW(RemoteEndpoint::parse("host:0"), ValidationError);
  EXPECT_THROW(RemoteEndpoint::parse("host:70000"), ValidationError);
  EXPECT_THROW(RemoteEndpoint::parse("cmd:"), ValidationError);
}

TEST(RemoteOracleTest, CommandRoundTripAndServedCount) {
  TempDir dir;
  const std::string count_file = dir.file("served");
  {
    OracleHandle oracle = connect_remote_oracle(RemoteEndpoint::parse(
        std::string("cmd:") + SPAMADV_MOCK_ORACLE + " --count-file " + count_file));
    EXPECT_DOUBLE_EQ(oracle.predict(Tokens{"free", "cash", "meet"}), 2.5 / 4.0);
    EXPECT_DOUBLE_EQ(oracle.predict(Tokens{}), 0.5);
    for (int i = 0; i < 98; ++i) oracle.predict(Tokens{"hello"});
    EXPECT_EQ(oracle.query_count(), 100u);
  }
  // The child writes its count on EOF; the handle waits for it to exit.
  EXPECT_EQ(std::stoul(slurp(count_file)), 100u);
}

TEST(RemoteOracleTest, ConcurrentCallersAreSerialized) {
  OracleHandle oracle = connect_remote_oracle(
      RemoteEndpoint::parse(std::string("cmd:") + SPAMADV_MOCK_ORACLE));
  std::vector<double> got(200);
  parallel_for(got.size(), 4, [&](std::size_t i) {
    got[i] = oracle.predict(Tokens(i % 5, "free"));
  });
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double n = static_cast<double>(i % 5);
    EXPECT_DOUBLE_EQ(got[i], (n + 0.5) / (n + 1.0)) << i;
  }
  EXPECT_EQ(oracle.query_count(), 200u);
}

TEST(RemoteOracleTest, BadReplyRaisesOracleError) {
  OracleHandle oracle = connect_remote_oracle(RemoteEndpoint::parse(
      std::string("cmd:") + SPAMADV_MOCK_ORACLE + " --bad-reply"));
  try {
    oracle.predict(Tokens{"free"});
    FAIL() << "expected OracleError";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.raw_reply(), R"({"score":1.5})");
  }
  EXPECT_EQ(oracle.query_count(), 1u);
}

TEST(RemoteOracleTest, DeadCommandIsTransportError) {
  OracleHandle oracle = connect_remote_oracle(RemoteEndpoint::parse("cmd:exit 0"));
  EXPECT_THROW(oracle.predict(Tokens{"free"}), TransportError);
}

// Minimal single-connection server answering with a fixed score.
class FixedScoreServer {
 public:
  explicit FixedScoreServer(double score) : score_(score) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    ::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
    ::listen(listen_fd_, 1);
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    thread_ = std::thread([this] { serve(); });
  }
  ~FixedScoreServer() {
    thread_.join();
    ::close(listen_fd_);
  }

  std::uint16_t port() const { return port_; }
  int served() const { return served_; }

 private:
  void serve() {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) return;
    std::string pending;
    char buf[1024];
    while (true) {
      const ssize_t n = ::read(fd, buf, sizeof(buf));
      if (n <= 0) break;
      pending.append(buf, static_cast<std::size_t>(n));
      std::size_t nl;
      while ((nl = pending.find('\n')) != std::string::npos) {
        const auto req = nlohmann::json::parse(pending.substr(0, nl));
        pending.erase(0, nl + 1);
        nlohmann::json reply;
        reply["score"] = req["tokens"].empty() ? 0.0 : score_;
        const std::string line = reply.dump() + "\n";
        if (::write(fd, line.data(), line.size()) < 0) break;
        ++served_;
      }
    }
    ::close(fd);
  }

  double score_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  int served_ = 0;
  std::thread thread_;
};

TEST(RemoteOracleTest, TcpEndpointRoundTrip) {
  FixedScoreServer server(0.75);
  {
    OracleHandle oracle = connect_remote_oracle(
        RemoteEndpoint::parse("tcp:127.0.0.1:" + std::to_string(server.port())));
    EXPECT_EQ(oracle.predict(Tokens{"a"}), 0.75);
    EXPECT_EQ(oracle.predict(Tokens{}), 0.0);
    EXPECT_EQ(oracle.classify({"d", Label::kHam, {"b"}}), Label::kSpam);
    EXPECT_EQ(oracle.query_count(), 3u);
  }
}

TEST(RemoteOracleTest, UnreachableTcpIsTransportError) {
  // Grab a free port, then close it so nothing listens there.
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
  socklen_t len = sizeof(addr);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  const int port = ntohs(addr.sin_port);
  ::close(fd);
  EXPECT_THROW(connect_remote_oracle(
                   RemoteEndpoint::parse("127.0.0.1:" + std::to_string(port))),
               TransportError);
}

}  // namespace
}  // namespace spamadv
