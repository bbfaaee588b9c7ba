#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "httplib.h"
#include "mergeprobe/context.hpp"
#include "mergeprobe/generation.hpp"
#include "mergeprobe/scenario.hpp"

namespace mp = mergeprobe;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = MERGEPROBE_FIXTURE_DIR;
const fs::path kGolden = fs::path(MERGEPROBE_TEST_DATA_DIR) / "prompt_golden";

mp::Prompt fixture_prompt(mp::PromptFormat format = mp::PromptFormat::ZeroShot,
                          int variant_id = 7) {
  static const auto scenarios = mp::load_scenarios(kFixtures / "scenarios.jsonl");
  static const mp::CodeContext ctx =
      mp::extract_for_branch(scenarios.at(0), mp::VersionId::Left, "unused-ws");
  auto variants = mp::enumerate_prompt_variants();
  return mp::build_prompt(ctx, scenarios.at(0),
                          variants.at(static_cast<std::size_t>(variant_id) - 1), format);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One server per test; handler is installed before listening starts.
struct MockServer {
  httplib::Server server;
  int port = 0;
  std::thread thread;

  explicit MockServer(httplib::Server::Handler handler) {
    server.Post("/api/chat", std::move(handler));
    port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  ~MockServer() {
    server.stop();
    thread.join();
  }
};

}  // namespace

TEST_CASE("stub table lookup keys on scenario, branch, variant, and format") {
  mp::StubTable table;
  mp::PromptKey key{"s", mp::VersionId::Left, 7, mp::PromptFormat::ZeroShot};
  table.put(key, {"first", "second"});

  CHECK(table.find(key) != nullptr);
  mp::PromptKey other = key;
  other.variant_id = 6;
  CHECK(table.find(other) == nullptr);
  other = key;
  other.format = mp::PromptFormat::OneShot;
  CHECK(table.find(other) == nullptr);
  other = key;
  other.branch = mp::VersionId::Right;
  CHECK(table.find(other) == nullptr);
}

TEST_CASE("stub responses cycle through the canned texts") {
  mp::StubTable table;
  mp::Prompt prompt = fixture_prompt();
  table.put(mp::prompt_key(prompt), {"A", "B"});

  auto responses = mp::stub_generate(prompt, table, 5);
  REQUIRE(responses.size() == 5);
  CHECK(responses[0].text == "A");
  CHECK(responses[1].text == "B");
  CHECK(responses[2].text == "A");
  CHECK(responses[4].text == "A");
  for (int i = 0; i < 5; ++i) {
    CHECK(responses[static_cast<std::size_t>(i)].response_index == i);
    CHECK_FALSE(responses[static_cast<std::size_t>(i)].error.has_value());
    CHECK(responses[static_cast<std::size_t>(i)].prompt == mp::prompt_key(prompt));
  }
}

TEST_CASE("missing stub entries fall back to the default text") {
  mp::StubTable table;
  table.set_default_text("no code here");
  auto responses = mp::stub_generate(fixture_prompt(), table, 2);
  REQUIRE(responses.size() == 2);
  CHECK(responses[0].text == "no code here");
  CHECK(responses[1].text == "no code here");
}

TEST_CASE("the bundled stub table loads and answers the fixture prompt") {
  mp::StubTable table = mp::StubTable::load(kFixtures / "stub_table.json");
  mp::StubBackend backend(std::move(table));
  CHECK(backend.name() == "stub");

  mp::GenerationConfig cfg;
  auto responses = backend.generate(fixture_prompt(), cfg);
  REQUIRE(responses.size() == 1);
  CHECK(responses[0].text.find("@Test") != std::string::npos);
  CHECK(responses[0].text.find("cleanText") != std::string::npos);

  // Unlisted variants get the refusal default, which sanitizes to no code.
  auto fallback = backend.generate(fixture_prompt(mp::PromptFormat::ZeroShot, 1), cfg);
  REQUIRE(fallback.size() == 1);
  CHECK(fallback[0].text == "I cannot help with that.");
}

TEST_CASE("stub table files with unknown branches or formats are rejected") {
  fs::path dir = fs::temp_directory_path() / "mergeprobe-test" / "stub-tables";
  fs::create_directories(dir);
  fs::path bad = dir / "bad.json";
  std::ofstream(bad) << R"({"entries":[{"scenario_id":"s","branch":"up",)"
                     << R"("variant_id":1,"format":"zero_shot","responses":["x"]}]})";
  CHECK_THROWS_AS(mp::StubTable::load(bad), std::runtime_error);
  CHECK_THROWS_AS(mp::StubTable::load(dir / "absent.json"), std::runtime_error);
}

TEST_CASE("chat request bytes match the frozen wire contract") {
  mp::GenerationConfig cfg;  // codellama:70b, 0.0, 42
  std::string body = mp::chat_request_body(fixture_prompt(), cfg);
  CHECK(body == read_file(kGolden / "chat_request_v7.json"));
}

TEST_CASE("http backend round-trips content from the chat endpoint") {
  std::mutex mu;
  std::vector<std::string> seen_bodies;
  std::vector<std::string> seen_paths;
  MockServer mock([&](const httplib::Request& req, httplib::Response& res) {
    {
      std::lock_guard lock(mu);
      seen_bodies.push_back(req.body);
      seen_paths.push_back(req.path);
    }
    res.set_content(R"({"message":{"role":"assistant","content":"```java\n@Test\n```"}})",
                    "application/json");
  });

  mp::HttpBackend backend("127.0.0.1", mock.port);
  CHECK(backend.name() == "http");
  mp::GenerationConfig cfg;
  cfg.responses_per_prompt = 3;
  auto responses = backend.generate(fixture_prompt(), cfg);

  REQUIRE(responses.size() == 3);
  for (const auto& r : responses) {
    CHECK_FALSE(r.error.has_value());
    CHECK(r.text == "```java\n@Test\n```");
  }
  std::lock_guard lock(mu);
  REQUIRE(seen_bodies.size() == 3);  // one POST per requested response
  CHECK(seen_paths[0] == "/api/chat");
  CHECK(seen_bodies[0] == read_file(kGolden / "chat_request_v7.json"));
}

TEST_CASE("non-200 responses are transport errors") {
  MockServer mock([](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
    res.set_content("boom", "text/plain");
  });
  mp::HttpBackend backend("127.0.0.1", mock.port);
  mp::GenerationConfig cfg;
  auto responses = backend.generate(fixture_prompt(), cfg);
  REQUIRE(responses.size() == 1);
  CHECK(responses[0].error == mp::GenerationError::Transport);
}

TEST_CASE("unparseable payloads are malformed, not crashes") {
  MockServer mock([](const httplib::Request&, httplib::Response& res) {
    res.set_content("definitely not json", "text/plain");
  });
  mp::HttpBackend backend("127.0.0.1", mock.port);
  mp::GenerationConfig cfg;
  auto responses = backend.generate(fixture_prompt(), cfg);
  REQUIRE(responses.size() == 1);
  CHECK(responses[0].error == mp::GenerationError::Malformed);

  MockServer missing_key([](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"unexpected":"shape"})", "application/json");
  });
  mp::HttpBackend backend2("127.0.0.1", missing_key.port);
  auto responses2 = backend2.generate(fixture_prompt(), cfg);
  CHECK(responses2[0].error == mp::GenerationError::Malformed);
}

namespace {

// Accepts TCP connections and hangs up before any HTTP exchange completes.
struct HangupServer {
  int listen_fd = -1;
  int port = 0;
  std::atomic<int> accepted{0};
  std::thread loop;

  HangupServer() {
    listen_fd = ::socket(AF_INET, SOCK_STREAM, 0);
    REQUIRE(listen_fd >= 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    REQUIRE(::bind(listen_fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
    REQUIRE(::listen(listen_fd, 8) == 0);
    socklen_t len = sizeof addr;
    REQUIRE(::getsockname(listen_fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0);
    port = ntohs(addr.sin_port);
    loop = std::thread([this] {
      for (;;) {
        int fd = ::accept(listen_fd, nullptr, nullptr);
        if (fd < 0) return;
        ++accepted;
        ::close(fd);
      }
    });
  }

  ~HangupServer() {
    // shutdown (not close) wakes the accept call blocked on another thread.
    ::shutdown(listen_fd, SHUT_RDWR);
    loop.join();
    ::close(listen_fd);
  }
};

}  // namespace

TEST_CASE("a peer that hangs up yields transport errors, after one retry each") {
  HangupServer dead;
  mp::HttpBackend backend("127.0.0.1", dead.port);
  mp::GenerationConfig cfg;
  cfg.responses_per_prompt = 2;
  auto responses = backend.generate(fixture_prompt(), cfg);
  REQUIRE(responses.size() == 2);
  CHECK(responses[0].error == mp::GenerationError::Transport);
  CHECK(responses[1].error == mp::GenerationError::Transport);
  // Two attempts per response index: the lone retry, then the error sticks.
  CHECK(dead.accepted.load() == 4);
}

TEST_CASE("the whole-call budget turns slow responses into timeouts") {
  std::atomic<int> hits{0};
  MockServer mock([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    std::this_thread::sleep_for(std::chrono::milliseconds(700));
    res.set_content(R"({"message":{"content":"late"}})", "application/json");
  });

  mp::HttpBackend backend("127.0.0.1", mock.port);
  mp::GenerationConfig cfg;
  cfg.responses_per_prompt = 2;
  cfg.timeout = std::chrono::milliseconds(250);
  auto start = std::chrono::steady_clock::now();
  auto responses = backend.generate(fixture_prompt(), cfg);
  auto elapsed = std::chrono::steady_clock::now() - start;

  REQUIRE(responses.size() == 2);
  CHECK(responses[0].error == mp::GenerationError::Timeout);
  // Budget already exhausted: the second response never reaches the wire.
  CHECK(responses[1].error == mp::GenerationError::Timeout);
  CHECK(hits.load() == 1);
  CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() < 650);
}

TEST_CASE("generation error names are stable") {
  CHECK(mp::generation_error_name(mp::GenerationError::Timeout) == "Timeout");
  CHECK(mp::generation_error_name(mp::GenerationError::Transport) == "Transport");
  CHECK(mp::generation_error_name(mp::GenerationError::Malformed) == "Malformed");
}
