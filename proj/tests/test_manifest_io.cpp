#include <doctest.h>

#include <sstream>

#include "cseval/error.hpp"
#include "cseval/manifest_io.hpp"
#include "support.hpp"

using namespace cseval;

namespace {

Manifest parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_manifest(in, "test.jsonl");
}

ErrorCode parse_error(const std::string& text, std::size_t* line = nullptr) {
  try {
    parse_text(text);
  } catch (const Error& e) {
    if (line && e.line()) *line = *e.line();
    return e.code();
  }
  FAIL("expected a parse error");
  return ErrorCode::InvalidArgument;
}

std::string record(const std::string& id, const std::vector<std::string>& labels) {
  std::string source;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) source += ',';
    source += R"({"text":"w)" + std::to_string(i) + R"(","lang":")" + labels[i] + "\"}";
  }
  return R"({"id":")" + id + R"(","duration_s":1.5,"source":[)" + source +
         R"(],"targets":{"<src>":["x"]}})";
}

}  // namespace

TEST_CASE("is_cs follows adjacent en/es label changes") {
  CHECK(parse_text(record("a", {"es", "es", "en", "en"})).utterances[0].is_cs);
  CHECK_FALSE(parse_text(record("a", {"es", "es", "es"})).utterances[0].is_cs);
  CHECK_FALSE(parse_text(record("a", {"es", "de", "en"})).utterances[0].is_cs);
  CHECK_FALSE(parse_text(record("a", {"es", "other", "en"})).utterances[0].is_cs);
}

TEST_CASE("is_cs ignores a stored flag") {
  auto m = parse_text(R"({"id":"a","is_cs":true,"source":[{"text":"hola","lang":"es"}]})");
  CHECK_FALSE(m.utterances[0].is_cs);
}

TEST_CASE("unlabeled tokens never create a switch") {
  auto m = parse_text(
      R"({"id":"a","source":[{"text":"hola","lang":"es"},{"text":"uh"},{"text":"hi","lang":"en"}]})");
  CHECK_FALSE(m.utterances[0].is_cs);
  CHECK_FALSE(m.utterances[0].source[1].lang.has_value());
}

TEST_CASE("duplicate ids are rejected with the id in the message") {
  try {
    parse_text(record("f01", {"es"}) + "\n" + record("f01", {"en"}));
    FAIL("expected DuplicateId");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateId);
    CHECK(std::string(e.what()).find("DuplicateId(\"f01\")") != std::string::npos);
    CHECK(e.line() == 2u);
  }
}

TEST_CASE("malformed records report their line") {
  std::size_t line = 0;
  CHECK(parse_error(record("a", {"es"}) + "\n\n{not json\n", &line) == ErrorCode::MalformedRecord);
  CHECK(line == 3);
  CHECK(parse_error(R"({"source":[]})") == ErrorCode::MalformedRecord);
  CHECK(parse_error(R"({"id":"a","source":"hola"})") == ErrorCode::MalformedRecord);
  CHECK(parse_error(R"({"id":"a","duration_s":-1,"source":[]})") == ErrorCode::MalformedRecord);
  CHECK(parse_error(R"([1,2])") == ErrorCode::MalformedRecord);
}

TEST_CASE("unknown labels and tags are errors") {
  CHECK(parse_error(record("a", {"fr"})) == ErrorCode::UnknownLanguage);
  CHECK(parse_error(R"({"id":"a","source":[],"targets":{"<fr>":["x"]}})") == ErrorCode::UnknownTask);
  CHECK(parse_error(R"({"manifest":"m","normalization_profile":"bogus"})") ==
        ErrorCode::UnknownProfile);
}

TEST_CASE("texts are normalized and empty tokens dropped") {
  auto m = parse_text(
      R"({"id":"a","source":[{"text":"¿Qué","lang":"es"},{"text":"?","lang":"es"},{"text":"Hello world","lang":"en"}],"targets":{"<en>":["What?","..."]}})");
  const auto& u = m.utterances[0];
  CHECK(texts_of(u.source) == std::vector<std::string>{"qué", "hello", "world"});
  CHECK(u.source[2].lang == Lang::en);
  CHECK(texts_of(u.targets.at(Task::en)) == std::vector<std::string>{"what"});
  CHECK(u.is_cs);
}

TEST_CASE("header selects name and profile") {
  auto m = parse_text(R"({"manifest":"fisher-dev","normalization_profile":"whitespace-v1"})"
                      "\n"
                      R"({"id":"a","source":[{"text":"Hola,","lang":"es"}]})");
  CHECK(m.name == "fisher-dev");
  CHECK(m.normalization_profile == "whitespace-v1");
  CHECK(m.utterances[0].source[0].text == "Hola,");
}

TEST_CASE("missing file is unreadable") {
  CHECK_THROWS_AS(parse_manifest(std::filesystem::path("/nonexistent/m.jsonl")), Error);
}

TEST_CASE("manifest round trip") {
  Rng rng(11);
  for (int round = 0; round < 50; ++round) {
    auto m = testing::synthetic_manifest(rng.between(0, 12), rng.next());
    m.name = "round" + std::to_string(round);
    if (!m.utterances.empty()) {
      m.utterances[0].metadata = {{"speaker", "B"}, {"turn", round}};
      m.utterances.back().duration_s.reset();
    }
    std::stringstream buf;
    write_manifest(m, buf);
    std::istringstream in(buf.str());
    CHECK(parse_manifest(in, "x") == m);
  }
}

TEST_CASE("session logs group updates and read the trailing record") {
  std::istringstream in(
      R"({"utterance_id":"a","task":"<en>","time_s":0.5,"tokens":["The"]})"
      "\n"
      R"({"utterance_id":"a","task":"<en>","time_s":1.0,"tokens":["the","cat."]})"
      "\n"
      R"({"utterance_id":"a","task":"<en>","source_end_s":1.2})"
      "\n"
      R"({"utterance_id":"b","task":"<src>","time_s":0.2,"tokens":[]})");
  auto logs = read_session_logs(in, "log");
  REQUIRE(logs.size() == 2);
  CHECK(logs[0].utterance_id == "a");
  CHECK(logs[0].updates.size() == 2);
  CHECK(texts_of(logs[0].final_output()) == std::vector<std::string>{"the", "cat"});
  CHECK(logs[0].source_end_s == doctest::Approx(1.2));
  CHECK(logs[1].task == Task::src);
  CHECK_FALSE(logs[1].source_end_s.has_value());
}

TEST_CASE("session log errors") {
  auto code = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_session_logs(in, "log");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code(R"({"utterance_id":"a","task":"<en>","time_s":1,"tokens":[]})"
             "\n"
             R"({"utterance_id":"a","task":"<en>","time_s":1,"tokens":["x"]})") ==
        ErrorCode::NonMonotoneTime);
  CHECK(code(R"({"utterance_id":"a","task":"<en>","source_end_s":1})") == ErrorCode::EmptySession);
  CHECK(code(R"({"utterance_id":"a","task":"<xx>","time_s":1,"tokens":[]})") == ErrorCode::UnknownTask);
  CHECK(code(R"({"utterance_id":"a","task":"<en>","tokens":[]})") == ErrorCode::MalformedRecord);
  CHECK(code(R"({"utterance_id":"a","task":"<en>","time_s":1,"tokens":[]})"
             "\n"
             R"({"utterance_id":"a","task":"<en>","source_end_s":2})"
             "\n"
             R"({"utterance_id":"a","task":"<en>","time_s":3,"tokens":[]})") == ErrorCode::DuplicateId);
}

TEST_CASE("session log round trip") {
  std::vector<SessionLog> logs(2);
  logs[0].utterance_id = "x";
  logs[0].task = Task::de;
  logs[0].updates = {{0.1, make_tokens({"das"})}, {0.30000000000000004, make_tokens({"das", "ist"})}};
  logs[0].source_end_s = 0.7;
  logs[1].utterance_id = "y";
  logs[1].updates = {{0.0, {}}};
  std::stringstream buf;
  write_session_logs(logs, buf);
  std::istringstream in(buf.str());
  CHECK(read_session_logs(in, "log") == logs);
}
