#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cseval/error.hpp"
#include "cseval/report.hpp"

using namespace cseval;

namespace {

std::string render(const auto& report, ReportFormat format) {
  std::ostringstream out;
  write_report(report, out, format);
  return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(12.0) == "12");
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("score report csv") {
  ScoreReport r{40.5, 0.25, std::nullopt, 0.125, 3, 17};
  auto lines = lines_of(render(r, ReportFormat::csv));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "bleu,wer,al,ne,n_sessions,n_ref_tokens");
  CHECK(lines[1] == "40.5,0.25,,0.125,3,17");
}

TEST_CASE("sweep csv has one row per k") {
  SweepReport s{"<en>", {}};
  for (auto k : default_sweep()) s.rows.push_back({k, ScoreReport{1.0, 0.0, 2.0, 0.0, 1, 1}});
  auto lines = lines_of(render(s, ReportFormat::csv));
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == "k,bleu,al,ne");
  CHECK(lines[1] == "0,1,2,0");
  CHECK(lines[8] == "inf,1,2,0");
}

TEST_CASE("curve and comparison csv") {
  RecallCurve a(2), b(2);
  a.right = {1, 0};
  a.wrong = {1, 0};
  b.right = {2, 0};
  b.wrong = {0, 0};
  auto curve = lines_of(render(a, ReportFormat::csv));
  CHECK(curve == std::vector<std::string>{"d,right,wrong,recall", "1,1,1,0.5", "2,0,0,"});
  auto rows = compare_curves(a, b);
  auto cmp = lines_of(render(std::span<const CurveDelta>(rows), ReportFormat::csv));
  CHECK(cmp[0] == "d,a_right,a_wrong,a_recall,b_right,b_wrong,b_recall,delta");
  CHECK(cmp[1] == "1,1,1,0.5,2,0,1,-0.5");
  CHECK(cmp[2] == "2,0,0,,0,0,,");
}

TEST_CASE("json round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "cseval_report_test";
  std::filesystem::create_directories(dir);

  ScoreReport r{40.5, 0.25, std::nullopt, 0.125, 3, 17};
  write_report(r, dir / "score.json", ReportFormat::json);
  CHECK(read_report<ScoreReport>(dir / "score.json") == r);
  CHECK(nlohmann::json::parse(render(r, ReportFormat::json))["al"].is_null());

  SweepReport s{"<de>", {{CommitPolicy(5), r}, {CommitPolicy::unbounded(), r}}};
  write_report(s, dir / "sweep.json", ReportFormat::json);
  CHECK(read_report<SweepReport>(dir / "sweep.json") == s);

  RecallCurve c(3);
  c.right = {4, 2, 0};
  c.wrong = {1, 0, 0};
  write_report(c, dir / "curve.json", ReportFormat::json);
  CHECK(read_report<RecallCurve>(dir / "curve.json") == c);

  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_report<ScoreReport>(dir / "missing.json"), Error);
  CHECK_THROWS_AS(write_report(r, dir / "no" / "such" / "dir.json", ReportFormat::json), Error);
}

TEST_CASE("format parsing") {
  CHECK(parse_report_format("csv") == ReportFormat::csv);
  CHECK(parse_report_format("json") == ReportFormat::json);
  CHECK_THROWS_AS(parse_report_format("xml"), Error);
}
