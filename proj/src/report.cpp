#include "cseval/report.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>

#include "cseval/error.hpp"

namespace cseval {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  throw Error(ErrorCode::InvalidArgument, "unknown report format '" + std::string(text) + "'");
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void to_json(json& j, const ScoreReport& r) {
  j = json{{"bleu", r.bleu},
           {"wer", r.wer},
           {"al", optional_number(r.al_s)},
           {"ne", optional_number(r.ne)},
           {"n_sessions", r.n_sessions},
           {"n_ref_tokens", r.n_ref_tokens}};
}

void from_json(const json& j, ScoreReport& r) {
  r.bleu = j.at("bleu").get<double>();
  r.wer = j.at("wer").get<double>();
  r.al_s = read_optional(j, "al");
  r.ne = read_optional(j, "ne");
  r.n_sessions = j.at("n_sessions").get<std::size_t>();
  r.n_ref_tokens = j.at("n_ref_tokens").get<std::size_t>();
}

void to_json(json& j, const SweepReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json entry = row.report;
    entry["k"] = row.k.to_string();
    rows.push_back(std::move(entry));
  }
  j = json{{"task", r.task}, {"rows", std::move(rows)}};
}

void from_json(const json& j, SweepReport& r) {
  r.task = j.at("task").get<std::string>();
  r.rows.clear();
  for (const auto& entry : j.at("rows")) {
    r.rows.push_back(SweepRow{CommitPolicy::parse(entry.at("k").get<std::string>()),
                              entry.get<ScoreReport>()});
  }
}

void to_json(json& j, const RecallCurve& r) {
  json buckets = json::array();
  for (std::size_t d = 1; d <= r.max_distance; ++d) {
    buckets.push_back(json{{"d", d},
                           {"right", r.right[d - 1]},
                           {"wrong", r.wrong[d - 1]},
                           {"recall", optional_number(r.recall(d))}});
  }
  j = json{{"max_distance", r.max_distance}, {"buckets", std::move(buckets)}};
}

void from_json(const json& j, RecallCurve& r) {
  r = RecallCurve(j.at("max_distance").get<std::size_t>());
  for (const auto& b : j.at("buckets")) {
    const auto d = b.at("d").get<std::size_t>();
    if (d == 0 || d > r.max_distance) throw Error(ErrorCode::MalformedRecord, "bucket out of range");
    r.right[d - 1] = b.at("right").get<std::size_t>();
    r.wrong[d - 1] = b.at("wrong").get<std::size_t>();
  }
}

void to_json(json& j, const CurveDelta& r) {
  j = json{{"d", r.d},
           {"a_right", r.a_right},
           {"a_wrong", r.a_wrong},
           {"a_recall", optional_number(r.a_recall)},
           {"b_right", r.b_right},
           {"b_wrong", r.b_wrong},
           {"b_recall", optional_number(r.b_recall)},
           {"delta", optional_number(r.delta)}};
}

void from_json(const json& j, CurveDelta& r) {
  r.d = j.at("d").get<std::size_t>();
  r.a_right = j.at("a_right").get<std::size_t>();
  r.a_wrong = j.at("a_wrong").get<std::size_t>();
  r.a_recall = read_optional(j, "a_recall");
  r.b_right = j.at("b_right").get<std::size_t>();
  r.b_wrong = j.at("b_wrong").get<std::size_t>();
  r.b_recall = read_optional(j, "b_recall");
  r.delta = read_optional(j, "delta");
}

void write_report(const ScoreReport& report, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::json) {
    out << json(report).dump(2) << '\n';
    return;
  }
  out << "bleu,wer,al,ne,n_sessions,n_ref_tokens\n"
      << format_number(report.bleu) << ',' << format_number(report.wer) << ','
      << cell(report.al_s) << ',' << cell(report.ne) << ',' << report.n_sessions << ','
      << report.n_ref_tokens << '\n';
}

void write_report(const SweepReport& report, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::json) {
    out << json(report).dump(2) << '\n';
    return;
  }
  out << "k,bleu,al,ne\n";
  for (const auto& row : report.rows) {
    out << row.k.to_string() << ',' << format_number(row.report.bleu) << ','
        << cell(row.report.al_s) << ',' << cell(row.report.ne) << '\n';
  }
}

void write_report(const RecallCurve& curve, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::json) {
    out << json(curve).dump(2) << '\n';
    return;
  }
  out << "d,right,wrong,recall\n";
  for (std::size_t d = 1; d <= curve.max_distance; ++d) {
    out << d << ',' << curve.right[d - 1] << ',' << curve.wrong[d - 1] << ','
        << cell(curve.recall(d)) << '\n';
  }
}

void write_report(std::span<const CurveDelta> comparison, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::json) {
    json rows = json::array();
    for (const auto& row : comparison) rows.push_back(row);
    out << json{{"rows", std::move(rows)}}.dump(2) << '\n';
    return;
  }
  out << "d,a_right,a_wrong,a_recall,b_right,b_wrong,b_recall,delta\n";
  for (const auto& row : comparison) {
    out << row.d << ',' << row.a_right << ',' << row.a_wrong << ',' << cell(row.a_recall) << ','
        << row.b_right << ',' << row.b_wrong << ',' << cell(row.b_recall) << ','
        << cell(row.delta) << '\n';
  }
}

template <typename Report>
void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    Error err(ErrorCode::UnwritablePath, "cannot open '" + path.string() + "' for writing");
    err.with_location(path.string());
    throw err;
  }
  write_report(report, out, format);
  out.flush();
  if (!out) throw Error(ErrorCode::UnwritablePath, "failed writing '" + path.string() + "'");
}

template void write_report(const ScoreReport&, const std::filesystem::path&, ReportFormat);
template void write_report(const SweepReport&, const std::filesystem::path&, ReportFormat);
template void write_report(const RecallCurve&, const std::filesystem::path&, ReportFormat);
template void write_report(const std::vector<CurveDelta>&, const std::filesystem::path&,
                           ReportFormat);

template <typename Report>
Report read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UnreadablePath, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in).get<Report>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, path.string() + ": " + e.what());
  }
}

template ScoreReport read_report<ScoreReport>(const std::filesystem::path&);
template SweepReport read_report<SweepReport>(const std::filesystem::path&);
template RecallCurve read_report<RecallCurve>(const std::filesystem::path&);

}  // namespace cseval
