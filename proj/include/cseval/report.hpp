#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cseval/cs_analysis.hpp"
#include "cseval/metrics.hpp"
#include "cseval/mock_translator.hpp"

namespace cseval {

// JSON is the canonical report form; CSV is a plotting projection with a
// mandatory header row and locale-independent numbers. Undefined values are
// null in JSON and empty cells in CSV.
enum class ReportFormat { json, csv };

ReportFormat parse_report_format(std::string_view text);

// CSV columns:
//   ScoreReport   bleu,wer,al,ne,n_sessions,n_ref_tokens
//   SweepReport   k,bleu,al,ne
//   RecallCurve   d,right,wrong,recall
//   comparison    d,a_right,a_wrong,a_recall,b_right,b_wrong,b_recall,delta
void write_report(const ScoreReport& report, std::ostream& out, ReportFormat format);
void write_report(const SweepReport& report, std::ostream& out, ReportFormat format);
void write_report(const RecallCurve& curve, std::ostream& out, ReportFormat format);
void write_report(std::span<const CurveDelta> comparison, std::ostream& out, ReportFormat format);

// Throws Error(UnwritablePath).
template <typename Report>
void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format);

void to_json(nlohmann::json& j, const ScoreReport& r);
void from_json(const nlohmann::json& j, ScoreReport& r);
void to_json(nlohmann::json& j, const SweepReport& r);
void from_json(const nlohmann::json& j, SweepReport& r);
void to_json(nlohmann::json& j, const RecallCurve& r);
void from_json(const nlohmann::json& j, RecallCurve& r);
void to_json(nlohmann::json& j, const CurveDelta& r);
void from_json(const nlohmann::json& j, CurveDelta& r);

// Reads a JSON report back. Throws Error(UnreadablePath) or Error(MalformedRecord).
template <typename Report>
Report read_report(const std::filesystem::path& path);

// Shortest round-trip decimal form, independent of the C++ locale.
std::string format_number(double value);

}  // namespace cseval
