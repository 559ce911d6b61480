#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cseval/commit.hpp"
#include "cseval/cs_analysis.hpp"
#include "cseval/dataprep.hpp"
#include "cseval/mock_translator.hpp"
#include "cseval/report.hpp"
#include "cseval/types.hpp"

namespace cseval::cli {

// Exit status of run().
enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2, kInternalError = 3 };

// Environment variable naming a default config file (TOML/INI, as read by
// --config).
inline constexpr const char* kConfigEnv = "CSEVAL_CONFIG";

struct RunConfig {
  std::string subcommand;
  CommitPolicy k = kDefaultPolicy;
  CommitMode mode = CommitMode::splice;
  std::string profile{kDefaultProfile};
  ReportFormat format = ReportFormat::json;
  std::size_t jobs = 1;
  std::optional<Task> task;

  std::filesystem::path manifest;
  std::vector<std::filesystem::path> logs;  // session logs / hypothesis files
  std::optional<std::filesystem::path> out;
  std::vector<std::filesystem::path> curve_out;

  std::vector<std::string> metrics{"bleu", "wer", "al", "ne"};
  std::vector<CommitPolicy> ks = default_sweep();
  std::size_t max_distance = kDefaultMaxDistance;
  MockConfig mock;
  PrefixSampleConfig prefix;
};

// Parses argv, runs the subcommand and returns the exit status. Reports go to
// files or `out`; failures print one JSON error record to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Executes an already validated configuration. Throws cseval::Error.
void execute(const RunConfig& config, std::ostream& out);

}  // namespace cseval::cli
