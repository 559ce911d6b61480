#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cseval/types.hpp"

namespace cseval {

// Manifest files are JSON Lines. An optional first record
//   {"manifest": <name>, "normalization_profile": <profile>}
// names the corpus; every other line is one utterance:
//   {"id": "f01", "duration_s": 2.4,
//    "source": [{"text": "yo", "lang": "es"}, ...],
//    "targets": {"<src>": ["yo", ...], "<de>": [...]},
//    "metadata": {...}}
// Texts are normalized with the manifest's profile at parse time and tokens
// that normalize to nothing are dropped. is_cs is always recomputed.
Manifest parse_manifest(const std::filesystem::path& path);
Manifest parse_manifest(std::istream& in, const std::string& source_name);

void write_manifest(const Manifest& manifest, const std::filesystem::path& path);
void write_manifest(const Manifest& manifest, std::ostream& out);

// Session logs are JSON Lines with one hypothesis update per record:
//   {"utterance_id": "f01", "task": "<en>", "time_s": 0.4, "tokens": [...]}
// followed by a trailing record that closes the session:
//   {"utterance_id": "f01", "task": "<en>", "source_end_s": 2.4}
// Consecutive records with the same (utterance_id, task) form one session.
// Token strings are normalized with `profile`.
std::vector<SessionLog> read_session_logs(const std::filesystem::path& path,
                                          std::string_view profile = kDefaultProfile);
std::vector<SessionLog> read_session_logs(std::istream& in, const std::string& source_name,
                                          std::string_view profile = kDefaultProfile);

void write_session_logs(std::span<const SessionLog> logs, const std::filesystem::path& path);
void write_session_logs(std::span<const SessionLog> logs, std::ostream& out);

}  // namespace cseval
