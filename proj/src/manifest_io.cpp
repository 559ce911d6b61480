#include "cseval/manifest_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "cseval/error.hpp"
#include "cseval/normalize.hpp"

namespace cseval {

using nlohmann::json;

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg, const std::string& file,
                       std::size_t line) {
  Error err(code, file + ":" + std::to_string(line) + ": " + msg);
  err.with_location(file, line);
  throw err;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    Error err(ErrorCode::UnreadablePath, "cannot open '" + path.string() + "' for reading");
    err.with_location(path.string());
    throw err;
  }
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    Error err(ErrorCode::UnwritablePath, "cannot open '" + path.string() + "' for writing");
    err.with_location(path.string());
    throw err;
  }
  return out;
}

// Calls fn(record, line_number) for every non-blank line.
template <typename Fn>
void for_each_record(std::istream& in, const std::string& name, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::MalformedRecord, std::string("invalid JSON: ") + e.what(), name, line_no);
    }
    if (!record.is_object()) {
      fail(ErrorCode::MalformedRecord, "record is not an object", name, line_no);
    }
    fn(record, line_no);
  }
}

std::optional<double> read_seconds(const json& record, const char* key, const std::string& name,
                                   std::size_t line_no) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    fail(ErrorCode::MalformedRecord, std::string("'") + key + "' must be a number", name, line_no);
  }
  double v = it->get<double>();
  if (!(v >= 0.0)) {
    fail(ErrorCode::MalformedRecord, std::string("'") + key + "' must be non-negative", name,
         line_no);
  }
  return v;
}

std::string read_string(const json& record, const char* key, const std::string& name,
                        std::size_t line_no) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    fail(ErrorCode::MalformedRecord, std::string("missing string field '") + key + "'", name,
         line_no);
  }
  return it->get<std::string>();
}

Task read_task(const json& record, const std::string& name, std::size_t line_no) {
  auto tag = read_string(record, "task", name, line_no);
  auto task = parse_task(tag);
  if (!task) fail(ErrorCode::UnknownTask, "unknown task tag '" + tag + "'", name, line_no);
  return *task;
}

TokenSeq read_text_list(const json& list, const NormalizationProfile& profile,
                        const std::string& what, const std::string& name, std::size_t line_no) {
  if (!list.is_array()) fail(ErrorCode::MalformedRecord, what + " must be a list", name, line_no);
  TokenSeq out;
  for (const auto& item : list) {
    if (!item.is_string()) {
      fail(ErrorCode::MalformedRecord, what + " entries must be strings", name, line_no);
    }
    try {
      normalize_into(out, item.get_ref<const std::string&>(), std::nullopt, profile);
    } catch (Error& e) {
      fail(e.code(), e.what(), name, line_no);
    }
  }
  return out;
}

Utterance parse_utterance(const json& record, const NormalizationProfile& profile,
                          const std::string& name, std::size_t line_no) {
  auto id = read_string(record, "id", name, line_no);
  if (id.empty()) fail(ErrorCode::MalformedRecord, "empty utterance id", name, line_no);
  auto duration = read_seconds(record, "duration_s", name, line_no);

  auto src_it = record.find("source");
  if (src_it == record.end() || !src_it->is_array()) {
    fail(ErrorCode::MalformedRecord, "'source' must be a list", name, line_no);
  }
  TokenSeq source;
  for (const auto& tok : *src_it) {
    if (!tok.is_object() || !tok.contains("text") || !tok["text"].is_string()) {
      fail(ErrorCode::MalformedRecord, "source entries must be {text, lang} objects", name,
           line_no);
    }
    std::optional<Lang> lang;
    if (auto l = tok.find("lang"); l != tok.end() && !l->is_null()) {
      if (!l->is_string()) fail(ErrorCode::UnknownLanguage, "language label must be a string", name, line_no);
      lang = parse_lang(l->get_ref<const std::string&>());
      if (!lang) {
        fail(ErrorCode::UnknownLanguage,
             "unknown language label '" + l->get<std::string>() + "'", name, line_no);
      }
    }
    try {
      normalize_into(source, tok["text"].get_ref<const std::string&>(), lang, profile);
    } catch (Error& e) {
      fail(e.code(), e.what(), name, line_no);
    }
  }

  std::map<Task, TokenSeq> targets;
  if (auto t = record.find("targets"); t != record.end() && !t->is_null()) {
    if (!t->is_object()) fail(ErrorCode::MalformedRecord, "'targets' must be an object", name, line_no);
    for (const auto& [tag, list] : t->items()) {
      auto task = parse_task(tag);
      if (!task) fail(ErrorCode::UnknownTask, "unknown task tag '" + tag + "'", name, line_no);
      targets[*task] = read_text_list(list, profile, "target " + tag, name, line_no);
    }
  }

  auto u = make_utterance(std::move(id), std::move(source), duration, std::move(targets));
  if (auto m = record.find("metadata"); m != record.end()) u.metadata = *m;
  return u;
}

json token_texts(std::span<const Token> tokens) {
  json out = json::array();
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

}  // namespace

Manifest parse_manifest(std::istream& in, const std::string& source_name) {
  Manifest manifest;
  manifest.name = source_name;
  const NormalizationProfile* profile = &find_profile(kDefaultProfile);
  std::set<std::string> seen;
  bool first = true;

  for_each_record(in, source_name, [&](const json& record, std::size_t line_no) {
    const bool header = record.contains("manifest");
    if (header) {
      if (!first) fail(ErrorCode::MalformedRecord, "manifest header must be the first record", source_name, line_no);
      manifest.name = read_string(record, "manifest", source_name, line_no);
      if (auto p = record.find("normalization_profile"); p != record.end()) {
        if (!p->is_string()) fail(ErrorCode::MalformedRecord, "profile must be a string", source_name, line_no);
        try {
          profile = &find_profile(p->get_ref<const std::string&>());
        } catch (Error& e) {
          fail(e.code(), e.what(), source_name, line_no);
        }
      }
      manifest.normalization_profile = profile->name;
    } else {
      auto u = parse_utterance(record, *profile, source_name, line_no);
      if (!seen.insert(u.id).second) {
        fail(ErrorCode::DuplicateId, "DuplicateId(\"" + u.id + "\")", source_name, line_no);
      }
      manifest.utterances.push_back(std::move(u));
    }
    first = false;
  });
  return manifest;
}

Manifest parse_manifest(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_manifest(in, path.string());
}

void write_manifest(const Manifest& manifest, std::ostream& out) {
  json header = {{"manifest", manifest.name},
                 {"normalization_profile", manifest.normalization_profile}};
  out << header.dump() << '\n';
  for (const auto& u : manifest.utterances) {
    json rec;
    rec["id"] = u.id;
    if (u.duration_s) rec["duration_s"] = *u.duration_s;
    json source = json::array();
    for (const auto& t : u.source) {
      json tok = {{"text", t.text}};
      tok["lang"] = t.lang ? json(std::string(to_string(*t.lang))) : json(nullptr);
      source.push_back(std::move(tok));
    }
    rec["source"] = std::move(source);
    json targets = json::object();
    for (const auto& [task, toks] : u.targets) targets[std::string(to_string(task))] = token_texts(toks);
    rec["targets"] = std::move(targets);
    rec["is_cs"] = u.is_cs;
    if (!u.metadata.is_null()) rec["metadata"] = u.metadata;
    out << rec.dump() << '\n';
  }
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_manifest(manifest, out);
  if (!out) throw Error(ErrorCode::UnwritablePath, "failed writing '" + path.string() + "'");
}

std::vector<SessionLog> read_session_logs(std::istream& in, const std::string& source_name,
                                          std::string_view profile_name) {
  const auto& profile = find_profile(profile_name);
  std::vector<SessionLog> logs;
  std::set<std::pair<std::string, Task>> seen;
  bool open = false;

  auto start = [&](const std::string& id, Task task, std::size_t line_no) {
    if (!seen.insert({id, task}).second) {
      fail(ErrorCode::DuplicateId,
           "session (" + id + ", " + std::string(to_string(task)) + ") appears twice",
           source_name, line_no);
    }
    SessionLog log;
    log.utterance_id = id;
    log.task = task;
    logs.push_back(std::move(log));
    open = true;
  };

  for_each_record(in, source_name, [&](const json& record, std::size_t line_no) {
    auto id = read_string(record, "utterance_id", source_name, line_no);
    auto task = read_task(record, source_name, line_no);
    const bool same = open && logs.back().utterance_id == id && logs.back().task == task;

    if (record.contains("source_end_s")) {
      if (!same) {
        fail(ErrorCode::EmptySession, "trailing record for a session without updates",
             source_name, line_no);
      }
      logs.back().source_end_s = read_seconds(record, "source_end_s", source_name, line_no);
      open = false;
      return;
    }

    if (!same) start(id, task, line_no);
    auto time = read_seconds(record, "time_s", source_name, line_no);
    if (!time) fail(ErrorCode::MalformedRecord, "missing 'time_s'", source_name, line_no);
    auto tok_it = record.find("tokens");
    if (tok_it == record.end()) fail(ErrorCode::MalformedRecord, "missing 'tokens'", source_name, line_no);

    auto& log = logs.back();
    if (!log.updates.empty() && !(*time > log.updates.back().time_s)) {
      fail(ErrorCode::NonMonotoneTime, "time_s must strictly increase within a session",
           source_name, line_no);
    }
    log.updates.push_back(
        HypothesisUpdate{*time, read_text_list(*tok_it, profile, "tokens", source_name, line_no)});
  });
  return logs;
}

std::vector<SessionLog> read_session_logs(const std::filesystem::path& path,
                                          std::string_view profile) {
  auto in = open_input(path);
  return read_session_logs(in, path.string(), profile);
}

void write_session_logs(std::span<const SessionLog> logs, std::ostream& out) {
  for (const auto& log : logs) {
    const std::string task(to_string(log.task));
    for (const auto& u : log.updates) {
      json rec = {{"utterance_id", log.utterance_id},
                  {"task", task},
                  {"time_s", u.time_s},
                  {"tokens", token_texts(u.tokens)}};
      out << rec.dump() << '\n';
    }
    if (log.source_end_s) {
      json rec = {{"utterance_id", log.utterance_id},
                  {"task", task},
                  {"source_end_s", *log.source_end_s}};
      out << rec.dump() << '\n';
    }
  }
}

void write_session_logs(std::span<const SessionLog> logs, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_session_logs(logs, out);
  if (!out) throw Error(ErrorCode::UnwritablePath, "failed writing '" + path.string() + "'");
}

}  // namespace cseval
