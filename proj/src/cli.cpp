#include "cseval/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cseval/error.hpp"
#include "cseval/manifest_io.hpp"
#include "cseval/metrics.hpp"
#include "cseval/normalize.hpp"
#include "cseval/parallel.hpp"

namespace cseval::cli {

using nlohmann::json;

namespace {

// Flag values that only fail once they are interpreted.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Task parse_task_flag(const std::string& text) {
  auto task = parse_task(text);
  if (!task) task = parse_task("<" + text + ">");
  if (!task) throw UsageError("unknown task '" + text + "' (expected src, en, es or de)");
  return *task;
}

template <typename Fn>
auto as_usage(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::vector<CommitPolicy> parse_ks(const std::string& text) {
  std::vector<CommitPolicy> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ks.push_back(as_usage([&] { return CommitPolicy::parse(item); }));
  }
  if (ks.empty()) throw UsageError("--ks needs at least one value");
  return ks;
}

// Output goes to the --out file when given, else to `out`.
template <typename Writer>
void emit(const RunConfig& config, std::ostream& out, Writer&& writer) {
  if (!config.out) {
    writer(out);
    return;
  }
  std::ofstream file(*config.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw Error(ErrorCode::UnwritablePath, "cannot open '" + config.out->string() + "' for writing")
        .with_location(config.out->string());
  }
  writer(file);
  file.flush();
  if (!file) throw Error(ErrorCode::UnwritablePath, "failed writing '" + config.out->string() + "'");
}

std::vector<SessionLog> read_logs(const RunConfig& config) {
  std::vector<SessionLog> logs;
  for (const auto& path : config.logs) {
    auto more = read_session_logs(path, config.profile);
    logs.insert(logs.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  return logs;
}

std::optional<Task> single_task(const std::vector<SessionLog>& logs, std::optional<Task> wanted) {
  if (wanted) return wanted;
  std::set<Task> tasks;
  for (const auto& log : logs) tasks.insert(log.task);
  if (tasks.size() > 1) {
    throw Error(ErrorCode::InvalidArgument, "log mixes several tasks; select one with --task");
  }
  return tasks.empty() ? std::nullopt : std::optional<Task>(*tasks.begin());
}

struct Pair {
  const Utterance* utterance;
  const SessionLog* log;
};

// Pairs every eligible manifest utterance with its session, in manifest order.
template <typename Eligible>
std::vector<Pair> pair_sessions(const Manifest& manifest, const std::vector<SessionLog>& logs,
                                std::optional<Task> task, Eligible&& eligible) {
  std::map<std::string, const SessionLog*> by_id;
  for (const auto& log : logs) {
    if (task && log.task != *task) continue;
    if (!manifest.find(log.utterance_id)) {
      throw Error(ErrorCode::MissingUtterance,
                  "session for unknown utterance '" + log.utterance_id + "'");
    }
    by_id[log.utterance_id] = &log;
  }
  std::vector<Pair> pairs;
  std::size_t expected = 0;
  for (const auto& u : manifest.utterances) {
    if (!eligible(u)) continue;
    ++expected;
    if (auto it = by_id.find(u.id); it != by_id.end()) pairs.push_back({&u, it->second});
  }
  if (pairs.size() != expected || by_id.size() != expected) {
    throw Error(ErrorCode::LengthMismatch, "LengthMismatch: " + std::to_string(by_id.size()) +
                                               " hypotheses vs " + std::to_string(expected) +
                                               " references");
  }
  return pairs;
}

void run_validate(const RunConfig& config, std::ostream& out) {
  const auto manifest = parse_manifest(config.manifest);
  std::size_t cs = 0;
  std::size_t tokens = 0;
  std::size_t with_duration = 0;
  std::map<Task, std::size_t> targets;
  for (const auto& u : manifest.utterances) {
    cs += u.is_cs ? 1 : 0;
    tokens += u.source.size();
    with_duration += u.duration_s ? 1 : 0;
    for (const auto& [task, _] : u.targets) ++targets[task];
  }
  out << "manifest: " << manifest.name << '\n'
      << "profile: " << manifest.normalization_profile << '\n'
      << "utterances: " << manifest.utterances.size() << '\n'
      << "cs_utterances: " << cs << '\n'
      << "source_tokens: " << tokens << '\n'
      << "with_duration: " << with_duration << '\n';
  for (const auto& [task, n] : targets) out << "targets " << to_string(task) << ": " << n << '\n';

  if (config.logs.empty()) return;
  const auto logs = read_logs(config);
  std::size_t updates = 0;
  for (const auto& log : logs) {
    if (!manifest.find(log.utterance_id)) {
      throw Error(ErrorCode::MissingUtterance,
                  "session for unknown utterance '" + log.utterance_id + "'");
    }
    replay(log, config.k, config.mode);
    updates += log.updates.size();
  }
  out << "sessions: " << logs.size() << '\n'
      << "updates: " << updates << '\n'
      << "policy: k=" << config.k.to_string() << " mode=" << to_string(config.mode) << '\n';
}

void run_score(const RunConfig& config, std::ostream& out) {
  const auto manifest = parse_manifest(config.manifest);
  const auto logs = read_logs(config);
  const auto task = single_task(logs, config.task);
  if (!task) throw Error(ErrorCode::EmptyCorpus, "no sessions to score");

  const auto pairs = pair_sessions(manifest, logs, task,
                                   [&](const Utterance& u) { return u.targets.contains(*task); });
  std::vector<SessionOutcome> outcomes(pairs.size());
  parallel_for(pairs.size(), config.jobs, [&](std::size_t i) {
    outcomes[i] = evaluate_session(*pairs[i].log, config.k, config.mode,
                                   renormalize(pairs[i].utterance->targets.at(*task), config.profile));
  });
  const auto report = aggregate(outcomes);

  json selected = report;
  for (const char* key : {"bleu", "wer", "al", "ne"}) {
    if (std::find(config.metrics.begin(), config.metrics.end(), key) == config.metrics.end()) {
      selected.erase(key);
    }
  }
  emit(config, out, [&](std::ostream& os) {
    if (config.format == ReportFormat::json) {
      os << selected.dump(2) << '\n';
      return;
    }
    std::vector<std::string> header, row;
    for (const char* key : {"bleu", "wer", "al", "ne", "n_sessions", "n_ref_tokens"}) {
      if (!selected.contains(key)) continue;
      header.emplace_back(key);
      const auto& v = selected[key];
      if (v.is_null()) row.emplace_back();
      else if (v.is_number_float()) row.push_back(format_number(v.get<double>()));
      else row.push_back(v.dump());
    }
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  });
}

void run_simulate(const RunConfig& config, std::ostream& out) {
  const auto manifest = parse_manifest(config.manifest);
  const Task task = config.task.value_or(Task::src);
  std::vector<SessionLog> logs(manifest.utterances.size());
  parallel_for(logs.size(), config.jobs, [&](std::size_t i) {
    logs[i] = simulate_session(manifest.utterances[i], task, config.mock, config.k);
  });
  emit(config, out, [&](std::ostream& os) { write_session_logs(logs, os); });
}

void run_sweep(const RunConfig& config, std::ostream& out) {
  const auto manifest = parse_manifest(config.manifest);
  const auto report =
      sweep_k(manifest, config.task.value_or(Task::src), config.mock, config.ks, config.jobs);
  emit(config, out, [&](std::ostream& os) { write_report(report, os, config.format); });
}

void run_analyze(const RunConfig& config, std::ostream& out) {
  const auto manifest = parse_manifest(config.manifest);
  const Task task = config.task.value_or(Task::src);

  std::vector<TokenSeq> references;
  for (const auto& u : manifest.utterances) references.push_back(u.source);

  std::vector<RecallCurve> curves;
  for (const auto& path : config.logs) {
    const auto logs = read_session_logs(path, config.profile);
    const auto pairs = pair_sessions(manifest, logs, task, [](const Utterance&) { return true; });
    std::vector<TokenSeq> hypotheses;
    hypotheses.reserve(pairs.size());
    for (const auto& p : pairs) hypotheses.push_back(p.log->final_output());
    curves.push_back(recall_at_distance(references, hypotheses, config.max_distance));
  }

  for (std::size_t i = 0; i < config.curve_out.size() && i < curves.size(); ++i) {
    write_report(curves[i], config.curve_out[i], config.format);
  }
  if (curves.size() == 1) {
    emit(config, out, [&](std::ostream& os) { write_report(curves[0], os, config.format); });
  } else {
    const auto comparison = compare_curves(curves[0], curves[1]);
    emit(config, out, [&](std::ostream& os) {
      write_report(std::span<const CurveDelta>(comparison), os, config.format);
    });
  }
}

void run_prep(const RunConfig& config, std::ostream& out) {
  const auto manifest = parse_manifest(config.manifest);
  const auto sampled = prefix_sample_corpus(manifest, config.prefix);
  emit(config, out, [&](std::ostream& os) { write_manifest(sampled, os); });
}

void print_error(std::ostream& err, const char* kind, const std::string& message, int code,
                 const Error* error = nullptr) {
  json record = {{"error", kind}, {"message", message}, {"exit_code", code}};
  if (error && error->file()) record["file"] = *error->file();
  if (error && error->line()) record["line"] = *error->line();
  err << record.dump() << '\n';
}

}  // namespace

void execute(const RunConfig& config, std::ostream& out) {
  if (config.subcommand == "validate") run_validate(config, out);
  else if (config.subcommand == "score") run_score(config, out);
  else if (config.subcommand == "simulate") run_simulate(config, out);
  else if (config.subcommand == "sweep-k") run_sweep(config, out);
  else if (config.subcommand == "analyze-cs") run_analyze(config, out);
  else if (config.subcommand == "prep-prefixes") run_prep(config, out);
  else throw Error(ErrorCode::InvalidArgument, "unknown subcommand '" + config.subcommand + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Streaming re-translation evaluation for code-switched speech", "cseval"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with default option values")
      ->envname(kConfigEnv);

  RunConfig config;
  std::string k_text = "15";
  std::string mode_text = "splice";
  std::string format_text = "json";
  std::string task_text;
  std::string ks_text = "0,5,10,15,20,25,30,inf";
  std::string out_text;
  std::vector<std::string> metrics = config.metrics;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--profile", config.profile, "Normalization profile")
        ->capture_default_str();
    sub->add_option("--jobs", config.jobs, "Worker threads; results do not depend on it")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  };
  auto add_policy = [&](CLI::App* sub) {
    sub->add_option("--k", k_text, "Rewritable tail length (integer or inf)")->capture_default_str();
    sub->add_option("--mode", mode_text, "Commit mode: strict or splice")
        ->capture_default_str()
        ->check(CLI::IsMember({"strict", "splice"}));
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "Report format: json or csv")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_out = [&](CLI::App* sub, const char* what) {
    sub->add_option("--out", out_text, what);
  };
  auto add_mock = [&](CLI::App* sub) {
    sub->add_option("--emit-rate", config.mock.emit_rate, "Mock tokens per second")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--noise", config.mock.noise_prob, "Probability a token is emitted corrupted")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--revision-prob", config.mock.revision_prob,
                    "Probability an update revises its tail")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--revision-depth", config.mock.revision_depth,
                    "Maximum tokens touched by one revision")
        ->capture_default_str();
    sub->add_option("--seed", config.mock.seed, "Random seed")->capture_default_str();
    sub->add_option("--task", task_text, "Target task: src, en, es or de")->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a manifest and, optionally, session logs");
  validate_cmd->add_option("--manifest", config.manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--log", config.logs, "Session log(s) to validate against the policy")
      ->check(CLI::ExistingFile);
  add_policy(validate_cmd);
  add_common(validate_cmd);

  auto* score_cmd = app.add_subcommand("score", "Score session logs against manifest references");
  score_cmd->add_option("--manifest", config.manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--log", config.logs, "Session log file(s)")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--task", task_text, "Only score sessions of this task");
  score_cmd->add_option("--metrics", metrics, "Metrics to report (bleu, wer, al, ne)")
      ->delimiter(',')
      ->check(CLI::IsMember({"bleu", "wer", "al", "ne"}));
  add_policy(score_cmd);
  add_format(score_cmd);
  add_out(score_cmd, "Report path (default stdout)");
  add_common(score_cmd);

  auto* simulate_cmd = app.add_subcommand("simulate", "Generate session logs with the mock translator");
  simulate_cmd->add_option("--manifest", config.manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--k", k_text, "Rewritable tail length (integer or inf)")->capture_default_str();
  add_mock(simulate_cmd);
  add_out(simulate_cmd, "Session log path (default stdout)");
  add_common(simulate_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep-k", "Mock-translator sweep over commit policies");
  sweep_cmd->add_option("--manifest", config.manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--ks", ks_text, "Comma-separated k values")->capture_default_str();
  add_mock(sweep_cmd);
  add_format(sweep_cmd);
  add_out(sweep_cmd, "Report path (default stdout)");
  add_common(sweep_cmd);

  auto* analyze_cmd = app.add_subcommand("analyze-cs", "Recall by distance to code-switch points");
  analyze_cmd->add_option("--manifest", config.manifest, "Manifest file with labeled sources")
      ->required()
      ->check(CLI::ExistingFile);
  analyze_cmd->add_option("--hyp", config.logs, "Session log(s) whose final outputs are the hypotheses; two logs produce a comparison")
      ->required()
      ->expected(1, 2)
      ->check(CLI::ExistingFile);
  analyze_cmd->add_option("--task", task_text, "Session task to read (default src)");
  analyze_cmd->add_option("--max-distance", config.max_distance, "Largest distance bucket")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--curve-out", config.curve_out, "Per-hypothesis curve path(s)");
  add_format(analyze_cmd);
  add_out(analyze_cmd, "Curve (one --hyp) or comparison (two) path (default stdout)");
  add_common(analyze_cmd);

  auto* prep_cmd = app.add_subcommand("prep-prefixes", "Replace a fraction of utterances by prefixes");
  prep_cmd->add_option("--in,--manifest", config.manifest, "Input manifest")->required()->check(CLI::ExistingFile);
  add_out(prep_cmd, "Output manifest (default stdout)");
  prep_cmd->add_option("--fraction", config.prefix.fraction, "Fraction of utterances to replace")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  prep_cmd->add_option("--seed", config.prefix.seed, "Random seed")->capture_default_str();
  prep_cmd->add_option("--min-tokens", config.prefix.min_tokens, "Shortest prefix")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_common(prep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    print_error(err, "UsageError", e.what(), kUsageError);
    return kUsageError;
  }

  try {
    config.subcommand = app.get_subcommands().front()->get_name();
    config.k = as_usage([&] { return CommitPolicy::parse(k_text); });
    config.mode = as_usage([&] { return parse_commit_mode(mode_text); });
    config.format = as_usage([&] { return parse_report_format(format_text); });
    as_usage([&] { return find_profile(config.profile); });
    if (!task_text.empty()) config.task = parse_task_flag(task_text);
    config.ks = parse_ks(ks_text);
    config.metrics = metrics;
    if (!out_text.empty()) config.out = out_text;
    if (config.mock.revision_depth == 0 && config.mock.revision_prob > 0) {
      throw UsageError("--revision-depth must be positive when revisions are enabled");
    }
  } catch (const UsageError& e) {
    print_error(err, "UsageError", e.what(), kUsageError);
    return kUsageError;
  }

  try {
    execute(config, out);
  } catch (const Error& e) {
    print_error(err, error_code_name(e.code()), e.what(), kDataError, &e);
    return kDataError;
  } catch (const std::exception& e) {
    print_error(err, "InternalError", e.what(), kInternalError);
    return kInternalError;
  }
  return kSuccess;
}

}  // namespace cseval::cli
