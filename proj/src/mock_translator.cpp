#include "cseval/mock_translator.hpp"

#include <cmath>

#include "cseval/error.hpp"
#include "cseval/parallel.hpp"
#include "cseval/random.hpp"

namespace cseval {

namespace {
constexpr std::string_view kCorruptMark = "⊥";  // ⊥
}

void validate(const MockConfig& config) {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!(config.emit_rate > 0.0) || !std::isfinite(config.emit_rate)) {
    throw Error(ErrorCode::InvalidArgument, "emit_rate must be positive");
  }
  if (!prob(config.noise_prob)) throw Error(ErrorCode::InvalidArgument, "noise_prob must lie in [0, 1]");
  if (!prob(config.revision_prob)) {
    throw Error(ErrorCode::InvalidArgument, "revision_prob must lie in [0, 1]");
  }
}

std::string corrupt_token(std::string_view text) {
  std::string out(text);
  out += kCorruptMark;
  return out;
}

bool is_corrupted(std::string_view text) { return text.ends_with(kCorruptMark); }

SessionLog simulate_session(const Utterance& utterance, Task task, const MockConfig& config,
                            CommitPolicy policy) {
  validate(config);
  auto it = utterance.targets.find(task);
  if (it == utterance.targets.end()) {
    throw Error(ErrorCode::MissingTask, "MissingTask: utterance '" + utterance.id + "' has no " +
                                            std::string(to_string(task)) + " target");
  }
  if (!utterance.duration_s) {
    throw Error(ErrorCode::MissingDuration, "utterance '" + utterance.id + "' has no duration_s");
  }
  const TokenSeq& reference = it->second;
  if (reference.empty()) {
    throw Error(ErrorCode::EmptyInput, "utterance '" + utterance.id + "' has an empty target");
  }

  Rng rng(derive_seed(config.seed, utterance.id));
  const std::size_t J = reference.size();
  std::vector<bool> correct(J, false);
  TokenSeq hypothesis;
  hypothesis.reserve(J);

  SessionLog log;
  log.utterance_id = utterance.id;
  log.task = task;
  log.source_end_s = *utterance.duration_s;
  CommitSession session(policy, CommitMode::splice);

  for (std::size_t i = 1; i <= J; ++i) {
    // Draw everything up front so the stream never depends on the policy.
    const bool noisy = rng.bernoulli(config.noise_prob);
    const bool revise = rng.bernoulli(config.revision_prob);
    const std::size_t depth =
        config.revision_depth > 0 ? static_cast<std::size_t>(rng.between(1, config.revision_depth)) : 0;

    const std::size_t emitted = i - 1;
    if (revise) {
      for (std::size_t j = emitted - std::min(depth, emitted); j < emitted; ++j) {
        if (!correct[j]) {
          correct[j] = true;
          hypothesis[j] = reference[j];
        }
      }
    }
    correct[emitted] = !noisy;
    hypothesis.push_back(noisy ? Token{corrupt_token(reference[emitted].text), std::nullopt}
                               : reference[emitted]);

    const double t = static_cast<double>(i) / config.emit_rate;
    const auto& output = session.update(t, hypothesis);
    log.updates.push_back(HypothesisUpdate{t, output});
  }
  return log;
}

SweepReport sweep_k(const Manifest& manifest, Task task, const MockConfig& config,
                    std::span<const CommitPolicy> ks, std::size_t jobs) {
  if (ks.empty()) throw Error(ErrorCode::InvalidArgument, "no k values to sweep");
  validate(config);
  if (manifest.utterances.empty()) throw Error(ErrorCode::EmptyCorpus, "manifest has no utterances");

  SweepReport report;
  report.task = std::string(to_string(task));
  for (const auto& k : ks) {
    std::vector<SessionOutcome> outcomes(manifest.utterances.size());
    parallel_for(outcomes.size(), jobs, [&](std::size_t i) {
      const auto& u = manifest.utterances[i];
      auto log = simulate_session(u, task, config, k);
      outcomes[i] = evaluate_session(log, k, CommitMode::strict, u.targets.at(task));
    });
    report.rows.push_back(SweepRow{k, aggregate(outcomes)});
  }
  return report;
}

}  // namespace cseval
