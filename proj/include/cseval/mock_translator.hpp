#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cseval/commit.hpp"
#include "cseval/metrics.hpp"
#include "cseval/types.hpp"

namespace cseval {

// Deterministic stand-in for an incremental translator.
//
// One reference token is emitted per update, updates every 1/emit_rate
// seconds. A token is emitted corrupted with probability noise_prob. With
// probability revision_prob an update re-translates the last 1..revision_depth
// previously emitted tokens, which fixes any corrupted token in that range.
// The unconstrained hypothesis stream depends only on (config, utterance id);
// the commit policy then decides which fixes reach the output.
struct MockConfig {
  double emit_rate = 2.5;  // tokens per second
  double revision_prob = 0.0;
  std::size_t revision_depth = 20;
  double noise_prob = 0.0;
  std::uint64_t seed = 0;
};

// Throws Error(InvalidArgument).
void validate(const MockConfig& config);

// Placeholder shown for a corrupted token. The suffix is a math symbol, so it
// survives every normalization profile and never equals a plain word.
std::string corrupt_token(std::string_view text);
bool is_corrupted(std::string_view text);

// Throws Error(MissingTask), Error(MissingDuration) or Error(EmptyInput).
SessionLog simulate_session(const Utterance& utterance, Task task, const MockConfig& config,
                            CommitPolicy policy);

struct SweepRow {
  CommitPolicy k;
  ScoreReport report;

  bool operator==(const SweepRow&) const = default;
};

struct SweepReport {
  std::string task;
  std::vector<SweepRow> rows;

  bool operator==(const SweepReport&) const = default;
};

// Simulates every utterance under each policy and scores it against the
// task target. `jobs` only changes speed, never the result.
SweepReport sweep_k(const Manifest& manifest, Task task, const MockConfig& config,
                    std::span<const CommitPolicy> ks, std::size_t jobs = 1);

}  // namespace cseval
