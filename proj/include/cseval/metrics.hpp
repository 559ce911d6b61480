#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cseval/commit.hpp"
#include "cseval/types.hpp"

namespace cseval {

// Tokens compare by text in every metric; language labels are ignored.

struct BleuDetail {
  double score = 0.0;                  // percent
  std::array<double, 4> precisions{};  // percent, after smoothing
  double brevity_penalty = 0.0;
  std::size_t sys_len = 0;
  std::size_t ref_len = 0;
};

// Corpus BLEU-4 with brevity penalty and exponential smoothing of zero n-gram
// precisions, on pre-tokenized input. Matches sacreBLEU with tokenize=none.
// Throws Error(LengthMismatch) or Error(EmptyCorpus).
BleuDetail corpus_bleu_detail(std::span<const TokenSeq> hypotheses,
                              std::span<const TokenSeq> references);
double corpus_bleu(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references);

// Word-level Levenshtein distance with unit costs.
std::size_t edit_distance(std::span<const Token> hypothesis, std::span<const Token> reference);

// Throws Error(EmptyReference) for an empty reference.
double wer(std::span<const Token> hypothesis, std::span<const Token> reference);

// Sum of edits over sum of reference lengths.
double corpus_wer(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references);

// Tokens of `previous` past its longest common prefix with `next`.
std::size_t erasure(std::span<const Token> previous, std::span<const Token> next);

// Total erasure across the history (starting from empty output) divided by
// the final output length. Throws Error(EmptyOutput).
double normalized_erasure(std::span<const HistoryEntry> history);
std::size_t total_erasure(std::span<const HistoryEntry> history);

// Time-based Average Lag over finalization times:
//   r = T / J,  AL = (1/tau) * sum_{j<=tau} (f(j) - (j-1) * r)
// where tau is the first j with f(j) >= T, or J. May be negative.
// Throws Error(MissingDuration) when T <= 0 and Error(EmptyOutput).
double average_lag(const FinalizedSession& session);

struct ScoreReport {
  double bleu = 0.0;
  double wer = 0.0;
  std::optional<double> al_s;  // absent when any session lacks a source end time
  std::optional<double> ne;    // absent when every final output is empty
  std::size_t n_sessions = 0;
  std::size_t n_ref_tokens = 0;

  bool operator==(const ScoreReport&) const = default;
};

struct SessionOutcome {
  std::vector<HistoryEntry> history;
  FinalizedSession finalized;
  TokenSeq reference;
};

// Replays a log through the policy and finalizes it. A log without a source
// end time gets T = 0, which leaves AL undefined in aggregate().
SessionOutcome evaluate_session(const SessionLog& log, CommitPolicy policy, CommitMode mode,
                                TokenSeq reference);

// Corpus aggregation in index order. NE is total erasure over total final
// length; AL is the mean over sessions with a non-empty final output.
ScoreReport aggregate(std::span<const SessionOutcome> sessions);

}  // namespace cseval
