#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cseval/types.hpp"

namespace cseval {

// Number of trailing tokens of the previous output that an update may rewrite.
// k = 0 is append-only output; the unbounded policy allows full rewriting.
class CommitPolicy {
 public:
  constexpr CommitPolicy() = default;
  constexpr explicit CommitPolicy(std::size_t k) : k_(k) {}

  static constexpr CommitPolicy unbounded() { return CommitPolicy(kUnbounded); }

  // Accepts a non-negative integer or "inf".
  static CommitPolicy parse(std::string_view text);

  constexpr bool is_unbounded() const { return k_ == kUnbounded; }
  constexpr std::size_t k() const { return k_; }
  std::string to_string() const;

  constexpr auto operator<=>(const CommitPolicy&) const = default;

 private:
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
  std::size_t k_ = 15;
};

inline constexpr CommitPolicy kDefaultPolicy{15};

// {0, 5, 10, 15, 20, 25, 30, inf}
std::vector<CommitPolicy> default_sweep();

enum class CommitMode {
  strict,  // reject hypotheses that do not extend the forced prefix
  splice,  // force the committed prefix, keep the hypothesis tail positionally
};

CommitMode parse_commit_mode(std::string_view text);
std::string_view to_string(CommitMode mode);

struct HistoryEntry {
  double time_s = 0.0;
  TokenSeq output;

  bool operator==(const HistoryEntry&) const = default;
};

struct SessionState {
  TokenSeq previous_output;
  std::vector<HistoryEntry> history;
  std::size_t total_erased = 0;
};

struct FinalizedSession {
  TokenSeq final_output;
  std::vector<double> finalized_at;  // f(j) for j = 1..len(final_output)
  double source_end_s = 0.0;
};

TokenSeq forced_prefix(std::span<const Token> previous, CommitPolicy policy);
TokenSeq forced_prefix(const SessionState& state, CommitPolicy policy);

// True iff `prefix` is a prefix of `seq`, comparing token text.
bool is_text_prefix(std::span<const Token> prefix, std::span<const Token> seq);

std::size_t common_prefix_length(std::span<const Token> a, std::span<const Token> b);

// Single-writer incremental form of apply_update.
class CommitSession {
 public:
  CommitSession(CommitPolicy policy, CommitMode mode) : policy_(policy), mode_(mode) {}
  CommitSession(CommitPolicy policy, CommitMode mode, SessionState initial)
      : policy_(policy), mode_(mode), state_(std::move(initial)) {}

  // Throws Error(NonMonotoneTime) or, in strict mode, Error(PrefixViolation).
  const TokenSeq& update(double time_s, std::span<const Token> hypothesis);

  const SessionState& state() const { return state_; }
  SessionState release() && { return std::move(state_); }
  CommitPolicy policy() const { return policy_; }
  CommitMode mode() const { return mode_; }

 private:
  CommitPolicy policy_;
  CommitMode mode_;
  SessionState state_;
};

SessionState apply_update(SessionState state, double time_s, std::span<const Token> hypothesis,
                          CommitPolicy policy, CommitMode mode);

// Runs every update of a log through the policy.
SessionState replay(const SessionLog& log, CommitPolicy policy, CommitMode mode);

// f(j) is the time of the earliest update from which the output's first j
// tokens equal the final output's first j tokens for the rest of the session.
// Throws Error(EmptySession).
FinalizedSession finalize(const SessionState& state, double source_end_s);

}  // namespace cseval
