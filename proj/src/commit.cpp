#include "cseval/commit.hpp"

#include <algorithm>
#include <charconv>

#include "cseval/error.hpp"

namespace cseval {

CommitPolicy CommitPolicy::parse(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return unbounded();
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      k == kUnbounded) {
    throw Error(ErrorCode::InvalidArgument,
                "invalid k '" + std::string(text) + "' (expected a non-negative integer or inf)");
  }
  return CommitPolicy(k);
}

std::string CommitPolicy::to_string() const {
  return is_unbounded() ? "inf" : std::to_string(k_);
}

std::vector<CommitPolicy> default_sweep() {
  return {CommitPolicy(0),  CommitPolicy(5),  CommitPolicy(10), CommitPolicy(15),
          CommitPolicy(20), CommitPolicy(25), CommitPolicy(30), CommitPolicy::unbounded()};
}

CommitMode parse_commit_mode(std::string_view text) {
  if (text == "strict") return CommitMode::strict;
  if (text == "splice") return CommitMode::splice;
  throw Error(ErrorCode::InvalidArgument, "invalid mode '" + std::string(text) + "'");
}

std::string_view to_string(CommitMode mode) {
  return mode == CommitMode::strict ? "strict" : "splice";
}

std::size_t common_prefix_length(std::span<const Token> a, std::span<const Token> b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i].text == b[i].text) ++i;
  return i;
}

bool is_text_prefix(std::span<const Token> prefix, std::span<const Token> seq) {
  return prefix.size() <= seq.size() && common_prefix_length(prefix, seq) == prefix.size();
}

TokenSeq forced_prefix(std::span<const Token> previous, CommitPolicy policy) {
  if (policy.is_unbounded()) return {};
  const std::size_t keep = previous.size() - std::min(policy.k(), previous.size());
  return TokenSeq(previous.begin(), previous.begin() + static_cast<std::ptrdiff_t>(keep));
}

TokenSeq forced_prefix(const SessionState& state, CommitPolicy policy) {
  return forced_prefix(state.previous_output, policy);
}

const TokenSeq& CommitSession::update(double time_s, std::span<const Token> hypothesis) {
  if (!(time_s >= 0.0) ||
      (!state_.history.empty() && !(time_s > state_.history.back().time_s))) {
    throw Error(ErrorCode::NonMonotoneTime,
                "update time " + std::to_string(time_s) + " does not advance the session");
  }

  TokenSeq forced = forced_prefix(state_.previous_output, policy_);
  TokenSeq output;
  if (mode_ == CommitMode::strict) {
    if (!is_text_prefix(forced, hypothesis)) {
      throw Error(ErrorCode::PrefixViolation,
                  "hypothesis at t=" + std::to_string(time_s) + " rewrites committed prefix '" +
                      join_texts(forced) + "'");
    }
    output.assign(hypothesis.begin(), hypothesis.end());
  } else {
    output = std::move(forced);
    if (hypothesis.size() > output.size()) {
      output.insert(output.end(), hypothesis.begin() + static_cast<std::ptrdiff_t>(output.size()),
                    hypothesis.end());
    }
  }

  state_.total_erased +=
      state_.previous_output.size() - common_prefix_length(state_.previous_output, output);
  state_.history.push_back(HistoryEntry{time_s, output});
  state_.previous_output = std::move(output);
  return state_.previous_output;
}

SessionState apply_update(SessionState state, double time_s, std::span<const Token> hypothesis,
                          CommitPolicy policy, CommitMode mode) {
  CommitSession session(policy, mode, std::move(state));
  session.update(time_s, hypothesis);
  return std::move(session).release();
}

SessionState replay(const SessionLog& log, CommitPolicy policy, CommitMode mode) {
  CommitSession session(policy, mode);
  for (const auto& u : log.updates) {
    try {
      session.update(u.time_s, u.tokens);
    } catch (Error& e) {
      throw Error(e.code(), "session '" + log.utterance_id + "': " + e.what());
    }
  }
  return std::move(session).release();
}

FinalizedSession finalize(const SessionState& state, double source_end_s) {
  if (state.history.empty()) {
    throw Error(ErrorCode::EmptySession, "cannot finalize a session without updates");
  }
  FinalizedSession out;
  out.final_output = state.history.back().output;
  out.source_end_s = source_end_s;

  // stable[u] = min over v >= u of LCP(output_v, final); f(j) is the time of
  // the first u with stable[u] >= j. stable is non-decreasing in u.
  const auto& history = state.history;
  std::vector<std::size_t> stable(history.size());
  std::size_t running = out.final_output.size();
  for (std::size_t u = history.size(); u-- > 0;) {
    running = std::min(running, common_prefix_length(history[u].output, out.final_output));
    stable[u] = running;
  }

  out.finalized_at.resize(out.final_output.size());
  std::size_t u = 0;
  for (std::size_t j = 1; j <= out.final_output.size(); ++j) {
    while (stable[u] < j) ++u;
    out.finalized_at[j - 1] = history[u].time_s;
  }
  return out;
}

}  // namespace cseval
