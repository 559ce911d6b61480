#include "cseval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string_view>

#include "cseval/error.hpp"

namespace cseval {

namespace {

constexpr int kMaxOrder = 4;

using Ngram = std::vector<std::string_view>;
using NgramCounts = std::map<Ngram, std::size_t>;

NgramCounts count_ngrams(std::span<const Token> tokens) {
  NgramCounts counts;
  for (int n = 1; n <= kMaxOrder; ++n) {
    if (tokens.size() < static_cast<std::size_t>(n)) break;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      Ngram g;
      g.reserve(n);
      for (int m = 0; m < n; ++m) g.push_back(tokens[i + m].text);
      ++counts[g];
    }
  }
  return counts;
}

// sacreBLEU's floor for log(0).
double safe_log(double x) { return x == 0.0 ? -9999999999.0 : std::log(x); }

void check_pairs(std::size_t hyps, std::size_t refs) {
  if (hyps != refs) {
    throw Error(ErrorCode::LengthMismatch, "LengthMismatch: " + std::to_string(hyps) +
                                               " hypotheses vs " + std::to_string(refs) +
                                               " references");
  }
  if (hyps == 0) throw Error(ErrorCode::EmptyCorpus, "empty corpus");
}

}  // namespace

BleuDetail corpus_bleu_detail(std::span<const TokenSeq> hypotheses,
                              std::span<const TokenSeq> references) {
  check_pairs(hypotheses.size(), references.size());

  std::array<std::size_t, kMaxOrder> correct{};
  std::array<std::size_t, kMaxOrder> total{};
  BleuDetail out;
  for (std::size_t s = 0; s < hypotheses.size(); ++s) {
    const auto& hyp = hypotheses[s];
    const auto& ref = references[s];
    out.sys_len += hyp.size();
    out.ref_len += ref.size();
    auto ref_counts = count_ngrams(ref);
    for (const auto& [gram, count] : count_ngrams(hyp)) {
      const auto order = gram.size() - 1;
      total[order] += count;
      if (auto it = ref_counts.find(gram); it != ref_counts.end()) {
        correct[order] += std::min(count, it->second);
      }
    }
  }

  double smooth = 1.0;
  for (int n = 0; n < kMaxOrder; ++n) {
    if (total[n] == 0) break;
    if (correct[n] == 0) {
      smooth *= 2.0;
      out.precisions[n] = 100.0 / (smooth * static_cast<double>(total[n]));
    } else {
      out.precisions[n] = 100.0 * static_cast<double>(correct[n]) / static_cast<double>(total[n]);
    }
  }

  if (out.sys_len < out.ref_len) {
    out.brevity_penalty =
        out.sys_len > 0 ? std::exp(1.0 - static_cast<double>(out.ref_len) /
                                             static_cast<double>(out.sys_len))
                        : 0.0;
  } else {
    out.brevity_penalty = 1.0;
  }

  double log_sum = 0.0;
  for (double p : out.precisions) log_sum += safe_log(p);
  out.score = std::clamp(out.brevity_penalty * std::exp(log_sum / kMaxOrder), 0.0, 100.0);
  return out;
}

double corpus_bleu(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references) {
  return corpus_bleu_detail(hypotheses, references).score;
}

std::size_t edit_distance(std::span<const Token> hypothesis, std::span<const Token> reference) {
  std::vector<std::size_t> prev(reference.size() + 1), cur(reference.size() + 1);
  for (std::size_t j = 0; j <= reference.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= hypothesis.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= reference.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (hypothesis[i - 1].text == reference[j - 1].text ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[reference.size()];
}

double wer(std::span<const Token> hypothesis, std::span<const Token> reference) {
  if (reference.empty()) throw Error(ErrorCode::EmptyReference, "WER needs a non-empty reference");
  return static_cast<double>(edit_distance(hypothesis, reference)) /
         static_cast<double>(reference.size());
}

double corpus_wer(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references) {
  check_pairs(hypotheses.size(), references.size());
  std::size_t edits = 0;
  std::size_t ref_len = 0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    edits += edit_distance(hypotheses[i], references[i]);
    ref_len += references[i].size();
  }
  if (ref_len == 0) throw Error(ErrorCode::EmptyReference, "reference corpus has no tokens");
  return static_cast<double>(edits) / static_cast<double>(ref_len);
}

std::size_t erasure(std::span<const Token> previous, std::span<const Token> next) {
  return previous.size() - common_prefix_length(previous, next);
}

std::size_t total_erasure(std::span<const HistoryEntry> history) {
  std::size_t total = 0;
  for (std::size_t i = 1; i < history.size(); ++i) {
    total += erasure(history[i - 1].output, history[i].output);
  }
  return total;
}

double normalized_erasure(std::span<const HistoryEntry> history) {
  if (history.empty() || history.back().output.empty()) {
    throw Error(ErrorCode::EmptyOutput, "normalized erasure needs a non-empty final output");
  }
  return static_cast<double>(total_erasure(history)) /
         static_cast<double>(history.back().output.size());
}

double average_lag(const FinalizedSession& session) {
  if (!(session.source_end_s > 0.0)) {
    throw Error(ErrorCode::MissingDuration, "average lag needs a positive source end time");
  }
  const std::size_t J = session.final_output.size();
  if (J == 0) throw Error(ErrorCode::EmptyOutput, "average lag needs a non-empty output");

  const double T = session.source_end_s;
  const double rate = T / static_cast<double>(J);
  std::size_t tau = J;
  for (std::size_t j = 1; j <= J; ++j) {
    if (session.finalized_at[j - 1] >= T) {
      tau = j;
      break;
    }
  }
  double sum = 0.0;
  for (std::size_t j = 1; j <= tau; ++j) {
    sum += session.finalized_at[j - 1] - static_cast<double>(j - 1) * rate;
  }
  return sum / static_cast<double>(tau);
}

SessionOutcome evaluate_session(const SessionLog& log, CommitPolicy policy, CommitMode mode,
                                TokenSeq reference) {
  auto state = replay(log, policy, mode);
  SessionOutcome out;
  out.finalized = finalize(state, log.source_end_s.value_or(0.0));
  out.history = std::move(state.history);
  out.reference = std::move(reference);
  return out;
}

ScoreReport aggregate(std::span<const SessionOutcome> sessions) {
  std::vector<TokenSeq> hyps;
  std::vector<TokenSeq> refs;
  hyps.reserve(sessions.size());
  refs.reserve(sessions.size());
  for (const auto& s : sessions) {
    hyps.push_back(s.finalized.final_output);
    refs.push_back(s.reference);
  }

  ScoreReport report;
  report.bleu = corpus_bleu(hyps, refs);
  report.wer = corpus_wer(hyps, refs);
  report.n_sessions = sessions.size();
  for (const auto& r : refs) report.n_ref_tokens += r.size();

  std::size_t erased = 0;
  std::size_t final_len = 0;
  double lag_sum = 0.0;
  std::size_t lag_count = 0;
  bool timed = true;
  for (const auto& s : sessions) {
    erased += total_erasure(s.history);
    final_len += s.finalized.final_output.size();
    if (s.finalized.final_output.empty()) continue;
    if (!(s.finalized.source_end_s > 0.0)) {
      timed = false;
      continue;
    }
    lag_sum += average_lag(s.finalized);
    ++lag_count;
  }
  if (final_len > 0) report.ne = static_cast<double>(erased) / static_cast<double>(final_len);
  if (timed && lag_count > 0) report.al_s = lag_sum / static_cast<double>(lag_count);
  return report;
}

}  // namespace cseval
