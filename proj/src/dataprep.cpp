#include "cseval/dataprep.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cseval/error.hpp"

namespace cseval {

std::size_t proportional_cut(std::size_t target_len, std::size_t cut, std::size_t source_len,
                             std::size_t min_tokens) {
  // round-half-up of target_len * cut / source_len in integers
  const std::size_t scaled = (2 * target_len * cut + source_len) / (2 * source_len);
  return std::min(target_len, std::max(min_tokens, scaled));
}

Utterance prefix_at(const Utterance& utterance, std::size_t cut, std::size_t min_tokens) {
  const std::size_t n = utterance.source.size();
  if (n == 0) throw Error(ErrorCode::EmptyInput, "utterance '" + utterance.id + "' has an empty source");
  for (const auto& [task, target] : utterance.targets) {
    if (target.empty()) {
      throw Error(ErrorCode::EmptyInput, "utterance '" + utterance.id + "' has an empty " +
                                             std::string(to_string(task)) + " target");
    }
  }
  if (cut == 0 || cut > n) {
    throw Error(ErrorCode::InvalidArgument, "prefix cut " + std::to_string(cut) +
                                                " outside [1, " + std::to_string(n) + "]");
  }

  TokenSeq source(utterance.source.begin(), utterance.source.begin() + static_cast<std::ptrdiff_t>(cut));
  std::map<Task, TokenSeq> targets;
  for (const auto& [task, target] : utterance.targets) {
    const auto keep = proportional_cut(target.size(), cut, n, min_tokens);
    targets[task] = TokenSeq(target.begin(), target.begin() + static_cast<std::ptrdiff_t>(keep));
  }
  std::optional<double> duration;
  if (utterance.duration_s) {
    duration = *utterance.duration_s * static_cast<double>(cut) / static_cast<double>(n);
  }

  auto out = make_utterance(utterance.id + "#p" + std::to_string(cut), std::move(source), duration,
                            std::move(targets));
  out.metadata = utterance.metadata;
  return out;
}

Utterance sample_prefix(const Utterance& utterance, Rng& rng, std::size_t min_tokens) {
  if (min_tokens == 0) throw Error(ErrorCode::InvalidArgument, "min_tokens must be positive");
  const std::size_t n = utterance.source.size();
  if (n == 0) throw Error(ErrorCode::EmptyInput, "utterance '" + utterance.id + "' has an empty source");
  const std::size_t lo = std::min(min_tokens, n);
  return prefix_at(utterance, static_cast<std::size_t>(rng.between(lo, n)), min_tokens);
}

Manifest prefix_sample_corpus(const Manifest& manifest, const PrefixSampleConfig& config) {
  if (!(config.fraction >= 0.0 && config.fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "fraction must lie in [0, 1]");
  }
  if (config.min_tokens == 0) throw Error(ErrorCode::InvalidArgument, "min_tokens must be positive");

  const std::size_t n = manifest.utterances.size();
  const auto count = static_cast<std::size_t>(std::floor(config.fraction * static_cast<double>(n) + 0.5));

  Rng rng(config.seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<bool> selected(n, false);
  for (std::size_t i = 0; i < count; ++i) selected[order[i]] = true;

  Manifest out;
  out.name = manifest.name;
  out.normalization_profile = manifest.normalization_profile;
  out.utterances.reserve(n);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& u = manifest.utterances[i];
    out.utterances.push_back(selected[i] ? sample_prefix(u, rng, config.min_tokens) : u);
    if (!ids.insert(out.utterances.back().id).second) {
      throw Error(ErrorCode::DuplicateId,
                  "DuplicateId(\"" + out.utterances.back().id + "\") after prefix sampling");
    }
  }
  return out;
}

TokenSeq tag_target(const Utterance& utterance, Task task) {
  auto it = utterance.targets.find(task);
  if (it == utterance.targets.end()) {
    throw Error(ErrorCode::MissingTask, "MissingTask: utterance '" + utterance.id + "' has no " +
                                            std::string(to_string(task)) + " target");
  }
  TokenSeq out;
  out.reserve(it->second.size() + 1);
  out.push_back(Token{std::string(to_string(task)), std::nullopt});
  out.insert(out.end(), it->second.begin(), it->second.end());
  return out;
}

TokenSeq tag_target(const Utterance& utterance, std::string_view tag) {
  auto task = parse_task(tag);
  if (!task) {
    throw Error(ErrorCode::MissingTask, "MissingTask: utterance '" + utterance.id + "' has no " +
                                            std::string(tag) + " target");
  }
  return tag_target(utterance, *task);
}

}  // namespace cseval
