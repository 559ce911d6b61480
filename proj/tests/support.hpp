#pragma once

#include <string>
#include <vector>

#include "cseval/random.hpp"
#include "cseval/types.hpp"

namespace cseval::testing {

inline const std::vector<std::string>& spanish_words() {
  static const std::vector<std::string> w{"yo", "quiero", "ir", "a", "la", "playa", "mañana",
                                          "pero", "no", "sé", "qué", "pasa", "con", "mi",
                                          "hermano", "está", "trabajando", "mucho", "bueno", "entonces"};
  return w;
}

inline const std::vector<std::string>& english_words() {
  static const std::vector<std::string> w{"i", "want", "to", "go", "the", "beach", "tomorrow",
                                          "but", "not", "know", "what", "happens", "with",
                                          "my", "brother", "is", "working", "a", "lot", "so"};
  return w;
}

// Random labeled utterance: runs of es/en words, a proportional translation
// target, and duration len(source) / 2 seconds.
inline Utterance synthetic_utterance(Rng& rng, const std::string& id, std::size_t min_len = 4,
                                     std::size_t max_len = 30) {
  const std::size_t n = rng.between(min_len, max_len);
  TokenSeq source;
  Lang lang = rng.bernoulli(0.5) ? Lang::es : Lang::en;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(0.15)) lang = lang == Lang::es ? Lang::en : Lang::es;
    const auto& vocab = lang == Lang::es ? spanish_words() : english_words();
    source.push_back(Token{vocab[rng.below(vocab.size())], lang});
  }
  const std::size_t lo = n > 3 ? n - 3 : 1;
  const std::size_t m = rng.between(lo, n + 3);
  TokenSeq target;
  for (std::size_t i = 0; i < m; ++i) {
    target.push_back(Token{english_words()[rng.below(english_words().size())], std::nullopt});
  }
  TokenSeq transcript;
  for (const auto& t : source) transcript.push_back(Token{t.text, std::nullopt});
  std::map<Task, TokenSeq> targets{{Task::src, transcript}, {Task::en, target}};
  return make_utterance(id, std::move(source), static_cast<double>(n) / 2.0, std::move(targets));
}

inline Manifest synthetic_manifest(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  Manifest m;
  m.name = "synthetic";
  for (std::size_t i = 0; i < count; ++i) {
    m.utterances.push_back(synthetic_utterance(rng, "u" + std::to_string(i)));
  }
  return m;
}

}  // namespace cseval::testing
