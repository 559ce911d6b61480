#pragma once

#include <cstddef>
#include <cstdint>

#include "cseval/random.hpp"
#include "cseval/types.hpp"

namespace cseval {

struct PrefixSampleConfig {
  double fraction = 0.5;
  std::uint64_t seed = 0;
  std::size_t min_tokens = 1;
};

// Target length kept when the source is cut to `cut` of `source_len` tokens:
// max(min_tokens, round(target_len * cut / source_len)), capped at target_len.
// Halves round up.
std::size_t proportional_cut(std::size_t target_len, std::size_t cut, std::size_t source_len,
                             std::size_t min_tokens = 1);

// Truncates source and every target; the id gets a "#p<cut>" suffix and the
// duration is scaled by cut / len(source).
// Throws Error(EmptyInput) for an empty source or target, Error(InvalidArgument)
// for a cut outside [1, len(source)].
Utterance prefix_at(const Utterance& utterance, std::size_t cut, std::size_t min_tokens = 1);

// Draws the cut uniformly from [min_tokens, len(source)].
Utterance sample_prefix(const Utterance& utterance, Rng& rng, std::size_t min_tokens = 1);

// Replaces round(fraction * N) utterances, chosen by a seeded shuffle, with
// prefix variants. Order is preserved.
Manifest prefix_sample_corpus(const Manifest& manifest, const PrefixSampleConfig& config);

// [task tag] ++ target tokens. Throws Error(MissingTask).
TokenSeq tag_target(const Utterance& utterance, Task task);
// Same, for a tag given as text; unrecognized tags are missing tasks too.
TokenSeq tag_target(const Utterance& utterance, std::string_view tag);

}  // namespace cseval
