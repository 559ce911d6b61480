#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cseval/types.hpp"

namespace cseval {

// A named, versioned text normalization. Profiles are looked up by name so a
// score can always be reproduced from the profile recorded next to it.
struct NormalizationProfile {
  std::string name;
  bool lowercase = true;
  bool strip_punctuation = true;
};

// Throws Error(UnknownProfile). "default" is an alias for default-v1.
const NormalizationProfile& find_profile(std::string_view name);
std::vector<std::string> registered_profiles();

// Case folding and punctuation removal run per code point (ICU general
// categories P*), then the result is split on Unicode white space.
TokenSeq normalize(std::string_view text, std::string_view profile = kDefaultProfile);

// Normalizes a single raw token, which may split into several or vanish.
// The label is copied onto every piece.
void normalize_into(TokenSeq& out, std::string_view raw, const std::optional<Lang>& lang,
                    const NormalizationProfile& profile);

// Re-normalizes already tokenized text (join, then normalize).
TokenSeq renormalize(std::span<const Token> tokens, std::string_view profile);

}  // namespace cseval
