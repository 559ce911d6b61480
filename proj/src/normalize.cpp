#include "cseval/normalize.hpp"

#include <array>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "cseval/error.hpp"

namespace cseval {

namespace {

const std::array<NormalizationProfile, 3>& profiles() {
  static const std::array<NormalizationProfile, 3> kProfiles{{
      {"default-v1", true, true},
      {"lowercase-v1", true, false},
      {"whitespace-v1", false, false},
  }};
  return kProfiles;
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool err = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, c, err);
  (void)err;
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

const NormalizationProfile& find_profile(std::string_view name) {
  if (name == "default") name = kDefaultProfile;
  for (const auto& p : profiles()) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::UnknownProfile,
              "unknown normalization profile '" + std::string(name) + "'");
}

std::vector<std::string> registered_profiles() {
  std::vector<std::string> out;
  for (const auto& p : profiles()) out.push_back(p.name);
  return out;
}

void normalize_into(TokenSeq& out, std::string_view raw, const std::optional<Lang>& lang,
                    const NormalizationProfile& profile) {
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.push_back(Token{std::move(current), lang});
      current.clear();
    }
  };

  const auto* s = reinterpret_cast<const uint8_t*>(raw.data());
  const auto length = static_cast<int32_t>(raw.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw Error(ErrorCode::MalformedRecord, "invalid UTF-8 in text");
    }
    if (u_isUWhiteSpace(c)) {
      flush();
      continue;
    }
    if (profile.strip_punctuation && (U_GET_GC_MASK(c) & U_GC_P_MASK) != 0) continue;
    if (profile.lowercase) c = u_tolower(c);
    append_utf8(current, c);
  }
  flush();
}

TokenSeq normalize(std::string_view text, std::string_view profile) {
  const auto& p = find_profile(profile);
  TokenSeq out;
  normalize_into(out, text, std::nullopt, p);
  return out;
}

TokenSeq renormalize(std::span<const Token> tokens, std::string_view profile) {
  const auto& p = find_profile(profile);
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) normalize_into(out, t.text, t.lang, p);
  return out;
}

}  // namespace cseval
