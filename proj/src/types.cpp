#include "cseval/types.hpp"

#include <algorithm>

#include "cseval/error.hpp"

namespace cseval {

std::optional<Lang> parse_lang(std::string_view label) {
  if (label == "en") return Lang::en;
  if (label == "es") return Lang::es;
  if (label == "de") return Lang::de;
  if (label == "other" || label == "unknown") return Lang::other;
  return std::nullopt;
}

std::string_view to_string(Lang lang) {
  switch (lang) {
    case Lang::en: return "en";
    case Lang::es: return "es";
    case Lang::de: return "de";
    case Lang::other: return "other";
  }
  return "other";
}

std::optional<Task> parse_task(std::string_view tag) {
  if (tag == "<src>") return Task::src;
  if (tag == "<en>") return Task::en;
  if (tag == "<es>") return Task::es;
  if (tag == "<de>") return Task::de;
  return std::nullopt;
}

std::string_view to_string(Task task) {
  switch (task) {
    case Task::src: return "<src>";
    case Task::en: return "<en>";
    case Task::es: return "<es>";
    case Task::de: return "<de>";
  }
  return "<src>";
}

TokenSeq make_tokens(std::initializer_list<std::string_view> texts) {
  TokenSeq out;
  out.reserve(texts.size());
  for (auto t : texts) out.push_back(Token{std::string(t), std::nullopt});
  return out;
}

std::vector<std::string> texts_of(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

std::string join_texts(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i].text;
  }
  return out;
}

namespace {
bool switch_label(const std::optional<Lang>& l) {
  return l && (*l == Lang::en || *l == Lang::es);
}
}  // namespace

bool has_code_switch(std::span<const Token> source) {
  for (std::size_t i = 1; i < source.size(); ++i) {
    const auto& a = source[i - 1].lang;
    const auto& b = source[i].lang;
    if (switch_label(a) && switch_label(b) && *a != *b) return true;
  }
  return false;
}

Utterance make_utterance(std::string id, TokenSeq source,
                         std::optional<double> duration_s,
                         std::map<Task, TokenSeq> targets) {
  Utterance u;
  u.id = std::move(id);
  u.source = std::move(source);
  u.duration_s = duration_s;
  u.targets = std::move(targets);
  u.is_cs = has_code_switch(u.source);
  return u;
}

const Utterance* Manifest::find(std::string_view id) const {
  auto it = std::find_if(utterances.begin(), utterances.end(),
                         [&](const Utterance& u) { return u.id == id; });
  return it == utterances.end() ? nullptr : &*it;
}

const TokenSeq& SessionLog::final_output() const {
  if (updates.empty()) {
    throw Error(ErrorCode::EmptySession,
                "session '" + utterance_id + "' has no updates");
  }
  return updates.back().tokens;
}

}  // namespace cseval
