#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace cseval {

// Token-level language label. Tokens without a label carry std::nullopt.
enum class Lang { en, es, de, other };

std::optional<Lang> parse_lang(std::string_view label);
std::string_view to_string(Lang lang);

// Output-task tag: <src> requests a transcript, the others a translation.
enum class Task { src, en, es, de };

std::optional<Task> parse_task(std::string_view tag);
std::string_view to_string(Task task);

struct Token {
  std::string text;
  std::optional<Lang> lang;

  bool operator==(const Token&) const = default;
};

using TokenSeq = std::vector<Token>;

TokenSeq make_tokens(std::initializer_list<std::string_view> texts);
std::vector<std::string> texts_of(std::span<const Token> tokens);
std::string join_texts(std::span<const Token> tokens);

// True iff two adjacent tokens are labeled en/es with different labels.
// Unlabeled and other/de tokens never create a switch.
bool has_code_switch(std::span<const Token> source);

struct Utterance {
  std::string id;
  TokenSeq source;
  std::optional<double> duration_s;
  std::map<Task, TokenSeq> targets;
  bool is_cs = false;
  nlohmann::json metadata;  // free-form, preserved verbatim

  bool operator==(const Utterance&) const = default;
};

// Builds an utterance with is_cs derived from the source labels.
Utterance make_utterance(std::string id, TokenSeq source,
                         std::optional<double> duration_s,
                         std::map<Task, TokenSeq> targets);

inline constexpr std::string_view kDefaultProfile = "default-v1";

struct Manifest {
  std::string name;
  std::string normalization_profile{kDefaultProfile};
  std::vector<Utterance> utterances;

  bool operator==(const Manifest&) const = default;

  const Utterance* find(std::string_view id) const;
};

struct HypothesisUpdate {
  double time_s = 0.0;
  TokenSeq tokens;

  bool operator==(const HypothesisUpdate&) const = default;
};

struct SessionLog {
  std::string utterance_id;
  Task task = Task::src;
  std::vector<HypothesisUpdate> updates;
  std::optional<double> source_end_s;

  bool operator==(const SessionLog&) const = default;

  const TokenSeq& final_output() const;
};

}  // namespace cseval
