#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cseval/types.hpp"

namespace cseval {

// Gap indices b: a boundary sits between token b and token b + 1 (0-based).
struct CsBoundarySet {
  std::vector<std::size_t> boundaries;

  bool empty() const { return boundaries.empty(); }
  bool operator==(const CsBoundarySet&) const = default;
};

// Word distance of each token to its nearest code-switch point; tokens right
// before or after a boundary are at distance 1. Empty when there is no
// boundary.
struct DistanceProfile {
  std::vector<std::size_t> distances;

  bool operator==(const DistanceProfile&) const = default;
};

inline constexpr std::size_t kDefaultMaxDistance = 10;

// right(d) / wrong(d) counts of reference words, by distance to a switch.
// Distances beyond max_distance are counted in the last bucket.
struct RecallCurve {
  std::size_t max_distance = kDefaultMaxDistance;
  std::vector<std::size_t> right;  // index d - 1
  std::vector<std::size_t> wrong;

  explicit RecallCurve(std::size_t d_max = kDefaultMaxDistance)
      : max_distance(d_max), right(d_max, 0), wrong(d_max, 0) {}

  // R(d) = right / (right + wrong); nullopt where the bucket is empty.
  std::optional<double> recall(std::size_t d) const;
  std::size_t total() const;

  bool operator==(const RecallCurve&) const = default;
};

CsBoundarySet find_cs_points(std::span<const Token> source);

DistanceProfile token_distances(std::span<const Token> source, const CsBoundarySet& boundaries);

// A reference word counts as right when an unconsumed hypothesis token has
// the same text; hypothesis tokens are consumed left to right, once each.
// References without a switch are skipped.
// Throws Error(LengthMismatch) or Error(InvalidArgument) for max_distance 0.
RecallCurve recall_at_distance(std::span<const TokenSeq> references,
                               std::span<const TokenSeq> hypotheses,
                               std::size_t max_distance = kDefaultMaxDistance);

struct CurveDelta {
  std::size_t d = 0;
  std::size_t a_right = 0, a_wrong = 0;
  std::size_t b_right = 0, b_wrong = 0;
  std::optional<double> a_recall, b_recall;
  std::optional<double> delta;  // a.R(d) - b.R(d); nullopt unless both are populated

  bool operator==(const CurveDelta&) const = default;
};

// Throws Error(DMaxMismatch).
std::vector<CurveDelta> compare_curves(const RecallCurve& a, const RecallCurve& b);

}  // namespace cseval
