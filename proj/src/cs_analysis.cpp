#include "cseval/cs_analysis.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

#include "cseval/error.hpp"

namespace cseval {

std::optional<double> RecallCurve::recall(std::size_t d) const {
  if (d == 0 || d > max_distance) return std::nullopt;
  const auto n = right[d - 1] + wrong[d - 1];
  if (n == 0) return std::nullopt;
  return static_cast<double>(right[d - 1]) / static_cast<double>(n);
}

std::size_t RecallCurve::total() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < max_distance; ++i) n += right[i] + wrong[i];
  return n;
}

CsBoundarySet find_cs_points(std::span<const Token> source) {
  CsBoundarySet out;
  auto switchable = [](const std::optional<Lang>& l) {
    return l && (*l == Lang::en || *l == Lang::es);
  };
  for (std::size_t b = 0; b + 1 < source.size(); ++b) {
    const auto& left = source[b].lang;
    const auto& right = source[b + 1].lang;
    if (switchable(left) && switchable(right) && *left != *right) out.boundaries.push_back(b);
  }
  return out;
}

DistanceProfile token_distances(std::span<const Token> source, const CsBoundarySet& boundaries) {
  DistanceProfile out;
  if (boundaries.empty()) return out;
  out.distances.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t b : boundaries.boundaries) {
      best = std::min(best, i <= b ? b - i + 1 : i - b);
    }
    out.distances.push_back(best);
  }
  return out;
}

RecallCurve recall_at_distance(std::span<const TokenSeq> references,
                               std::span<const TokenSeq> hypotheses, std::size_t max_distance) {
  if (references.size() != hypotheses.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "LengthMismatch: " + std::to_string(hypotheses.size()) + " hypotheses vs " +
                    std::to_string(references.size()) + " references");
  }
  if (max_distance == 0) throw Error(ErrorCode::InvalidArgument, "max distance must be >= 1");

  RecallCurve curve(max_distance);
  for (std::size_t s = 0; s < references.size(); ++s) {
    const auto& ref = references[s];
    const auto profile = token_distances(ref, find_cs_points(ref));
    if (profile.distances.empty()) continue;

    std::unordered_map<std::string, std::size_t> available;
    for (const auto& t : hypotheses[s]) ++available[t.text];

    for (std::size_t i = 0; i < ref.size(); ++i) {
      const auto bucket = std::min(profile.distances[i], max_distance) - 1;
      auto it = available.find(ref[i].text);
      if (it != available.end() && it->second > 0) {
        --it->second;
        ++curve.right[bucket];
      } else {
        ++curve.wrong[bucket];
      }
    }
  }
  return curve;
}

std::vector<CurveDelta> compare_curves(const RecallCurve& a, const RecallCurve& b) {
  if (a.max_distance != b.max_distance) {
    throw Error(ErrorCode::DMaxMismatch, "curves have different max distances (" +
                                             std::to_string(a.max_distance) + " vs " +
                                             std::to_string(b.max_distance) + ")");
  }
  std::vector<CurveDelta> out;
  out.reserve(a.max_distance);
  for (std::size_t d = 1; d <= a.max_distance; ++d) {
    CurveDelta row;
    row.d = d;
    row.a_right = a.right[d - 1];
    row.a_wrong = a.wrong[d - 1];
    row.b_right = b.right[d - 1];
    row.b_wrong = b.wrong[d - 1];
    row.a_recall = a.recall(d);
    row.b_recall = b.recall(d);
    if (row.a_recall && row.b_recall) row.delta = *row.a_recall - *row.b_recall;
    out.push_back(row);
  }
  return out;
}

}  // namespace cseval
