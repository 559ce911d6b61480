#include <doctest.h>

#include "cseval/error.hpp"
#include "cseval/metrics.hpp"
#include "cseval/normalize.hpp"
#include "cseval/random.hpp"
#include "oracles.hpp"

using namespace cseval;

namespace {

std::vector<TokenSeq> corpus(std::initializer_list<const char*> lines) {
  std::vector<TokenSeq> out;
  for (const char* l : lines) out.push_back(normalize(l, "whitespace-v1"));
  return out;
}

// Corpus scores computed with sacreBLEU 2.x, corpus_bleu(tokenize="none",
// smooth_method="exp").
constexpr double kMiniSuiteBleu = 48.27928658671448;
constexpr double kSmoothedBleu = 59.460355750136046;
constexpr double kClippedBleu = 31.947155212313625;

}  // namespace

TEST_CASE("BLEU identity and empty hypotheses") {
  auto refs = corpus({"the cat sat on the mat", "yo quiero ir", "a"});
  CHECK(corpus_bleu(refs, refs) == 100.0);
  std::vector<TokenSeq> empty(3);
  CHECK(corpus_bleu(empty, refs) == 0.0);
}

TEST_CASE("BLEU matches frozen sacreBLEU fixtures") {
  auto hyps = corpus({"the cat sat on the mat", "yo quiero ir a la playa mañana",
                      "he is going home now", "das ist gut", "ok"});
  auto refs = corpus({"the cat sat on the mat", "yo quiero ir mañana a la playa",
                      "he goes home right now", "das ist sehr gut", "okay then"});
  CHECK(std::abs(corpus_bleu(hyps, refs) - kMiniSuiteBleu) < 0.01);

  // zero 4-gram matches, smoothed
  auto d = corpus_bleu_detail(corpus({"uno dos tres cuatro"}), corpus({"uno dos tres cinco"}));
  CHECK(std::abs(d.score - kSmoothedBleu) < 0.01);
  CHECK(d.precisions[3] == doctest::Approx(50.0));

  // clipped counts and no brevity penalty for long output
  CHECK(std::abs(corpus_bleu(corpus({"a a a a"}), corpus({"a a"})) - kClippedBleu) < 0.01);

  // no 4-grams at all: score is 0
  CHECK(corpus_bleu(corpus({"a b", "c d e", "x y"}), corpus({"a b c", "c d f", "x z"})) ==
        doctest::Approx(0.0));
}

TEST_CASE("BLEU is invariant to corpus order") {
  auto hyps = corpus({"the cat sat", "das ist gut", "ok then", "yo quiero ir"});
  auto refs = corpus({"the cat sat down", "das ist sehr gut", "okay then", "yo quiero ir a"});
  const double forward = corpus_bleu(hyps, refs);
  std::reverse(hyps.begin(), hyps.end());
  std::reverse(refs.begin(), refs.end());
  CHECK(corpus_bleu(hyps, refs) == doctest::Approx(forward));
}

TEST_CASE("BLEU errors") {
  CHECK_THROWS_AS(corpus_bleu(corpus({"a"}), corpus({"a", "b"})), Error);
  CHECK_THROWS_AS(corpus_bleu({}, {}), Error);
}

TEST_CASE("WER examples") {
  CHECK(wer(make_tokens({"a", "b"}), make_tokens({"a", "b"})) == 0.0);
  CHECK(wer(make_tokens({"the", "cat", "sat"}), make_tokens({"the", "cat", "sat", "down"})) == 0.25);
  CHECK(wer(make_tokens({"b", "c"}), make_tokens({"a"})) == 2.0);
  CHECK_THROWS_AS(wer(make_tokens({"a"}), {}), Error);
  std::vector<TokenSeq> empty_refs(2);
  CHECK_THROWS_AS(corpus_wer(empty_refs, empty_refs), Error);
  CHECK(corpus_wer(std::vector<TokenSeq>{make_tokens({"a"}), {}},
                   std::vector<TokenSeq>{make_tokens({"a", "b"}), make_tokens({"c", "d"})}) == 0.75);
}

TEST_CASE("WER equals the recursive oracle on random pairs") {
  Rng rng(99);
  for (int i = 0; i < 400; ++i) {
    TokenSeq a, b;
    const char* words[] = {"x", "y", "z"};
    for (std::uint64_t n = rng.below(11); n > 0; --n) a.push_back(Token{words[rng.below(3)], {}});
    for (std::uint64_t n = rng.between(1, 10); n > 0; --n) b.push_back(Token{words[rng.below(3)], {}});
    CHECK(edit_distance(a, b) == oracle::edit_distance(a, b));
  }
}

TEST_CASE("erasure examples") {
  CHECK(erasure(make_tokens({"a", "b", "c"}), make_tokens({"a", "b", "c", "d"})) == 0);
  CHECK(erasure(make_tokens({"a", "b", "c"}), make_tokens({"a", "x", "y"})) == 2);
  CHECK(erasure(make_tokens({"a", "b"}), make_tokens({"a", "b"})) == 0);
  CHECK(erasure(make_tokens({"a", "b"}), {}) == 2);
}

TEST_CASE("normalized erasure") {
  std::vector<HistoryEntry> h{{1, make_tokens({"the"})},
                              {2, make_tokens({"the", "cat"})},
                              {3, make_tokens({"a", "cat"})},
                              {4, make_tokens({"a", "cat", "sat"})}};
  CHECK(normalized_erasure(h) == doctest::Approx(2.0 / 3.0));
  std::vector<HistoryEntry> mono{{1, make_tokens({"a"})}, {2, make_tokens({"a", "b"})}};
  CHECK(normalized_erasure(mono) == 0.0);
  std::vector<HistoryEntry> empty_final{{1, make_tokens({"a"})}, {2, {}}};
  CHECK_THROWS_AS(normalized_erasure(empty_final), Error);
}

TEST_CASE("average lag examples") {
  FinalizedSession s{make_tokens({"a", "b"}), {0.0, 1.0}, 2.0};
  CHECK(average_lag(s) == 0.0);
  s.finalized_at = {2.0, 2.0};
  CHECK(average_lag(s) == 2.0);
  // ideal schedule f(j) = (j-1) T / J
  FinalizedSession ideal{make_tokens({"a", "b", "c", "d"}), {0.0, 0.5, 1.0, 1.5}, 2.0};
  CHECK(average_lag(ideal) == 0.0);
  // finalizing ahead of the schedule gives a negative lag
  FinalizedSession early{make_tokens({"a", "b"}), {0.0, 0.0}, 4.0};
  CHECK(average_lag(early) == -1.0);
}

TEST_CASE("average lag errors") {
  CHECK_THROWS_AS(average_lag(FinalizedSession{make_tokens({"a"}), {1.0}, 0.0}), Error);
  CHECK_THROWS_AS(average_lag(FinalizedSession{{}, {}, 1.0}), Error);
}

TEST_CASE("average lag agrees with the straight-line oracle") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    FinalizedSession s;
    const auto n = rng.between(1, 20);
    double t = rng.unit();
    for (std::uint64_t j = 0; j < n; ++j) {
      s.final_output.push_back(Token{"w", {}});
      t += rng.unit();
      s.finalized_at.push_back(t);
    }
    s.source_end_s = 0.1 + rng.unit() * t * 1.5;
    CHECK(average_lag(s) == oracle::average_lag(s.finalized_at, s.source_end_s));
  }
}

TEST_CASE("aggregate") {
  std::vector<SessionOutcome> outcomes(2);
  outcomes[0].history = {{1, make_tokens({"a"})}, {2, make_tokens({"b", "c"})}};
  outcomes[0].finalized = FinalizedSession{make_tokens({"b", "c"}), {2, 2}, 2.0};
  outcomes[0].reference = make_tokens({"b", "c"});
  outcomes[1].history = {{1, make_tokens({"x", "y"})}};
  outcomes[1].finalized = FinalizedSession{make_tokens({"x", "y"}), {1, 1}, 4.0};
  outcomes[1].reference = make_tokens({"x", "z"});
  auto r = aggregate(outcomes);
  CHECK(r.n_sessions == 2);
  CHECK(r.n_ref_tokens == 4);
  CHECK(r.wer == 0.25);
  REQUIRE(r.ne);
  CHECK(*r.ne == 0.25);  // one erased token over four final tokens
  REQUIRE(r.al_s);
  CHECK(*r.al_s == doctest::Approx((2.0 + 0.0) / 2.0));

  outcomes[1].finalized.source_end_s = 0.0;
  CHECK_FALSE(aggregate(outcomes).al_s.has_value());
}
