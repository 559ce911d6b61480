#include <doctest.h>

#include "cseval/error.hpp"
#include "cseval/mock_translator.hpp"
#include "support.hpp"

using namespace cseval;

namespace {

Utterance fixed_utterance(std::size_t target_len) {
  TokenSeq target;
  for (std::size_t i = 0; i < target_len; ++i) target.push_back(Token{"w" + std::to_string(i), {}});
  return make_utterance("fixed", make_tokens({"a", "b"}), 4.0, {{Task::en, target}});
}

}  // namespace

TEST_CASE("clean mock emits the reference one token per step") {
  const auto u = fixed_utterance(5);
  MockConfig config;
  auto log = simulate_session(u, Task::en, config, kDefaultPolicy);
  REQUIRE(log.updates.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(log.updates[i].time_s == doctest::Approx((i + 1) / 2.5));
    CHECK(log.updates[i].tokens == TokenSeq(u.targets.at(Task::en).begin(),
                                            u.targets.at(Task::en).begin() + i + 1));
  }
  CHECK(log.source_end_s == 4.0);
}

TEST_CASE("noise without revisions is never repaired") {
  Rng rng(5);
  for (int round = 0; round < 50; ++round) {
    auto u = testing::synthetic_utterance(rng, "n" + std::to_string(round));
    MockConfig config{.noise_prob = 0.5, .seed = 9};
    auto k0 = simulate_session(u, Task::en, config, CommitPolicy(0));
    auto kinf = simulate_session(u, Task::en, config, CommitPolicy::unbounded());
    CHECK(k0 == kinf);
    const auto& out = k0.final_output();
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (!is_corrupted(out[j].text)) CHECK(out[j] == u.targets.at(Task::en)[j]);
    }
  }
}

TEST_CASE("mock logs obey the policy they were generated for") {
  Rng rng(6);
  MockConfig config{.revision_prob = 0.3, .revision_depth = 8, .noise_prob = 0.4, .seed = 2};
  for (int round = 0; round < 40; ++round) {
    auto u = testing::synthetic_utterance(rng, "p" + std::to_string(round));
    for (auto k : default_sweep()) {
      auto log = simulate_session(u, Task::en, config, k);
      CHECK_NOTHROW(replay(log, k, CommitMode::strict));
      CHECK(log.final_output().size() == u.targets.at(Task::en).size());
    }
  }
}

TEST_CASE("unbounded rewriting repairs more") {
  const auto m = testing::synthetic_manifest(60, 11);
  MockConfig config{.revision_prob = 0.5, .noise_prob = 0.3, .seed = 1};
  std::vector<CommitPolicy> ks{CommitPolicy(0), CommitPolicy::unbounded()};
  auto report = sweep_k(m, Task::en, config, ks);
  CHECK(report.rows[0].report.ne == 0.0);
  CHECK(*report.rows[1].report.ne > 0.0);
  CHECK(report.rows[1].report.bleu > report.rows[0].report.bleu);
}

TEST_CASE("mock is deterministic and independent of job count") {
  const auto m = testing::synthetic_manifest(30, 3);
  MockConfig config{.revision_prob = 0.2, .noise_prob = 0.3, .seed = 42};
  const auto ks = default_sweep();
  auto a = sweep_k(m, Task::en, config, ks, 1);
  CHECK(a == sweep_k(m, Task::en, config, ks, 4));
  config.seed = 43;
  CHECK_FALSE(a == sweep_k(m, Task::en, config, ks, 1));
  CHECK(a.rows.size() == 8);
  CHECK(a.task == "<en>");
}

TEST_CASE("mock errors") {
  auto u = fixed_utterance(3);
  CHECK_THROWS_AS(simulate_session(u, Task::de, {}, kDefaultPolicy), Error);
  auto no_duration = u;
  no_duration.duration_s.reset();
  CHECK_THROWS_AS(simulate_session(no_duration, Task::en, {}, kDefaultPolicy), Error);
  CHECK_THROWS_AS(simulate_session(fixed_utterance(0), Task::en, {}, kDefaultPolicy), Error);
  CHECK_THROWS_AS(simulate_session(u, Task::en, MockConfig{.emit_rate = 0}, kDefaultPolicy), Error);
  CHECK_THROWS_AS(simulate_session(u, Task::en, MockConfig{.noise_prob = 1.5}, kDefaultPolicy), Error);
  CHECK_THROWS_AS(sweep_k(Manifest{}, Task::en, {}, default_sweep()), Error);
}

TEST_CASE("corruption marker") {
  CHECK(is_corrupted(corrupt_token("casa")));
  CHECK_FALSE(is_corrupted("casa"));
  CHECK(corrupt_token("casa") != "casa");
}
