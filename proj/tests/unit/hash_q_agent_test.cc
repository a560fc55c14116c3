#include "arcrl/hash_q_agent.h"

#include <gtest/gtest.h>

#include "agent_test_util.h"
#include "arcrl/harness.h"

namespace arcrl {
namespace {

using testing::code_of;

TEST(HashQAgentTest, TerminalUpdateArithmetic) {
  AgentConfig cfg;
  cfg.alpha = 0.1;
  HashQAgent agent(cfg);
  agent.update(7, Action::kSubmit, 1000.0, 8, /*terminal=*/true);
  EXPECT_DOUBLE_EQ(agent.q(7, Action::kSubmit), 100.0);
}

TEST(HashQAgentTest, BootstrapUsesMaxOfNextRow) {
  AgentConfig cfg;
  cfg.alpha = 0.5;
  cfg.gamma = 0.9;
  HashQAgent agent(cfg);
  agent.update(2, Action::kFlipV, 10.0, 2, true);    // Q(2,FlipV) = 5
  agent.update(1, Action::kRotate90, 1.0, 2, false);  // 0.5 * (1 + 0.9 * 5) = 2.75
  EXPECT_DOUBLE_EQ(agent.q(1, Action::kRotate90), 2.75);
  EXPECT_DOUBLE_EQ(agent.q(99, Action::kFlipH), 0.0);
}

TEST(HashQAgentTest, GreedyTieBreakIsLowestOrdinal) {
  EXPECT_EQ(HashQAgent::greedy(QRow{}), Action::kRotate90);
  EXPECT_EQ(HashQAgent::greedy(QRow{0, 3, 3, 1, 0}), Action::kRotate270);

  HashQAgent agent{AgentConfig{}};
  const Observation obs{Grid{{1, 2}, {3, 4}}};
  agent.begin_episode(obs, {});
  EXPECT_EQ(agent.select_action(obs, Mode::kGreedy), Action::kRotate90);
  EXPECT_EQ(agent.select_action(obs, Mode::kGreedy), Action::kRotate90);
}

TEST(HashQAgentTest, EpsilonDecaysLinearlyOverHalfTheBudget) {
  HashQAgent agent{AgentConfig{}};
  agent.begin_training(1000);
  EXPECT_DOUBLE_EQ(agent.epsilon(), 1.0);
  const Observation obs{Grid{{1}}};
  agent.begin_episode(obs, {});
  for (int i = 0; i < 250; ++i) agent.select_action(obs, Mode::kExplore);
  EXPECT_NEAR(agent.epsilon(), 0.525, 1e-12);
  for (int i = 0; i < 400; ++i) agent.select_action(obs, Mode::kExplore);
  EXPECT_DOUBLE_EQ(agent.epsilon(), 0.05);
}

TEST(HashQAgentTest, TableIsAPureFunctionOfTheTransitionStream) {
  auto feed = [](HashQAgent& agent) {
    std::mt19937_64 gen(1);
    for (int i = 0; i < 500; ++i) {
      const std::uint64_t s = gen() % 50, next = gen() % 50;
      const Action act = static_cast<Action>(gen() % 5);
      const double r = static_cast<double>(gen() % 3);
      agent.update(s, act, r, next, gen() % 7 == 0);
    }
  };
  HashQAgent a{AgentConfig{}}, b{AgentConfig{}};
  feed(a);
  feed(b);
  EXPECT_EQ(a.save().to_text(), b.save().to_text());
  EXPECT_GT(a.table_size(), 0u);
}

TEST(HashQAgentTest, SeededTrainingIsReproducible) {
  const auto task = make_builtin_task("flip-d-3x3", 20, 20, 5);
  AgentConfig cfg;
  cfg.seed = 3;
  HashQAgent a(cfg), b(cfg);
  RunOptions opts;
  opts.budget = 3000;
  opts.eval_every = 1000;
  opts.eval_count = 20;
  EXPECT_EQ(run_single_task(a, task, opts), run_single_task(b, task, opts));
  EXPECT_EQ(a.save().to_text(), b.save().to_text());
}

TEST(HashQAgentTest, CheckpointRoundTripKeepsGreedyBehaviour) {
  const auto task = make_builtin_task("rotate-ccw-3x3", 30, 30, 2);
  HashQAgent agent{AgentConfig{}};
  RunOptions opts;
  opts.budget = 5000;
  opts.eval_every = 5000;
  opts.eval_count = 30;
  run_single_task(agent, task, opts);

  auto probes = testing::probe_observations(40, 9);
  for (const auto& d : task.demos) probes.push_back(Observation{d.input});
  const auto before = testing::greedy_actions(agent, task, probes);

  const auto restored = agent_from_checkpoint(AgentCheckpoint::from_text(agent.save().to_text()));
  EXPECT_EQ(testing::greedy_actions(*restored, task, probes), before);
  EXPECT_EQ(restored->save().to_text(), agent.save().to_text());
}

TEST(HashQAgentTest, LoadRejectsOtherKinds) {
  HashQAgent agent{AgentConfig{}};
  auto other = make_agent(AgentKind::kSeqPolicy, AgentConfig{});
  EXPECT_EQ(code_of([&] { agent.load(other->save()); }), ErrorCode::kCheckpointKindMismatch);
}

TEST(HashQAgentTest, LifecycleViolations) {
  HashQAgent agent{AgentConfig{}};
  const Observation obs{Grid{{1}}};
  EXPECT_EQ(code_of([&] { agent.select_action(obs, Mode::kGreedy); }),
            ErrorCode::kLifecycleViolation);
  EXPECT_EQ(code_of([&] { agent.end_episode(); }), ErrorCode::kLifecycleViolation);
  agent.begin_episode(obs, {});
  EXPECT_EQ(code_of([&] { agent.begin_episode(obs, {}); }), ErrorCode::kLifecycleViolation);
  EXPECT_EQ(code_of([&] { agent.load(agent.save()); }), ErrorCode::kLifecycleViolation);
}

}  // namespace
}  // namespace arcrl
