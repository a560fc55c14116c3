#include "arcrl/checkpoint.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "agent_test_util.h"

namespace arcrl {
namespace {

using testing::code_of;

TEST(CheckpointTest, AgentNames) {
  EXPECT_EQ(agent_kind_name(AgentKind::kHashQ), "hash-q");
  EXPECT_EQ(agent_kind_from_name("wm-planner"), AgentKind::kWmPlanner);
  EXPECT_FALSE(agent_kind_from_name("dqn"));
  EXPECT_EQ(valid_agent_names(), "hash-q, seq-policy, wm-planner");
}

TEST(CheckpointTest, TextRoundTrip) {
  AgentCheckpoint cp;
  cp.kind = AgentKind::kSeqPolicy;
  cp.config = {{"eta", 0.5}};
  cp.state = {{"x", {1, 2, 3}}};
  cp.meta = {1234, 99};
  const auto back = AgentCheckpoint::from_text(cp.to_text());
  EXPECT_EQ(back.kind, cp.kind);
  EXPECT_EQ(back.config, cp.config);
  EXPECT_EQ(back.state, cp.state);
  EXPECT_EQ(back.meta.env_steps, 1234u);
  EXPECT_EQ(back.meta.seed, 99u);
  EXPECT_EQ(back.to_text(), cp.to_text());
}

TEST(CheckpointTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "arcrl_checkpoint_test.json";
  AgentCheckpoint cp;
  cp.kind = AgentKind::kWmPlanner;
  cp.save_file(path.string());
  EXPECT_EQ(AgentCheckpoint::load_file(path.string()).to_text(), cp.to_text());
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { AgentCheckpoint::load_file(path.string()); }), ErrorCode::kIo);
}

TEST(CheckpointTest, RejectsNewerFormat) {
  auto doc = AgentCheckpoint{}.to_json();
  doc["format_version"] = kCheckpointFormatVersion + 1;
  EXPECT_EQ(code_of([&] { AgentCheckpoint::from_json(doc); }), ErrorCode::kCheckpointVersion);
}

TEST(CheckpointTest, RejectsMalformedDocuments) {
  EXPECT_EQ(code_of([] { AgentCheckpoint::from_text("{not json"); }),
            ErrorCode::kMalformedCheckpoint);
  EXPECT_EQ(code_of([] { AgentCheckpoint::from_text("[1,2]"); }),
            ErrorCode::kMalformedCheckpoint);
  auto doc = AgentCheckpoint{}.to_json();
  doc["agent_kind"] = "dqn";
  EXPECT_EQ(code_of([&] { AgentCheckpoint::from_json(doc); }), ErrorCode::kMalformedCheckpoint);
  doc = AgentCheckpoint{}.to_json();
  doc.erase("state");
  EXPECT_EQ(code_of([&] { AgentCheckpoint::from_json(doc); }), ErrorCode::kMalformedCheckpoint);
}

TEST(CheckpointTest, StateMismatchIsMalformed) {
  auto cp = make_agent(AgentKind::kSeqPolicy, AgentConfig{})->save();
  cp.state["logits"] = "oops";
  EXPECT_EQ(code_of([&] { agent_from_checkpoint(cp); }), ErrorCode::kMalformedCheckpoint);
}

TEST(CheckpointTest, KindMismatchOnLoad) {
  auto agent = make_agent(AgentKind::kHashQ, AgentConfig{});
  const auto cp = make_agent(AgentKind::kWmPlanner, AgentConfig{})->save();
  EXPECT_EQ(code_of([&] { agent->load(cp); }), ErrorCode::kCheckpointKindMismatch);
}

TEST(CheckpointTest, FactoryRestoresKindConfigAndSteps) {
  AgentConfig cfg;
  cfg.seed = 17;
  cfg.max_rule_length = 3;
  for (AgentKind kind : {AgentKind::kHashQ, AgentKind::kSeqPolicy, AgentKind::kWmPlanner}) {
    const auto cp = make_agent(kind, cfg)->save();
    const auto agent = agent_from_checkpoint(AgentCheckpoint::from_text(cp.to_text()));
    EXPECT_EQ(agent->kind(), kind);
    EXPECT_EQ(agent->config().seed, 17u);
    EXPECT_EQ(agent->config().max_rule_length, 3);
  }
  EXPECT_EQ(code_of([&] { make_agent("dqn", cfg); }), ErrorCode::kUnknownAgent);
}

}  // namespace
}  // namespace arcrl
