#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>

#include <nlohmann/json.hpp>

#include "arcrl/checkpoint.h"
#include "arcrl/env.h"
#include "arcrl/task.h"

namespace arcrl {

enum class Mode { kExplore, kGreedy };

struct Transition {
  const Observation& observation;
  Action action;
  double reward;
  const Observation& next_observation;
  Outcome outcome;
};

// Hyperparameters for all three agents; each reads the fields it uses.
struct AgentConfig {
  std::uint64_t seed = 0;
  // hash-q
  double alpha = 0.1;
  double gamma = 0.99;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  // 0 means "half of the training budget given to begin_training".
  std::uint64_t epsilon_decay_steps = 0;
  // seq-policy
  double eta = 0.05;
  // wm-planner
  int max_rule_length = 4;
  std::size_t max_samples_per_action = 1024;

  nlohmann::json to_json() const;
  static AgentConfig from_json(const nlohmann::json& doc);
};

/// Lifecycle shared by every agent:
///   begin_training? -> (begin_episode -> (select_action -> observe_transition)* -> end_episode)*
/// Greedy select_action never changes learned state and is deterministic
/// given it. observe_transition is the only learning entry point.
class Agent {
 public:
  explicit Agent(const AgentConfig& config) : config_(config) {}
  virtual ~Agent() = default;

  virtual AgentKind kind() const = 0;
  virtual std::unique_ptr<Agent> clone() const = 0;

  // Tells the agent the size of the upcoming training phase so schedules
  // (epsilon decay) can be laid out over it.
  void begin_training(std::uint64_t budget);
  void begin_episode(const Observation& observation, const DemoView& demos);
  Action select_action(const Observation& observation, Mode mode);
  void observe_transition(const Transition& transition);
  void end_episode();

  // Copy of the learned state with no episode in progress. Evaluation runs
  // on snapshots so it can never touch the training agent.
  std::unique_ptr<Agent> snapshot() const;

  AgentCheckpoint save() const;
  // Throws CheckpointKindMismatch if the checkpoint is for another agent.
  void load(const AgentCheckpoint& checkpoint);

  bool in_episode() const noexcept { return in_episode_; }
  std::uint64_t env_steps() const noexcept { return env_steps_; }
  const AgentConfig& config() const noexcept { return config_; }

 protected:
  virtual void on_begin_training(std::uint64_t /*budget*/) {}
  virtual void on_begin_episode(const Observation& observation, const DemoView& demos) = 0;
  virtual Action on_select_action(const Observation& observation, Mode mode) = 0;
  virtual void on_observe_transition(const Transition& transition) = 0;
  virtual void on_end_episode() {}
  // Drops per-episode buffers without learning from them.
  virtual void on_discard_episode() {}
  virtual nlohmann::json save_state() const = 0;
  virtual void load_state(const nlohmann::json& state) = 0;

  AgentConfig config_;

 private:
  bool in_episode_ = false;
  std::uint64_t env_steps_ = 0;
};

std::unique_ptr<Agent> make_agent(AgentKind kind, const AgentConfig& config);
// Throws UnknownAgent naming the valid agents.
std::unique_ptr<Agent> make_agent(std::string_view name, const AgentConfig& config);
std::unique_ptr<Agent> agent_from_checkpoint(const AgentCheckpoint& checkpoint);

}  // namespace arcrl
