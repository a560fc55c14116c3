#include "arcrl/agent.h"

#include <string>

#include "arcrl/error.h"
#include "arcrl/hash_q_agent.h"
#include "arcrl/seq_policy_agent.h"
#include "arcrl/wm_planner_agent.h"

namespace arcrl {

nlohmann::json AgentConfig::to_json() const {
  return {
      {"seed", seed},
      {"alpha", alpha},
      {"gamma", gamma},
      {"epsilon_start", epsilon_start},
      {"epsilon_end", epsilon_end},
      {"epsilon_decay_steps", epsilon_decay_steps},
      {"eta", eta},
      {"max_rule_length", max_rule_length},
      {"max_samples_per_action", max_samples_per_action},
  };
}

AgentConfig AgentConfig::from_json(const nlohmann::json& doc) {
  AgentConfig c;
  c.seed = doc.value("seed", c.seed);
  c.alpha = doc.value("alpha", c.alpha);
  c.gamma = doc.value("gamma", c.gamma);
  c.epsilon_start = doc.value("epsilon_start", c.epsilon_start);
  c.epsilon_end = doc.value("epsilon_end", c.epsilon_end);
  c.epsilon_decay_steps = doc.value("epsilon_decay_steps", c.epsilon_decay_steps);
  c.eta = doc.value("eta", c.eta);
  c.max_rule_length = doc.value("max_rule_length", c.max_rule_length);
  c.max_samples_per_action = doc.value("max_samples_per_action", c.max_samples_per_action);
  return c;
}

void Agent::begin_training(std::uint64_t budget) {
  if (in_episode_) {
    throw Error(ErrorCode::kLifecycleViolation, "begin_training inside an episode");
  }
  on_begin_training(budget);
}

void Agent::begin_episode(const Observation& observation, const DemoView& demos) {
  if (in_episode_) throw Error(ErrorCode::kLifecycleViolation, "episode already in progress");
  in_episode_ = true;
  on_begin_episode(observation, demos);
}

Action Agent::select_action(const Observation& observation, Mode mode) {
  if (!in_episode_) throw Error(ErrorCode::kLifecycleViolation, "select_action outside an episode");
  return on_select_action(observation, mode);
}

void Agent::observe_transition(const Transition& transition) {
  if (!in_episode_) {
    throw Error(ErrorCode::kLifecycleViolation, "observe_transition outside an episode");
  }
  ++env_steps_;
  on_observe_transition(transition);
}

void Agent::end_episode() {
  if (!in_episode_) throw Error(ErrorCode::kLifecycleViolation, "end_episode without an episode");
  on_end_episode();
  in_episode_ = false;
}

std::unique_ptr<Agent> Agent::snapshot() const {
  auto copy = clone();
  if (copy->in_episode_) {
    copy->on_discard_episode();
    copy->in_episode_ = false;
  }
  return copy;
}

AgentCheckpoint Agent::save() const {
  AgentCheckpoint cp;
  cp.kind = kind();
  cp.config = config_.to_json();
  cp.state = save_state();
  cp.meta.env_steps = env_steps_;
  cp.meta.seed = config_.seed;
  return cp;
}

void Agent::load(const AgentCheckpoint& checkpoint) {
  if (checkpoint.kind != kind()) {
    throw Error(ErrorCode::kCheckpointKindMismatch,
                "checkpoint is for '" + std::string(agent_kind_name(checkpoint.kind)) +
                    "', agent is '" + std::string(agent_kind_name(kind())) + "'");
  }
  if (in_episode_) throw Error(ErrorCode::kLifecycleViolation, "load inside an episode");
  config_ = AgentConfig::from_json(checkpoint.config);
  env_steps_ = checkpoint.meta.env_steps;
  try {
    load_state(checkpoint.state);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedCheckpoint, e.what());
  }
}

std::unique_ptr<Agent> make_agent(AgentKind kind, const AgentConfig& config) {
  switch (kind) {
    case AgentKind::kHashQ: return std::make_unique<HashQAgent>(config);
    case AgentKind::kSeqPolicy: return std::make_unique<SeqPolicyAgent>(config);
    case AgentKind::kWmPlanner: return std::make_unique<WmPlannerAgent>(config);
  }
  throw Error(ErrorCode::kUnknownAgent, "unknown agent kind");
}

std::unique_ptr<Agent> make_agent(std::string_view name, const AgentConfig& config) {
  const auto kind = agent_kind_from_name(name);
  if (!kind) {
    throw Error(ErrorCode::kUnknownAgent, "unknown agent '" + std::string(name) +
                                              "' (valid agents: " + valid_agent_names() + ")");
  }
  return make_agent(*kind, config);
}

std::unique_ptr<Agent> agent_from_checkpoint(const AgentCheckpoint& checkpoint) {
  auto agent = make_agent(checkpoint.kind, AgentConfig::from_json(checkpoint.config));
  agent->load(checkpoint);
  return agent;
}

}  // namespace arcrl
