#pragma once

#include <array>
#include <memory>
#include <vector>

#include "arcrl/agent.h"
#include "arcrl/rng.h"

namespace arcrl {

using ActionProbs = std::array<double, kNumActions>;
using Logits = std::array<double, kNumActions>;

ActionProbs softmax(const Logits& logits);

/// Open-loop categorical policy indexed by episode step. Logits are updated
/// once per episode with the score-function gradient of the softmax, using
/// undiscounted reward-to-go and a per-step running-mean baseline.
class SeqPolicyAgent final : public Agent {
 public:
  explicit SeqPolicyAgent(const AgentConfig& config);

  AgentKind kind() const override { return AgentKind::kSeqPolicy; }
  std::unique_ptr<Agent> clone() const override;

  ActionProbs probabilities(int step) const;
  const Logits& logits(int step) const { return logits_.at(static_cast<std::size_t>(step)); }
  double baseline(int step) const { return baseline_.at(static_cast<std::size_t>(step)); }

  struct StepRecord {
    int step;
    Action action;
    double reward;
  };
  // Applies one policy-gradient update for a finished trajectory.
  void update(const std::vector<StepRecord>& trajectory);

 protected:
  void on_begin_episode(const Observation&, const DemoView&) override;
  Action on_select_action(const Observation& observation, Mode mode) override;
  void on_observe_transition(const Transition& transition) override;
  void on_end_episode() override;
  void on_discard_episode() override { trajectory_.clear(); }
  nlohmann::json save_state() const override;
  void load_state(const nlohmann::json& state) override;

 private:
  std::array<Logits, kMaxEpisodeSteps> logits_{};
  std::array<double, kMaxEpisodeSteps> baseline_{};
  std::array<std::uint64_t, kMaxEpisodeSteps> baseline_count_{};
  std::vector<StepRecord> trajectory_;
  Rng rng_;
};

}  // namespace arcrl
