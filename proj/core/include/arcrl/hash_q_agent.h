#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <unordered_map>

#include "arcrl/agent.h"
#include "arcrl/rng.h"

namespace arcrl {

using QRow = std::array<double, kNumActions>;

/// Tabular Q-learning keyed by the digest of the current grid. Unseen
/// entries read as zero; greedy ties go to the lowest action ordinal;
/// exploration is epsilon-greedy with linear decay.
class HashQAgent final : public Agent {
 public:
  explicit HashQAgent(const AgentConfig& config);

  AgentKind kind() const override { return AgentKind::kHashQ; }
  std::unique_ptr<Agent> clone() const override;

  double q(std::uint64_t state, Action a) const;
  QRow row(std::uint64_t state) const;
  std::size_t table_size() const noexcept { return table_.size(); }
  double epsilon() const;

  // One Q-learning backup; the bootstrap term is dropped when terminal.
  void update(std::uint64_t state, Action a, double reward, std::uint64_t next_state,
              bool terminal);

  static Action greedy(const QRow& row);

 protected:
  void on_begin_training(std::uint64_t budget) override;
  void on_begin_episode(const Observation&, const DemoView&) override {}
  Action on_select_action(const Observation& observation, Mode mode) override;
  void on_observe_transition(const Transition& transition) override;
  nlohmann::json save_state() const override;
  void load_state(const nlohmann::json& state) override;

 private:
  std::unordered_map<std::uint64_t, QRow> table_;
  Rng rng_;
  std::uint64_t explore_steps_ = 0;
  std::uint64_t decay_steps_ = 1;
};

}  // namespace arcrl
