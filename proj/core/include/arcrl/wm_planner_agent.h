#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "arcrl/agent.h"
#include "arcrl/op_model.h"

namespace arcrl {

using ActionSequence = std::vector<Action>;

/// Runs `sequence` through the model's closed-form transforms.
Grid simulate(const OpModel& model, const ActionSequence& sequence, const Grid& start);

/// Searches the learned model (never the live environment) for the first
/// transform sequence, by increasing length and then lexicographic ordinal
/// order, that maps every demo input to its output. Lengths run from
/// `min_len` to `max_len`. Returns nothing when no sequence fits.
/// Throws ModelIncomplete if some action has no hypothesis tag.
std::optional<ActionSequence> search_rule(const OpModel& model,
                                          std::span<const GridPair> demos, int max_len,
                                          int min_len = 1);

/// Model-based agent: learn what each action does, induce the demo rule by
/// planning in the model, then execute the rule and Submit.
///
/// Until a rule exists it cycles the four transforms to feed the model and
/// never submits. A rule found at episode start is executed verbatim; a rule
/// found mid-episode is reached by routing, in the model, from the current
/// grid to the rule's predicted output for the episode input.
class WmPlannerAgent final : public Agent {
 public:
  explicit WmPlannerAgent(const AgentConfig& config);

  AgentKind kind() const override { return AgentKind::kWmPlanner; }
  std::unique_ptr<Agent> clone() const override;

  const OpModel& model() const noexcept { return model_; }
  OpModel& mutable_model() noexcept { return model_; }

  // Throws NoRuleFound / ModelIncomplete.
  ActionSequence induce_rule(std::span<const GridPair> demos, int max_len) const;

  const std::optional<ActionSequence>& rule() const noexcept { return rule_; }
  // Actions queued for the current episode and how many were emitted.
  const ActionSequence& script() const noexcept { return script_; }
  std::size_t cursor() const noexcept { return cursor_; }

 protected:
  void on_begin_episode(const Observation& observation, const DemoView& demos) override;
  Action on_select_action(const Observation& observation, Mode mode) override;
  void on_observe_transition(const Transition& transition) override;
  void on_end_episode() override;
  void on_discard_episode() override { on_end_episode(); }
  nlohmann::json save_state() const override;
  void load_state(const nlohmann::json& state) override;

 private:
  void refresh_rule();
  bool plan_route(const Grid& current);

  OpModel model_;
  std::optional<ActionSequence> rule_;
  // (demo fingerprint, model version) the rule was last searched for.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> searched_for_;
  std::uint64_t model_version_ = 0;

  DemoView demos_;
  std::optional<Grid> episode_input_;
  ActionSequence script_;
  std::size_t cursor_ = 0;
  bool script_spent_ = false;
  std::size_t round_robin_ = 0;
};

}  // namespace arcrl
