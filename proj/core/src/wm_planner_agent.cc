#include "arcrl/wm_planner_agent.h"

#include <string>

#include "arcrl/error.h"

namespace arcrl {

Grid simulate(const OpModel& model, const ActionSequence& sequence, const Grid& start) {
  Grid g = start;
  for (Action a : sequence) g = model.apply(a, g);
  return g;
}

namespace {

// Visits every sequence of exactly `len` transforms in lexicographic ordinal
// order; stops at the first one `accept` takes.
template <typename Accept>
std::optional<ActionSequence> enumerate_length(int len, Accept accept) {
  std::vector<std::size_t> digits(static_cast<std::size_t>(len), 0);
  ActionSequence seq(static_cast<std::size_t>(len));
  for (;;) {
    for (std::size_t i = 0; i < digits.size(); ++i) seq[i] = kTransformActions[digits[i]];
    if (accept(seq)) return seq;
    std::size_t pos = digits.size();
    while (pos > 0 && digits[pos - 1] + 1 == kNumTransformActions) digits[--pos] = 0;
    if (pos == 0) return std::nullopt;
    ++digits[pos - 1];
  }
}

void require_complete(const OpModel& model) {
  for (Action a : kTransformActions) {
    if (!model.hypothesis(a)) {
      throw Error(ErrorCode::kModelIncomplete,
                  std::string(action_name(a)) + " has no closed-form hypothesis yet");
    }
  }
}

}  // namespace

std::optional<ActionSequence> search_rule(const OpModel& model, std::span<const GridPair> demos,
                                          int max_len, int min_len) {
  require_complete(model);
  if (max_len < 1) throw Error(ErrorCode::kInvalidConfig, "max rule length must be >= 1");
  for (int len = std::max(min_len, 0); len <= max_len; ++len) {
    if (len == 0) {
      bool identity = true;
      for (const auto& d : demos) identity = identity && d.input == d.output;
      if (identity) return ActionSequence{};
      continue;
    }
    auto found = enumerate_length(len, [&](const ActionSequence& seq) {
      for (const auto& d : demos) {
        if (simulate(model, seq, d.input) != d.output) return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

WmPlannerAgent::WmPlannerAgent(const AgentConfig& config)
    : Agent(config), model_(config.max_samples_per_action) {
  if (config.max_rule_length < 1) {
    throw Error(ErrorCode::kInvalidConfig, "max_rule_length must be >= 1");
  }
}

std::unique_ptr<Agent> WmPlannerAgent::clone() const {
  return std::make_unique<WmPlannerAgent>(*this);
}

ActionSequence WmPlannerAgent::induce_rule(std::span<const GridPair> demos, int max_len) const {
  auto found = search_rule(model_, demos, max_len);
  if (!found) {
    throw Error(ErrorCode::kNoRuleFound,
                "no transform sequence of length <= " + std::to_string(max_len) +
                    " explains all demos");
  }
  return *found;
}

void WmPlannerAgent::refresh_rule() {
  if (!model_.complete() || demos_.pairs.empty()) return;
  const std::pair key{demos_.fingerprint, model_version_};
  if (searched_for_ == key) return;
  searched_for_ = key;
  rule_ = search_rule(model_, demos_.pairs, config_.max_rule_length);
}

bool WmPlannerAgent::plan_route(const Grid& current) {
  if (!rule_ || !episode_input_ || !model_.complete()) return false;
  const Grid goal = simulate(model_, *rule_, *episode_input_);
  const GridPair hop{current, goal};
  auto route = search_rule(model_, std::span(&hop, 1), config_.max_rule_length, 0);
  if (!route) return false;
  script_ = std::move(*route);
  script_.push_back(Action::kSubmit);
  cursor_ = 0;
  return true;
}

void WmPlannerAgent::on_begin_episode(const Observation& observation, const DemoView& demos) {
  demos_ = demos;
  episode_input_ = observation.grid;
  script_.clear();
  cursor_ = 0;
  script_spent_ = false;
  round_robin_ = 0;
  refresh_rule();
  if (rule_ && model_.complete()) {
    script_ = *rule_;
    script_.push_back(Action::kSubmit);
  }
}

Action WmPlannerAgent::on_select_action(const Observation& observation, Mode) {
  if (script_.empty() && !script_spent_ && rule_ && model_.complete()) {
    // Rule appeared mid-episode: route from where we are.
    if (!plan_route(observation.grid)) script_spent_ = true;
  }
  if (!script_spent_ && cursor_ < script_.size()) {
    const Action next = script_[cursor_++];
    if (cursor_ == script_.size()) script_spent_ = true;
    return next;
  }
  return kTransformActions[round_robin_++ % kNumTransformActions];
}

void WmPlannerAgent::on_observe_transition(const Transition& t) {
  if (t.action == Action::kSubmit) return;
  if (model_.learn(t.observation.grid, t.action, t.next_observation.grid)) {
    ++model_version_;
    if (!rule_) refresh_rule();
  }
}

void WmPlannerAgent::on_end_episode() {
  demos_ = DemoView{};
  episode_input_.reset();
  script_.clear();
  cursor_ = 0;
  script_spent_ = false;
}

nlohmann::json WmPlannerAgent::save_state() const {
  nlohmann::json rule = nullptr;
  if (rule_) {
    rule = nlohmann::json::array();
    for (Action a : *rule_) rule.push_back(std::string(action_name(a)));
  }
  return {{"model", model_.to_json()}, {"rule", std::move(rule)}};
}

void WmPlannerAgent::load_state(const nlohmann::json& state) {
  model_ = OpModel::from_json(state.at("model"));
  rule_.reset();
  const auto& rule = state.at("rule");
  if (!rule.is_null()) {
    ActionSequence seq;
    for (const auto& name : rule) {
      const auto a = action_from_name(name.get<std::string>());
      if (!a || *a == Action::kSubmit) {
        throw Error(ErrorCode::kMalformedCheckpoint, "bad action in induced rule");
      }
      seq.push_back(*a);
    }
    rule_ = std::move(seq);
  }
  searched_for_.reset();
  model_version_ = 0;
  on_end_episode();
}

}  // namespace arcrl
