#include "arcrl/hash_q_agent.h"

#include <algorithm>
#include <map>

#include "arcrl/error.h"

namespace arcrl {

namespace {

constexpr std::uint64_t kExploreStreamTag = 0x71;

}  // namespace

HashQAgent::HashQAgent(const AgentConfig& config)
    : Agent(config), rng_(Rng::substream(config.seed, kExploreStreamTag)) {
  decay_steps_ = std::max<std::uint64_t>(1, config.epsilon_decay_steps);
}

std::unique_ptr<Agent> HashQAgent::clone() const { return std::make_unique<HashQAgent>(*this); }

double HashQAgent::q(std::uint64_t state, Action a) const {
  const auto it = table_.find(state);
  return it == table_.end() ? 0.0 : it->second[static_cast<std::size_t>(a)];
}

QRow HashQAgent::row(std::uint64_t state) const {
  const auto it = table_.find(state);
  return it == table_.end() ? QRow{} : it->second;
}

Action HashQAgent::greedy(const QRow& row) {
  std::size_t best = 0;
  for (std::size_t a = 1; a < row.size(); ++a) {
    if (row[a] > row[best]) best = a;
  }
  return static_cast<Action>(best);
}

double HashQAgent::epsilon() const {
  if (explore_steps_ >= decay_steps_) return config_.epsilon_end;
  const double frac = static_cast<double>(explore_steps_) / static_cast<double>(decay_steps_);
  return config_.epsilon_start + (config_.epsilon_end - config_.epsilon_start) * frac;
}

void HashQAgent::update(std::uint64_t state, Action a, double reward, std::uint64_t next_state,
                        bool terminal) {
  double target = reward;
  if (!terminal) {
    const QRow next = row(next_state);
    target += config_.gamma * *std::max_element(next.begin(), next.end());
  }
  double& value = table_[state][static_cast<std::size_t>(a)];
  value += config_.alpha * (target - value);
}

void HashQAgent::on_begin_training(std::uint64_t budget) {
  explore_steps_ = 0;
  decay_steps_ = config_.epsilon_decay_steps > 0 ? config_.epsilon_decay_steps
                                                 : std::max<std::uint64_t>(1, budget / 2);
}

Action HashQAgent::on_select_action(const Observation& observation, Mode mode) {
  if (mode == Mode::kExplore) {
    const double eps = epsilon();
    ++explore_steps_;
    if (rng_.unit() < eps) return static_cast<Action>(rng_.below(kNumActions));
  }
  return greedy(row(grid_digest(observation.grid)));
}

void HashQAgent::on_observe_transition(const Transition& t) {
  update(grid_digest(t.observation.grid), t.action, t.reward,
         grid_digest(t.next_observation.grid), is_terminal(t.outcome));
}

nlohmann::json HashQAgent::save_state() const {
  // Sorted by key so identical tables serialize to identical bytes.
  std::map<std::uint64_t, const QRow*> ordered;
  for (const auto& [key, values] : table_) ordered.emplace(key, &values);
  auto entries = nlohmann::json::array();
  for (const auto& [key, values] : ordered) {
    entries.push_back({{"state", key}, {"q", *values}});
  }
  return {{"table", std::move(entries)},
          {"explore_steps", explore_steps_},
          {"decay_steps", decay_steps_}};
}

void HashQAgent::load_state(const nlohmann::json& state) {
  table_.clear();
  for (const auto& entry : state.at("table")) {
    table_[entry.at("state").get<std::uint64_t>()] = entry.at("q").get<QRow>();
  }
  explore_steps_ = state.at("explore_steps").get<std::uint64_t>();
  decay_steps_ = std::max<std::uint64_t>(1, state.at("decay_steps").get<std::uint64_t>());
  rng_ = Rng::substream(config_.seed ^ env_steps(), kExploreStreamTag);
}

}  // namespace arcrl
