#include "arcrl/seq_policy_agent.h"

#include <algorithm>
#include <cmath>

#include "arcrl/error.h"

namespace arcrl {

namespace {

constexpr std::uint64_t kSampleStreamTag = 0x73;

}  // namespace

ActionProbs softmax(const Logits& logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  ActionProbs p{};
  double total = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    p[a] = std::exp(logits[a] - top);
    total += p[a];
  }
  for (double& v : p) v /= total;
  return p;
}

SeqPolicyAgent::SeqPolicyAgent(const AgentConfig& config)
    : Agent(config), rng_(Rng::substream(config.seed, kSampleStreamTag)) {}

std::unique_ptr<Agent> SeqPolicyAgent::clone() const {
  return std::make_unique<SeqPolicyAgent>(*this);
}

ActionProbs SeqPolicyAgent::probabilities(int step) const { return softmax(logits(step)); }

void SeqPolicyAgent::update(const std::vector<StepRecord>& trajectory) {
  // Reward-to-go, accumulated back to front.
  std::vector<double> to_go(trajectory.size());
  double running = 0.0;
  for (std::size_t i = trajectory.size(); i-- > 0;) {
    running += trajectory[i].reward;
    to_go[i] = running;
  }
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const auto t = static_cast<std::size_t>(trajectory[i].step);
    const double advantage = to_go[i] - baseline_[t];
    const ActionProbs pi = softmax(logits_[t]);
    const auto taken = static_cast<std::size_t>(trajectory[i].action);
    for (std::size_t a = 0; a < kNumActions; ++a) {
      const double grad = (a == taken ? 1.0 : 0.0) - pi[a];
      logits_[t][a] += config_.eta * advantage * grad;
    }
    ++baseline_count_[t];
    baseline_[t] += (to_go[i] - baseline_[t]) / static_cast<double>(baseline_count_[t]);
  }
}

void SeqPolicyAgent::on_begin_episode(const Observation&, const DemoView&) {
  trajectory_.clear();
}

Action SeqPolicyAgent::on_select_action(const Observation& observation, Mode mode) {
  const int step = std::clamp(observation.step_index(), 0, kMaxEpisodeSteps - 1);
  const Logits& l = logits(step);
  if (mode == Mode::kGreedy) {
    return static_cast<Action>(std::max_element(l.begin(), l.end()) - l.begin());
  }
  const ActionProbs p = softmax(l);
  const double u = rng_.unit();
  double cumulative = 0.0;
  for (std::size_t a = 0; a + 1 < p.size(); ++a) {
    cumulative += p[a];
    if (u < cumulative) return static_cast<Action>(a);
  }
  return static_cast<Action>(kNumActions - 1);
}

void SeqPolicyAgent::on_observe_transition(const Transition& t) {
  trajectory_.push_back({std::clamp(t.observation.step_index(), 0, kMaxEpisodeSteps - 1),
                         t.action, t.reward});
}

void SeqPolicyAgent::on_end_episode() {
  if (!trajectory_.empty()) update(trajectory_);
  trajectory_.clear();
}

nlohmann::json SeqPolicyAgent::save_state() const {
  return {{"logits", logits_}, {"baseline", baseline_}, {"baseline_count", baseline_count_}};
}

void SeqPolicyAgent::load_state(const nlohmann::json& state) {
  logits_ = state.at("logits").get<std::array<Logits, kMaxEpisodeSteps>>();
  baseline_ = state.at("baseline").get<std::array<double, kMaxEpisodeSteps>>();
  baseline_count_ = state.at("baseline_count").get<std::array<std::uint64_t, kMaxEpisodeSteps>>();
  trajectory_.clear();
  rng_ = Rng::substream(config_.seed ^ env_steps(), kSampleStreamTag);
}

}  // namespace arcrl
