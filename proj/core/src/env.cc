#include "arcrl/env.h"

#include <algorithm>
#include <array>
#include <string>

#include "arcrl/error.h"

namespace arcrl {

namespace {

constexpr std::array<std::string_view, kNumActions> kActionNames{
    "Rotate90", "Rotate270", "FlipH", "FlipV", "Submit"};

}  // namespace

std::optional<Action> action_from_ordinal(int ordinal) {
  if (ordinal < 0 || ordinal >= kNumActions) return std::nullopt;
  return static_cast<Action>(ordinal);
}

std::string_view action_name(Action a) { return kActionNames[static_cast<std::size_t>(a)]; }

std::optional<Action> action_from_name(std::string_view name) {
  for (int i = 0; i < kNumActions; ++i) {
    if (kActionNames[static_cast<std::size_t>(i)] == name) return static_cast<Action>(i);
  }
  return std::nullopt;
}

Grid apply_action(Action a, const Grid& g) {
  switch (a) {
    case Action::kRotate90: return rotate90(g);
    case Action::kRotate270: return rotate270(g);
    case Action::kFlipH: return flip_h(g);
    case Action::kFlipV: return flip_v(g);
    case Action::kSubmit: break;
  }
  throw Error(ErrorCode::kInvalidAction, "Submit is not a grid transform");
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kRunning: return "Running";
    case Outcome::kSuccess: return "Success";
    case Outcome::kFailSubmissions: return "FailSubmissions";
    case Outcome::kFailTimeout: return "FailTimeout";
  }
  return "Unknown";
}

void Observation::write_one_hot(std::span<float> out) const {
  std::fill(out.begin(), out.end(), 0.0f);
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      const std::size_t plane = grid.at(r, c);
      out[plane * kPlaneSize + static_cast<std::size_t>(r * kCanvasSide + c)] = 1.0f;
    }
  }
}

void Observation::write_mask(std::span<std::uint8_t> out) const {
  std::fill(out.begin(), out.end(), std::uint8_t{0});
  for (int r = 0; r < grid.rows(); ++r) {
    std::fill_n(out.begin() + r * kCanvasSide, grid.cols(), std::uint8_t{1});
  }
}

std::vector<float> Observation::one_hot() const {
  std::vector<float> out(kTensorSize);
  write_one_hot(out);
  return out;
}

std::vector<std::uint8_t> Observation::mask() const {
  std::vector<std::uint8_t> out(kPlaneSize);
  write_mask(out);
  return out;
}

Observation ArcEnv::reset(const GridPair& pair) {
  state_ = EpisodeState{};
  state_.current = pair.input;
  state_.target = pair.output;
  // Generated tasks never start matched; ingested ones might.
  state_.currently_matching = state_.current == state_.target;
  started_ = true;
  return observe();
}

Observation ArcEnv::reset(const TaskSpec& task, std::size_t demo_index) {
  if (task.demos.empty()) {
    throw Error(ErrorCode::kEmptyTask, "task '" + task.task_id + "' has no demo pairs");
  }
  if (demo_index >= task.demos.size()) {
    throw Error(ErrorCode::kInvalidConfig, "demo index " + std::to_string(demo_index) +
                                               " out of range");
  }
  return reset(task.demos[demo_index]);
}

Observation ArcEnv::reset(const TaskSpec& task, Rng& rng) {
  if (task.demos.empty()) {
    throw Error(ErrorCode::kEmptyTask, "task '" + task.task_id + "' has no demo pairs");
  }
  return reset(task.demos[rng.below(task.demos.size())]);
}

StepResult ArcEnv::step(Action a) {
  if (!started_) throw Error(ErrorCode::kLifecycleViolation, "step before reset");
  if (is_terminal(state_.finished)) {
    throw Error(ErrorCode::kStepAfterTermination,
                "episode already ended with " + std::string(outcome_name(state_.finished)));
  }
  if (static_cast<int>(a) >= kNumActions) {
    throw Error(ErrorCode::kInvalidAction, "action ordinal out of range");
  }

  double reward = 0.0;
  ++state_.steps_taken;

  if (a == Action::kSubmit) {
    if (state_.currently_matching) {
      reward = kSubmitReward;
      state_.finished = Outcome::kSuccess;
    } else {
      ++state_.submissions_used;
      if (state_.submissions_used >= kMaxSubmissions) state_.finished = Outcome::kFailSubmissions;
    }
  } else {
    state_.current = apply_action(a, state_.current);
    const bool was_matching = state_.currently_matching;
    state_.currently_matching = state_.current == state_.target;
    if (!was_matching && state_.currently_matching) reward = kMatchEntryReward;
  }

  if (state_.finished == Outcome::kRunning && state_.steps_taken >= kMaxEpisodeSteps) {
    state_.finished = Outcome::kFailTimeout;
  }
  return StepResult{observe(), reward, state_.finished};
}

Observation ArcEnv::observe() const {
  return Observation{state_.current, kMaxEpisodeSteps - state_.steps_taken,
                     kMaxSubmissions - state_.submissions_used};
}

TaskEnvironment::TaskEnvironment(TaskSpec task, std::uint64_t seed)
    : task_(std::move(task)), rng_(Rng::substream(seed, kPairStreamTag)) {
  if (task_.demos.empty()) {
    throw Error(ErrorCode::kEmptyTask, "task '" + task_.task_id + "' has no demo pairs");
  }
}

Observation TaskEnvironment::reset() {
  pair_index_ = rng_.below(task_.demos.size());
  return env_.reset(task_.demos[pair_index_]);
}

StepResult TaskEnvironment::step(Action a) { return env_.step(a); }

}  // namespace arcrl
