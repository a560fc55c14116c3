#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "arcrl/grid.h"
#include "arcrl/rng.h"
#include "arcrl/task.h"

namespace arcrl {

// Ordinals are fixed; agents break ties by lowest ordinal.
enum class Action : std::uint8_t {
  kRotate90 = 0,
  kRotate270 = 1,
  kFlipH = 2,
  kFlipV = 3,
  kSubmit = 4,
};

inline constexpr int kNumActions = 5;
inline constexpr int kNumTransformActions = 4;
inline constexpr std::array<Action, kNumActions> kAllActions{
    Action::kRotate90, Action::kRotate270, Action::kFlipH, Action::kFlipV, Action::kSubmit};
inline constexpr std::array<Action, kNumTransformActions> kTransformActions{
    Action::kRotate90, Action::kRotate270, Action::kFlipH, Action::kFlipV};

constexpr int ordinal(Action a) { return static_cast<int>(a); }
std::optional<Action> action_from_ordinal(int ordinal);
std::string_view action_name(Action a);
std::optional<Action> action_from_name(std::string_view name);

/// Grid produced by a transform action. Submit is not a transform.
Grid apply_action(Action a, const Grid& g);

inline constexpr int kMaxEpisodeSteps = 50;
inline constexpr int kMaxSubmissions = 3;
inline constexpr double kSubmitReward = 1000.0;
inline constexpr double kMatchEntryReward = 1.0;
inline constexpr int kCanvasSide = kMaxSide;

enum class Outcome { kRunning, kSuccess, kFailSubmissions, kFailTimeout };

std::string_view outcome_name(Outcome o);
constexpr bool is_terminal(Outcome o) { return o != Outcome::kRunning; }

struct EnvSpec {
  int action_count = kNumActions;
  int canvas_rows = kCanvasSide;
  int canvas_cols = kCanvasSide;
  int color_planes = kNumColors;
  double min_reward = 0.0;
  double max_step_reward = kSubmitReward;
  int max_steps = kMaxEpisodeSteps;
  int max_submissions = kMaxSubmissions;
};

/// What an agent sees. The one-hot canvas is produced on demand from the raw
/// grid: 10 color planes over a 30x30 canvas, planes-first, plus a validity
/// mask over the same canvas.
struct Observation {
  Grid grid{1, 1};
  int steps_remaining = kMaxEpisodeSteps;
  int submissions_remaining = kMaxSubmissions;

  int rows() const noexcept { return grid.rows(); }
  int cols() const noexcept { return grid.cols(); }
  int step_index() const noexcept { return kMaxEpisodeSteps - steps_remaining; }

  static constexpr std::size_t kPlaneSize =
      static_cast<std::size_t>(kCanvasSide) * kCanvasSide;
  static constexpr std::size_t kTensorSize = kPlaneSize * kNumColors;

  // `out` must hold kTensorSize floats; index = color * 900 + row * 30 + col.
  void write_one_hot(std::span<float> out) const;
  // `out` must hold kPlaneSize bytes; 1 on cells inside the grid.
  void write_mask(std::span<std::uint8_t> out) const;
  std::vector<float> one_hot() const;
  std::vector<std::uint8_t> mask() const;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  Outcome outcome = Outcome::kRunning;
};

struct EpisodeState {
  Grid current{1, 1};
  Grid target{1, 1};
  int steps_taken = 0;
  int submissions_used = 0;
  bool currently_matching = false;
  Outcome finished = Outcome::kRunning;
};

/// Single-episode ARC environment with the restricted five-action set.
/// One owner at a time; instances share nothing.
class ArcEnv {
 public:
  ArcEnv() = default;

  static EnvSpec spec() { return EnvSpec{}; }

  Observation reset(const GridPair& pair);
  Observation reset(const TaskSpec& task, std::size_t demo_index);
  Observation reset(const TaskSpec& task, Rng& rng);

  StepResult step(Action a);
  Observation observe() const;

  bool started() const noexcept { return started_; }
  const EpisodeState& state() const noexcept { return state_; }

 private:
  EpisodeState state_;
  bool started_ = false;
};

/// An ArcEnv bound to a task and a seeded pair stream: each reset draws the
/// next demo pair from the stream. This is the surface bindings and replay
/// drive, so a (task, seed) pair fully determines a trajectory.
class TaskEnvironment {
 public:
  TaskEnvironment(TaskSpec task, std::uint64_t seed);

  Observation reset();
  StepResult step(Action a);
  Observation observe() const { return env_.observe(); }

  const TaskSpec& task() const noexcept { return task_; }
  const ArcEnv& env() const noexcept { return env_; }
  std::size_t current_pair() const noexcept { return pair_index_; }

 private:
  TaskSpec task_;
  Rng rng_;
  ArcEnv env_;
  std::size_t pair_index_ = 0;
};

// Tag of the pair-selection substream used by TaskEnvironment and training.
inline constexpr std::uint64_t kPairStreamTag = 3;

}  // namespace arcrl
