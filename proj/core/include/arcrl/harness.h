#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arcrl/agent.h"
#include "arcrl/checkpoint.h"
#include "arcrl/task.h"

namespace arcrl {

inline constexpr std::uint64_t kDefaultSingleTaskBudget = 100'000;
inline constexpr std::uint64_t kDefaultTransferBudget = 50'000;
inline constexpr std::uint64_t kDefaultEvalEvery = 1'000;
inline constexpr std::size_t kDefaultDemoCount = 1'000;
inline constexpr std::size_t kDefaultEvalCount = 100;

struct CurveSample {
  std::uint64_t env_steps = 0;
  double accuracy = 0.0;

  friend bool operator==(const CurveSample&, const CurveSample&) = default;
};

struct CurveSeries {
  std::string task_id;
  AgentKind agent_kind = AgentKind::kHashQ;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::vector<CurveSample> samples;

  std::optional<std::uint64_t> steps_to_first_perfect() const;
  double final_accuracy() const { return samples.empty() ? 0.0 : samples.back().accuracy; }

  friend bool operator==(const CurveSeries&, const CurveSeries&) = default;
};

// --- pass@3 evaluation ------------------------------------------------------

/// Plays one greedy episode on `pair` and returns how it ended. No learning.
Outcome play_greedy_episode(Agent& agent, const DemoView& demos, const GridPair& pair);

/// Fraction of `pairs` solved by greedy episodes on snapshots of `agent`.
/// Each pair gets its own fresh environment, so the result does not depend
/// on `threads`.
double evaluate_pairs(const Agent& agent, const DemoView& demos,
                      std::span<const GridPair> pairs, unsigned threads = 1);

/// pass@3 accuracy on the first `eval_count` held-out pairs of `task`.
/// Throws InsufficientEvalPairs if the task has fewer.
double evaluate(const Agent& agent, const TaskSpec& task, std::size_t eval_count,
                unsigned threads = 1);

// --- training protocols -----------------------------------------------------

struct RunOptions {
  std::uint64_t budget = kDefaultSingleTaskBudget;
  std::uint64_t eval_every = kDefaultEvalEvery;
  std::size_t eval_count = kDefaultEvalCount;
  // Seeds the demo-pair stream used to start training episodes.
  std::uint64_t seed = 0;
  bool sample_at_zero = false;
  unsigned eval_threads = 1;
};

struct TrainingStats {
  std::uint64_t env_steps = 0;
  std::uint64_t episodes = 0;
  std::uint64_t successes = 0;
};

/// Trains `agent` in place on demo pairs of `task` for exactly
/// `options.budget` environment steps, sampling held-out accuracy every
/// `eval_every` steps and at the end. Evaluation steps are not counted.
CurveSeries run_single_task(Agent& agent, const TaskSpec& task, const RunOptions& options,
                            TrainingStats* stats = nullptr);

struct TransferRun {
  std::unique_ptr<Agent> agent;
  CurveSeries curve;
  TrainingStats stats;
  double zero_shot_accuracy = 0.0;
};

/// Restores `pretrained`, records a zero-shot sample at env_steps = 0 on
/// `target`, then fine-tunes for `options.budget` steps.
TransferRun run_transfer(const AgentCheckpoint& pretrained, const TaskSpec& target,
                         const RunOptions& options);

// --- experiment configs and outputs -------------------------------------------

enum class Protocol { kSingleTask, kTransfer };

struct ExperimentConfig {
  Protocol protocol = Protocol::kSingleTask;
  // Built-in task name or path to an ARC task JSON file.
  std::string task;
  // Transfer only: task to pretrain on when no checkpoint is loaded.
  std::string pretrain_task;
  std::optional<AgentKind> agent_kind;
  AgentConfig agent;
  std::uint64_t train_budget = kDefaultSingleTaskBudget;
  std::uint64_t pretrain_budget = kDefaultSingleTaskBudget;
  std::uint64_t eval_every = kDefaultEvalEvery;
  std::size_t demo_count = kDefaultDemoCount;
  std::size_t eval_count = kDefaultEvalCount;
  // For ARC files: use every test pair instead of eval_count.
  bool eval_all_file_pairs = true;
  std::uint64_t seed = 0;
  std::string load_checkpoint;
  std::string save_checkpoint;
  std::string out_dir;
  unsigned eval_threads = 1;

  // Throws InvalidConfig.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Built-in name or ARC file path. Generated tasks use `seed`.
TaskSpec resolve_task(const std::string& source, std::size_t demo_count, std::size_t eval_count,
                      std::uint64_t seed);

struct ExperimentResult {
  CurveSeries curve;
  std::optional<CurveSeries> pretrain_curve;
  nlohmann::json summary;
  AgentCheckpoint checkpoint;
};

/// Runs the configured protocol end to end. When out_dir is set, writes
/// curves.csv, summary.json and the checkpoint (checkpoint.json unless
/// save_checkpoint names another path); transfer runs that pretrain also
/// write pretrain_curves.csv.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Header `env_steps,accuracy`, then one sample per line, accuracy with four
// decimals.
void write_curves(const CurveSeries& curve, std::ostream& out);
void write_curves_file(const CurveSeries& curve, const std::string& path);
void write_summary_file(const nlohmann::json& summary, const std::string& path);

}  // namespace arcrl
