#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "arcrl/grid.h"
#include "arcrl/rng.h"

namespace arcrl {

enum class Rule {
  kDiagonalFlipMain,
  kDiagonalFlipAnti,
  kRotateCcw,
  kHorizontalFlip,
};

std::string_view rule_name(Rule rule);
std::optional<Rule> rule_from_name(std::string_view name);

/// Applies the single grid transform a rule stands for.
Grid apply_rule(Rule rule, const Grid& g);

/// Square grid sizes: a fixed side, or a side drawn uniformly per grid.
class SizeSpec {
 public:
  // Both throw InvalidConfig unless 1 <= min_n <= max_n <= 30.
  static constexpr SizeSpec fixed(int n) { return varying(n, n); }
  static constexpr SizeSpec varying(int min_n, int max_n) {
    if (min_n < 1 || min_n > max_n || max_n > kMaxSide) invalid_size();
    return SizeSpec(min_n, max_n);
  }

  int min_side() const noexcept { return min_; }
  int max_side() const noexcept { return max_; }
  bool is_fixed() const noexcept { return min_ == max_; }

 private:
  constexpr SizeSpec(int min_n, int max_n) : min_(min_n), max_(max_n) {}
  [[noreturn]] static void invalid_size();

  int min_;
  int max_;
};

inline constexpr int kDefaultVaryingMin = 2;
inline constexpr int kDefaultVaryingMax = 10;

struct GridPair {
  Grid input;
  Grid output;

  friend bool operator==(const GridPair&, const GridPair&) = default;
};

struct TaskSpec {
  std::string task_id;
  std::optional<Rule> rule;  // absent for ingested ARC files
  std::vector<GridPair> demos;
  std::vector<GridPair> evals;
  std::uint64_t seed = 0;

  // Order-sensitive digest over all demo pairs. Agents use it to notice a
  // change of demo set without rescanning the pairs every episode.
  std::uint64_t demo_fingerprint() const;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

// A task's demos as agents see them at episode start.
struct DemoView {
  std::span<const GridPair> pairs;
  std::uint64_t fingerprint = 0;

  static DemoView of(const TaskSpec& task) {
    return DemoView{task.demos, task.demo_fingerprint()};
  }
};

inline constexpr int kMaxSampleAttempts = 1000;

/// Draws a square grid per `size` with i.i.d. uniform colors, rejecting grids
/// the rule maps to themselves. Throws SamplingExhausted after
/// kMaxSampleAttempts rejections.
Grid sample_grid(const SizeSpec& size, Rule rule, Rng& rng);

TaskSpec generate_task(Rule rule, const SizeSpec& size, std::size_t n_demos,
                       std::size_t n_evals, std::uint64_t seed,
                       std::string task_id = {});

// Built-in benchmark tasks: flip-d-3x3, flip-d-NxN, rotate-ccw-3x3,
// flip-h-NxN (plus flip-a-3x3 / flip-a-NxN for the anti-diagonal reading).
struct BuiltinTask {
  std::string_view name;
  Rule rule;
  SizeSpec size;
};

std::span<const BuiltinTask> builtin_tasks();
std::optional<BuiltinTask> find_builtin_task(std::string_view name);
TaskSpec make_builtin_task(std::string_view name, std::size_t n_demos,
                           std::size_t n_evals, std::uint64_t seed);

// ARC task JSON: {"train": [{"input": grid, "output": grid}, ...], "test": [...]}.
TaskSpec load_arc_task(const nlohmann::json& document, std::string task_id = {});
TaskSpec load_arc_task_text(std::string_view text, std::string task_id = {});
TaskSpec load_arc_task_file(const std::string& path);
nlohmann::json export_arc_task(const TaskSpec& task);

/// Fraction of eval inputs that also occur as a demo input.
double demo_eval_overlap(const TaskSpec& task);

}  // namespace arcrl
