#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "arcrl/env.h"
#include "arcrl/grid.h"

namespace arcrl {

/// Learned effect of each transform action.
///
/// For every action the model keeps observed (input digest -> output grid)
/// samples and a set of surviving closed-form candidates drawn from the four
/// transforms rotate90, rotate270, flip_h and flip_v. A candidate dies the
/// first time it disagrees with an observed sample. The action carries a
/// hypothesis tag while exactly one candidate survives; with none left the
/// tag is gone for good.
///
/// Sample storage is capped per action (candidates are still checked against
/// every sample), which keeps checkpoints bounded on long runs.
class OpModel {
 public:
  explicit OpModel(std::size_t max_samples_per_action = 1024)
      : max_samples_(max_samples_per_action) {}

  // Returns true if any action's hypothesis tag changed. Throws
  // ContradictorySample if a stored (input, action) pair had another output.
  // Submit is ignored.
  bool learn(const Grid& before, Action a, const Grid& after);

  // Candidate bitmask for a transform action; bit i = kTransformActions[i].
  std::uint8_t candidates(Action a) const;
  std::optional<Action> hypothesis(Action a) const;
  bool complete() const;

  // Closed-form prediction; requires a hypothesis tag for `a`.
  Grid apply(Action a, const Grid& g) const;
  // Tag if present, otherwise a stored sample, otherwise nothing.
  std::optional<Grid> predict(Action a, const Grid& g) const;

  std::size_t stored_samples(Action a) const;
  std::uint64_t observed_samples(Action a) const;

  nlohmann::json to_json() const;
  static OpModel from_json(const nlohmann::json& doc);

 private:
  struct PerAction {
    std::unordered_map<std::uint64_t, Grid> samples;
    std::uint8_t candidates = 0b1111;
    std::uint64_t observed = 0;
  };

  const PerAction& slot(Action a) const;
  PerAction& slot(Action a);

  std::size_t max_samples_;
  std::array<PerAction, kNumTransformActions> actions_;
};

}  // namespace arcrl
