#include "arcrl/op_model.h"

#include <bit>
#include <map>
#include <string>

#include "arcrl/error.h"

namespace arcrl {

namespace {

std::size_t transform_slot(Action a) {
  if (a == Action::kSubmit) {
    throw Error(ErrorCode::kInvalidAction, "Submit has no learned transform");
  }
  return static_cast<std::size_t>(a);
}

}  // namespace

const OpModel::PerAction& OpModel::slot(Action a) const { return actions_[transform_slot(a)]; }
OpModel::PerAction& OpModel::slot(Action a) { return actions_[transform_slot(a)]; }

bool OpModel::learn(const Grid& before, Action a, const Grid& after) {
  if (a == Action::kSubmit) return false;
  PerAction& s = slot(a);
  const std::uint64_t key = grid_digest(before);
  if (const auto it = s.samples.find(key); it != s.samples.end()) {
    if (it->second != after) {
      throw Error(ErrorCode::kContradictorySample,
                  std::string(action_name(a)) + " mapped the same input to two outputs");
    }
  } else if (s.samples.size() < max_samples_) {
    s.samples.emplace(key, after);
  }
  ++s.observed;

  const auto old_tag = hypothesis(a);
  for (std::size_t i = 0; i < kNumTransformActions; ++i) {
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << i);
    if ((s.candidates & bit) && apply_action(kTransformActions[i], before) != after) {
      s.candidates &= static_cast<std::uint8_t>(~bit);
    }
  }
  return hypothesis(a) != old_tag;
}

std::uint8_t OpModel::candidates(Action a) const { return slot(a).candidates; }

std::optional<Action> OpModel::hypothesis(Action a) const {
  const std::uint8_t mask = slot(a).candidates;
  if (std::popcount(mask) != 1) return std::nullopt;
  return kTransformActions[static_cast<std::size_t>(std::countr_zero(mask))];
}

bool OpModel::complete() const {
  for (Action a : kTransformActions) {
    if (!hypothesis(a)) return false;
  }
  return true;
}

Grid OpModel::apply(Action a, const Grid& g) const {
  const auto tag = hypothesis(a);
  if (!tag) {
    throw Error(ErrorCode::kModelIncomplete,
                std::string(action_name(a)) + " has no closed-form hypothesis yet");
  }
  return apply_action(*tag, g);
}

std::optional<Grid> OpModel::predict(Action a, const Grid& g) const {
  if (const auto tag = hypothesis(a)) return apply_action(*tag, g);
  const PerAction& s = slot(a);
  if (const auto it = s.samples.find(grid_digest(g)); it != s.samples.end()) return it->second;
  return std::nullopt;
}

std::size_t OpModel::stored_samples(Action a) const { return slot(a).samples.size(); }

std::uint64_t OpModel::observed_samples(Action a) const { return slot(a).observed; }

nlohmann::json OpModel::to_json() const {
  auto actions = nlohmann::json::array();
  for (std::size_t i = 0; i < kNumTransformActions; ++i) {
    const PerAction& s = actions_[i];
    const std::map<std::uint64_t, const Grid*> ordered = [&s] {
      std::map<std::uint64_t, const Grid*> m;
      for (const auto& [key, grid] : s.samples) m.emplace(key, &grid);
      return m;
    }();
    auto samples = nlohmann::json::array();
    for (const auto& [key, grid] : ordered) {
      samples.push_back({{"input_digest", key}, {"output", grid_to_json(*grid)}});
    }
    actions.push_back({{"action", std::string(action_name(kTransformActions[i]))},
                       {"candidates", s.candidates},
                       {"observed", s.observed},
                       {"samples", std::move(samples)}});
  }
  return {{"max_samples_per_action", max_samples_}, {"actions", std::move(actions)}};
}

OpModel OpModel::from_json(const nlohmann::json& doc) {
  OpModel model(doc.at("max_samples_per_action").get<std::size_t>());
  const auto& actions = doc.at("actions");
  if (!actions.is_array() || actions.size() != kNumTransformActions) {
    throw Error(ErrorCode::kMalformedCheckpoint, "operation model needs four action entries");
  }
  for (std::size_t i = 0; i < kNumTransformActions; ++i) {
    const auto& entry = actions[i];
    PerAction& s = model.actions_[i];
    s.candidates = entry.at("candidates").get<std::uint8_t>();
    s.observed = entry.at("observed").get<std::uint64_t>();
    for (const auto& sample : entry.at("samples")) {
      s.samples.emplace(sample.at("input_digest").get<std::uint64_t>(),
                        grid_from_json(sample.at("output")));
    }
  }
  return model;
}

}  // namespace arcrl
