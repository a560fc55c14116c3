#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace arcrl {

enum class AgentKind { kHashQ, kSeqPolicy, kWmPlanner };

std::string_view agent_kind_name(AgentKind kind);
std::optional<AgentKind> agent_kind_from_name(std::string_view name);
// "hash-q, seq-policy, wm-planner"
std::string valid_agent_names();

inline constexpr int kCheckpointFormatVersion = 1;

struct TrainingMeta {
  std::uint64_t env_steps = 0;
  std::uint64_t seed = 0;
};

// Versioned JSON document:
//   {"format_version": 1, "agent_kind": "hash-q", "config": {...},
//    "meta": {"env_steps": N, "seed": S}, "state": {...}}
// Documents with a newer format_version are rejected.
struct AgentCheckpoint {
  int format_version = kCheckpointFormatVersion;
  AgentKind kind = AgentKind::kHashQ;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json state = nlohmann::json::object();
  TrainingMeta meta;

  nlohmann::json to_json() const;
  std::string to_text() const;
  static AgentCheckpoint from_json(const nlohmann::json& doc);
  static AgentCheckpoint from_text(std::string_view text);

  void save_file(const std::string& path) const;
  static AgentCheckpoint load_file(const std::string& path);
};

}  // namespace arcrl
