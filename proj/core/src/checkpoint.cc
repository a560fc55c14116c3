#include "arcrl/checkpoint.h"

#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "arcrl/error.h"

namespace arcrl {

namespace {

constexpr std::array<std::pair<AgentKind, std::string_view>, 3> kKindNames{{
    {AgentKind::kHashQ, "hash-q"},
    {AgentKind::kSeqPolicy, "seq-policy"},
    {AgentKind::kWmPlanner, "wm-planner"},
}};

}  // namespace

std::string_view agent_kind_name(AgentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<AgentKind> agent_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string valid_agent_names() {
  std::string out;
  for (const auto& [k, name] : kKindNames) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

nlohmann::json AgentCheckpoint::to_json() const {
  return {
      {"format_version", format_version},
      {"agent_kind", std::string(agent_kind_name(kind))},
      {"config", config},
      {"meta", {{"env_steps", meta.env_steps}, {"seed", meta.seed}}},
      {"state", state},
  };
}

std::string AgentCheckpoint::to_text() const { return to_json().dump(1) + "\n"; }

AgentCheckpoint AgentCheckpoint::from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorCode::kMalformedCheckpoint, "not a JSON object");
    const int version = doc.at("format_version").get<int>();
    if (version > kCheckpointFormatVersion || version < 1) {
      throw Error(ErrorCode::kCheckpointVersion,
                  "checkpoint format_version " + std::to_string(version) +
                      " is not supported (this build reads up to " +
                      std::to_string(kCheckpointFormatVersion) + ")");
    }
    const auto kind_name = doc.at("agent_kind").get<std::string>();
    const auto kind = agent_kind_from_name(kind_name);
    if (!kind) {
      throw Error(ErrorCode::kMalformedCheckpoint, "unknown agent_kind '" + kind_name + "'");
    }
    AgentCheckpoint cp;
    cp.format_version = version;
    cp.kind = *kind;
    cp.config = doc.value("config", nlohmann::json::object());
    cp.state = doc.at("state");
    const auto& meta = doc.at("meta");
    cp.meta.env_steps = meta.at("env_steps").get<std::uint64_t>();
    cp.meta.seed = meta.at("seed").get<std::uint64_t>();
    return cp;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedCheckpoint, e.what());
  }
}

AgentCheckpoint AgentCheckpoint::from_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedCheckpoint, e.what());
  }
  return from_json(doc);
}

void AgentCheckpoint::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write checkpoint " + path);
  out << to_text();
  if (!out) throw Error(ErrorCode::kIo, "failed writing checkpoint " + path);
}

AgentCheckpoint AgentCheckpoint::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read checkpoint " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

}  // namespace arcrl
