#include "arcrl/c_api.h"

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>

#include "arcrl/env.h"
#include "arcrl/error.h"
#include "arcrl/harness.h"

namespace {

struct Registry {
  std::mutex mu;
  arcrl_handle next = 1;
  std::map<arcrl_handle, std::shared_ptr<arcrl::TaskEnvironment>> envs;
};

Registry& registry() {
  static Registry r;
  return r;
}

thread_local std::string last_error;

int fail(int code, const std::string& message) {
  last_error = message;
  return code;
}

std::shared_ptr<arcrl::TaskEnvironment> lookup(arcrl_handle h) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  const auto it = r.envs.find(h);
  return it == r.envs.end() ? nullptr : it->second;
}

void export_observation(const arcrl::Observation& obs, arcrl::Outcome outcome, float* planes,
                        uint8_t* mask, int32_t* info) {
  if (planes) obs.write_one_hot(std::span(planes, arcrl::Observation::kTensorSize));
  if (mask) obs.write_mask(std::span(mask, arcrl::Observation::kPlaneSize));
  if (info) {
    info[0] = obs.rows();
    info[1] = obs.cols();
    info[2] = obs.steps_remaining;
    info[3] = obs.submissions_remaining;
    info[4] = static_cast<int32_t>(outcome);
  }
}

int map_error(const arcrl::Error& e) {
  switch (e.code()) {
    case arcrl::ErrorCode::kUnknownTask: return fail(ARCRL_E_UNKNOWN_TASK, e.what());
    case arcrl::ErrorCode::kIo:
    case arcrl::ErrorCode::kMalformedTask:
    case arcrl::ErrorCode::kMalformedGrid:
    case arcrl::ErrorCode::kRaggedRows:
    case arcrl::ErrorCode::kColorOutOfRange:
    case arcrl::ErrorCode::kEmptyGrid:
    case arcrl::ErrorCode::kGridTooLarge:
      return fail(ARCRL_E_IO, e.what());
    case arcrl::ErrorCode::kStepAfterTermination: return fail(ARCRL_E_EPISODE_OVER, e.what());
    case arcrl::ErrorCode::kLifecycleViolation: return fail(ARCRL_E_NOT_RESET, e.what());
    case arcrl::ErrorCode::kInvalidAction: return fail(ARCRL_E_INVALID_ACTION, e.what());
    default: return fail(ARCRL_E_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* arcrl_version(void) { return "0.1.0"; }

const char* arcrl_env_name(void) { return "arcrl/ArcRestricted-v0"; }

const char* arcrl_last_error(void) { return last_error.c_str(); }

int arcrl_make_env(const char* task, uint64_t seed, arcrl_handle* out) {
  if (!task || !out) return fail(ARCRL_E_INTERNAL, "null argument");
  try {
    auto env = std::make_shared<arcrl::TaskEnvironment>(
        arcrl::resolve_task(task, arcrl::kDefaultDemoCount, arcrl::kDefaultEvalCount, seed),
        seed);
    auto& r = registry();
    std::lock_guard lock(r.mu);
    *out = r.next++;
    r.envs.emplace(*out, std::move(env));
    return ARCRL_OK;
  } catch (const arcrl::Error& e) {
    return map_error(e);
  } catch (const std::exception& e) {
    return fail(ARCRL_E_INTERNAL, e.what());
  }
}

int arcrl_reset(arcrl_handle h, float* planes, uint8_t* mask, int32_t* info) {
  auto env = lookup(h);
  if (!env) return fail(ARCRL_E_BAD_HANDLE, "unknown or closed handle");
  try {
    const arcrl::Observation obs = env->reset();
    export_observation(obs, env->env().state().finished, planes, mask, info);
    return ARCRL_OK;
  } catch (const arcrl::Error& e) {
    return map_error(e);
  }
}

int arcrl_step(arcrl_handle h, int action, float* planes, uint8_t* mask, int32_t* info,
               double* reward, int* terminated, int* truncated) {
  auto env = lookup(h);
  if (!env) return fail(ARCRL_E_BAD_HANDLE, "unknown or closed handle");
  const auto a = arcrl::action_from_ordinal(action);
  if (!a) return fail(ARCRL_E_INVALID_ACTION, "action ordinal must be in 0..4");
  try {
    const arcrl::StepResult r = env->step(*a);
    export_observation(r.observation, r.outcome, planes, mask, info);
    if (reward) *reward = r.reward;
    if (terminated) {
      *terminated =
          r.outcome == arcrl::Outcome::kSuccess || r.outcome == arcrl::Outcome::kFailSubmissions;
    }
    if (truncated) *truncated = r.outcome == arcrl::Outcome::kFailTimeout;
    return ARCRL_OK;
  } catch (const arcrl::Error& e) {
    return map_error(e);
  }
}

int arcrl_close(arcrl_handle h) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  if (r.envs.erase(h) == 0) return fail(ARCRL_E_BAD_HANDLE, "unknown or closed handle");
  return ARCRL_OK;
}

}  // extern "C"
