#include "arcrl/harness.h"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "arcrl/error.h"

namespace arcrl {

namespace {

constexpr std::uint64_t kPretrainSeedTag = 0x70726574;

double round4(double x) { return std::round(x * 10000.0) / 10000.0; }

std::string protocol_name(Protocol p) {
  return p == Protocol::kSingleTask ? "single-task" : "transfer";
}

bool looks_like_file(const std::string& source) {
  return source.find('/') != std::string::npos ||
         (source.size() > 5 && source.ends_with(".json"));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return Rng::substream(seed, tag).next();
}

}  // namespace

std::optional<std::uint64_t> CurveSeries::steps_to_first_perfect() const {
  for (const auto& s : samples) {
    if (s.accuracy >= 1.0) return s.env_steps;
  }
  return std::nullopt;
}

Outcome play_greedy_episode(Agent& agent, const DemoView& demos, const GridPair& pair) {
  ArcEnv env;
  Observation obs = env.reset(pair);
  agent.begin_episode(obs, demos);
  Outcome outcome = env.state().finished;
  while (!is_terminal(outcome)) {
    const Action a = agent.select_action(obs, Mode::kGreedy);
    StepResult result = env.step(a);
    outcome = result.outcome;
    obs = std::move(result.observation);
  }
  agent.end_episode();
  return outcome;
}

double evaluate_pairs(const Agent& agent, const DemoView& demos,
                      std::span<const GridPair> pairs, unsigned threads) {
  if (pairs.empty()) return 0.0;
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(pairs.size()));

  auto run_slice = [&](unsigned worker) {
    auto frozen = agent.snapshot();
    std::size_t solved = 0;
    for (std::size_t i = worker; i < pairs.size(); i += threads) {
      if (play_greedy_episode(*frozen, demos, pairs[i]) == Outcome::kSuccess) ++solved;
    }
    return solved;
  };

  std::size_t solved = 0;
  if (threads == 1) {
    solved = run_slice(0);
  } else {
    std::vector<std::size_t> per_worker(threads, 0);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] { per_worker[w] = run_slice(w); });
    }
    for (auto& t : workers) t.join();
    for (std::size_t n : per_worker) solved += n;
  }
  return static_cast<double>(solved) / static_cast<double>(pairs.size());
}

double evaluate(const Agent& agent, const TaskSpec& task, std::size_t eval_count,
                unsigned threads) {
  if (eval_count == 0 || task.evals.size() < eval_count) {
    throw Error(ErrorCode::kInsufficientEvalPairs,
                "task '" + task.task_id + "' has " + std::to_string(task.evals.size()) +
                    " eval pairs, " + std::to_string(eval_count) + " requested");
  }
  return evaluate_pairs(agent, DemoView::of(task),
                        std::span(task.evals).first(eval_count), threads);
}

CurveSeries run_single_task(Agent& agent, const TaskSpec& task, const RunOptions& options,
                            TrainingStats* stats) {
  if (options.budget == 0) throw Error(ErrorCode::kInvalidConfig, "training budget must be > 0");
  if (options.eval_every == 0) throw Error(ErrorCode::kInvalidConfig, "eval_every must be > 0");
  if (task.evals.size() < options.eval_count || options.eval_count == 0) {
    throw Error(ErrorCode::kInsufficientEvalPairs,
                "task '" + task.task_id + "' has " + std::to_string(task.evals.size()) +
                    " eval pairs, " + std::to_string(options.eval_count) + " requested");
  }

  CurveSeries curve;
  curve.task_id = task.task_id;
  curve.agent_kind = agent.kind();
  curve.seed = options.seed;
  curve.budget = options.budget;

  const DemoView demos = DemoView::of(task);
  const auto held_out = std::span(task.evals).first(options.eval_count);
  auto sample = [&](std::uint64_t steps) {
    curve.samples.push_back({steps, evaluate_pairs(agent, demos, held_out, options.eval_threads)});
  };

  TrainingStats local;
  TaskEnvironment env(task, options.seed);
  agent.begin_training(options.budget);
  if (options.sample_at_zero) sample(0);

  std::uint64_t next_sample = options.eval_every;
  while (local.env_steps < options.budget) {
    Observation obs = env.reset();
    agent.begin_episode(obs, demos);
    ++local.episodes;
    for (;;) {
      const Action a = agent.select_action(obs, Mode::kExplore);
      StepResult result = env.step(a);
      ++local.env_steps;
      agent.observe_transition(
          Transition{obs, a, result.reward, result.observation, result.outcome});
      obs = std::move(result.observation);
      if (local.env_steps == next_sample) {
        sample(local.env_steps);
        next_sample += options.eval_every;
      }
      if (result.outcome == Outcome::kSuccess) ++local.successes;
      if (is_terminal(result.outcome) || local.env_steps == options.budget) break;
    }
    agent.end_episode();
  }
  if (curve.samples.empty() || curve.samples.back().env_steps != local.env_steps) {
    sample(local.env_steps);
  }
  if (stats) *stats = local;
  return curve;
}

TransferRun run_transfer(const AgentCheckpoint& pretrained, const TaskSpec& target,
                         const RunOptions& options) {
  TransferRun run;
  run.agent = agent_from_checkpoint(pretrained);
  RunOptions adapt = options;
  adapt.sample_at_zero = true;
  run.curve = run_single_task(*run.agent, target, adapt, &run.stats);
  run.zero_shot_accuracy = run.curve.samples.front().accuracy;
  return run;
}

void ExperimentConfig::validate() const {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::kInvalidConfig, why); };
  if (task.empty()) bad("a task is required");
  if (train_budget == 0) bad("training budget must be > 0");
  if (eval_every == 0) bad("eval_every must be > 0");
  if (demo_count == 0) bad("demo count must be >= 1");
  if (eval_count == 0) bad("eval count must be >= 1");
  if (protocol == Protocol::kTransfer) {
    if (load_checkpoint.empty() && pretrain_task.empty()) {
      bad("transfer needs --load-checkpoint or --pretrain-task");
    }
    if (load_checkpoint.empty() && pretrain_budget == 0) bad("pretrain budget must be > 0");
    if (load_checkpoint.empty() && !agent_kind) bad("pretraining needs an agent kind");
  } else if (!agent_kind && load_checkpoint.empty()) {
    bad("an agent kind is required");
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j{
      {"protocol", protocol_name(protocol)},
      {"task", task},
      {"agent", agent_kind ? std::string(agent_kind_name(*agent_kind)) : std::string()},
      {"agent_config", agent.to_json()},
      {"train_budget", train_budget},
      {"eval_every", eval_every},
      {"demo_count", demo_count},
      {"eval_count", eval_count},
      {"seed", seed},
  };
  if (protocol == Protocol::kTransfer) {
    j["pretrain_task"] = pretrain_task;
    j["pretrain_budget"] = pretrain_budget;
    j["load_checkpoint"] = load_checkpoint;
  }
  return j;
}

TaskSpec resolve_task(const std::string& source, std::size_t demo_count, std::size_t eval_count,
                      std::uint64_t seed) {
  if (find_builtin_task(source)) return make_builtin_task(source, demo_count, eval_count, seed);
  if (looks_like_file(source)) return load_arc_task_file(source);
  return make_builtin_task(source, demo_count, eval_count, seed);  // throws UnknownTask
}

namespace {

std::size_t effective_eval_count(const ExperimentConfig& config, const TaskSpec& task) {
  if (!task.rule && config.eval_all_file_pairs) return task.evals.size();
  return config.eval_count;
}

nlohmann::json curve_summary(const CurveSeries& curve, const TrainingStats& stats) {
  const auto first = curve.steps_to_first_perfect();
  return {
      {"task_id", curve.task_id},
      {"agent", std::string(agent_kind_name(curve.agent_kind))},
      {"samples", curve.samples.size()},
      {"env_steps", stats.env_steps},
      {"episodes", stats.episodes},
      {"training_successes", stats.successes},
      {"final_accuracy", round4(curve.final_accuracy())},
      {"steps_to_first_perfect", first ? nlohmann::json(*first) : nlohmann::json("never")},
  };
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create directory " + dir + ": " + ec.message());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;

  TaskSpec task = resolve_task(config.task, config.demo_count, config.eval_count, config.seed);
  RunOptions options;
  options.budget = config.train_budget;
  options.eval_every = config.eval_every;
  options.eval_count = effective_eval_count(config, task);
  options.seed = config.seed;
  options.eval_threads = config.eval_threads;

  nlohmann::json summary{
      {"protocol", protocol_name(config.protocol)},
      {"config", config.to_json()},
      {"demo_eval_overlap", round4(demo_eval_overlap(task))},
  };

  std::unique_ptr<Agent> trained;
  if (config.protocol == Protocol::kSingleTask) {
    if (!config.load_checkpoint.empty()) {
      const auto cp = AgentCheckpoint::load_file(config.load_checkpoint);
      if (config.agent_kind && cp.kind != *config.agent_kind) {
        throw Error(ErrorCode::kCheckpointKindMismatch,
                    "checkpoint holds '" + std::string(agent_kind_name(cp.kind)) + "'");
      }
      trained = agent_from_checkpoint(cp);
    } else {
      trained = make_agent(*config.agent_kind, config.agent);
    }
    TrainingStats stats;
    result.curve = run_single_task(*trained, task, options, &stats);
    summary["run"] = curve_summary(result.curve, stats);
  } else {
    AgentCheckpoint pretrained;
    if (!config.load_checkpoint.empty()) {
      pretrained = AgentCheckpoint::load_file(config.load_checkpoint);
      if (config.agent_kind && pretrained.kind != *config.agent_kind) {
        throw Error(ErrorCode::kCheckpointKindMismatch,
                    "checkpoint holds '" + std::string(agent_kind_name(pretrained.kind)) +
                        "', requested '" + std::string(agent_kind_name(*config.agent_kind)) +
                        "'");
      }
      summary["pretrain"] = {{"checkpoint", config.load_checkpoint},
                             {"env_steps", pretrained.meta.env_steps}};
    } else {
      TaskSpec source = resolve_task(config.pretrain_task, config.demo_count, config.eval_count,
                                     config.seed);
      RunOptions pre = options;
      pre.budget = config.pretrain_budget;
      pre.eval_count = effective_eval_count(config, source);
      pre.seed = derive_seed(config.seed, kPretrainSeedTag);
      auto agent = make_agent(*config.agent_kind, config.agent);
      TrainingStats stats;
      result.pretrain_curve = run_single_task(*agent, source, pre, &stats);
      summary["pretrain"] = curve_summary(*result.pretrain_curve, stats);
      pretrained = agent->save();
    }
    TransferRun run = run_transfer(pretrained, task, options);
    result.curve = std::move(run.curve);
    trained = std::move(run.agent);
    summary["run"] = curve_summary(result.curve, run.stats);
    summary["zero_shot_accuracy"] = round4(run.zero_shot_accuracy);
    if (trained->kind() == AgentKind::kWmPlanner) {
      summary["notes"] = nlohmann::json::array(
          {"wm-planner rules are sequences of whole-grid transforms and do not depend on grid "
           "size, so zero-shot transfer between sizes of the same rule is exact in both "
           "directions; no size-transfer asymmetry is expected from this agent."});
    }
  }

  result.checkpoint = trained->save();
  result.summary = std::move(summary);

  if (!config.out_dir.empty()) {
    ensure_dir(config.out_dir);
    const std::filesystem::path out(config.out_dir);
    write_curves_file(result.curve, (out / "curves.csv").string());
    if (result.pretrain_curve) {
      write_curves_file(*result.pretrain_curve, (out / "pretrain_curves.csv").string());
    }
    write_summary_file(result.summary, (out / "summary.json").string());
    const std::string cp_path = config.save_checkpoint.empty()
                                    ? (out / "checkpoint.json").string()
                                    : config.save_checkpoint;
    result.checkpoint.save_file(cp_path);
  } else if (!config.save_checkpoint.empty()) {
    result.checkpoint.save_file(config.save_checkpoint);
  }
  return result;
}

void write_curves(const CurveSeries& curve, std::ostream& out) {
  out << "env_steps,accuracy\n";
  char line[64];
  for (const auto& s : curve.samples) {
    std::snprintf(line, sizeof line, "%" PRIu64 ",%.4f\n", s.env_steps, s.accuracy);
    out << line;
  }
}

void write_curves_file(const CurveSeries& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  write_curves(curve, out);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

void write_summary_file(const nlohmann::json& summary, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << summary.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

}  // namespace arcrl
