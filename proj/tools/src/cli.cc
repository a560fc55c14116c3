#include "arcrl_cli/cli.h"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "arcrl/error.h"
#include "arcrl/harness.h"

namespace arcrl::cli {

namespace {

// Flags shared by train / transfer / eval. Kept as plain values so CLI11 can
// bind to them directly; folded into an ExperimentConfig afterwards.
struct Flags {
  std::string task;
  std::string agent;
  std::optional<std::uint64_t> steps;
  std::uint64_t eval_every = kDefaultEvalEvery;
  std::size_t demos = kDefaultDemoCount;
  std::size_t eval_count = kDefaultEvalCount;
  std::uint64_t seed = 0;
  std::string out;
  std::string save_checkpoint;
  std::string load_checkpoint;
  std::string pretrain_task;
  std::uint64_t pretrain_steps = kDefaultSingleTaskBudget;
  unsigned eval_threads = 1;
  AgentConfig hyper;

  std::string actions;
  std::string actions_file;
};

void add_task_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--task", f.task, "Built-in task name or ARC task JSON path")->required();
  cmd->add_option("--demos", f.demos, "Demo pairs for generated tasks")->capture_default_str();
  cmd->add_option("--eval-count", f.eval_count, "Held-out pairs per evaluation")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed for task generation and training")
      ->capture_default_str();
}

void add_run_flags(CLI::App* cmd, Flags& f) {
  add_task_flags(cmd, f);
  cmd->add_option("--agent", f.agent, "hash-q | seq-policy | wm-planner");
  cmd->add_option("--steps", f.steps, "Training budget in environment steps");
  cmd->add_option("--eval-every", f.eval_every, "Evaluation cadence in environment steps")
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Output directory (default $ARCRL_OUT_DIR, else runs)");
  cmd->add_option("--save-checkpoint", f.save_checkpoint, "Checkpoint path to write");
  cmd->add_option("--load-checkpoint", f.load_checkpoint, "Checkpoint to start from");
  cmd->add_option("--eval-threads", f.eval_threads, "Threads for evaluation episodes")
      ->capture_default_str();
  cmd->add_option("--alpha", f.hyper.alpha, "hash-q learning rate")->capture_default_str();
  cmd->add_option("--gamma", f.hyper.gamma, "hash-q discount")->capture_default_str();
  cmd->add_option("--epsilon-start", f.hyper.epsilon_start)->capture_default_str();
  cmd->add_option("--epsilon-end", f.hyper.epsilon_end)->capture_default_str();
  cmd->add_option("--epsilon-decay-steps", f.hyper.epsilon_decay_steps,
                  "0 = half of the training budget")
      ->capture_default_str();
  cmd->add_option("--eta", f.hyper.eta, "seq-policy step size")->capture_default_str();
  cmd->add_option("--max-len", f.hyper.max_rule_length, "wm-planner rule length bound")
      ->capture_default_str();
}

std::string default_out_dir() {
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "runs";
}

ExperimentConfig to_config(const Flags& f, Protocol protocol) {
  ExperimentConfig c;
  c.protocol = protocol;
  c.task = f.task;
  c.pretrain_task = f.pretrain_task;
  if (!f.agent.empty()) {
    const auto kind = agent_kind_from_name(f.agent);
    if (!kind) {
      throw Error(ErrorCode::kUnknownAgent,
                  "unknown agent '" + f.agent + "' (valid agents: " + valid_agent_names() + ")");
    }
    c.agent_kind = kind;
  }
  c.agent = f.hyper;
  c.agent.seed = f.seed;
  c.train_budget = f.steps.value_or(protocol == Protocol::kTransfer ? kDefaultTransferBudget
                                                                    : kDefaultSingleTaskBudget);
  c.pretrain_budget = f.pretrain_steps;
  c.eval_every = f.eval_every;
  c.demo_count = f.demos;
  c.eval_count = f.eval_count;
  c.seed = f.seed;
  c.load_checkpoint = f.load_checkpoint;
  c.save_checkpoint = f.save_checkpoint;
  c.out_dir = f.out.empty() ? default_out_dir() : f.out;
  c.eval_threads = f.eval_threads;
  return c;
}

int cmd_run(const Flags& f, Protocol protocol, std::ostream& out) {
  const ExperimentResult result = run_experiment(to_config(f, protocol));
  out << result.summary.dump(2) << "\n";
  return 0;
}

int cmd_gen_task(const Flags& f, std::ostream& out) {
  const TaskSpec task = make_builtin_task(f.task, f.demos, f.eval_count, f.seed);
  const std::string text = export_arc_task(task).dump() + "\n";
  if (f.out.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + f.out);
  file << text;
  if (!file) throw Error(ErrorCode::kIo, "failed writing " + f.out);
  return 0;
}

int cmd_eval(const Flags& f, std::ostream& out) {
  const auto cp = AgentCheckpoint::load_file(f.load_checkpoint);
  const auto agent = agent_from_checkpoint(cp);
  const TaskSpec task = resolve_task(f.task, f.demos, f.eval_count, f.seed);
  // ARC files are scored on all their test pairs.
  const std::size_t count = task.rule ? f.eval_count : task.evals.size();
  const double accuracy = evaluate(*agent, task, count, f.eval_threads);
  char acc[16];
  std::snprintf(acc, sizeof acc, "%.4f", accuracy);
  const nlohmann::json doc{
      {"task_id", task.task_id},
      {"agent", std::string(agent_kind_name(agent->kind()))},
      {"checkpoint_env_steps", cp.meta.env_steps},
      {"eval_count", count},
      {"accuracy", nlohmann::json::parse(acc)},
  };
  out << doc.dump(2) << "\n";
  return 0;
}

std::vector<Action> parse_actions(const std::string& text) {
  std::vector<Action> actions;
  std::string token;
  std::istringstream in(text);
  auto flush = [&] {
    if (token.empty()) return;
    std::optional<Action> a = action_from_name(token);
    if (!a && token.find_first_not_of("0123456789") == std::string::npos) {
      a = action_from_ordinal(std::stoi(token));
    }
    if (!a) throw Error(ErrorCode::kInvalidAction, "unknown action '" + token + "'");
    actions.push_back(*a);
    token.clear();
  };
  for (char ch; in.get(ch);) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  return actions;
}

// One JSON line per step; the environment resets itself after each terminal
// step so a long script spans several episodes.
int cmd_replay(const Flags& f, std::ostream& out) {
  std::string script = f.actions;
  if (!f.actions_file.empty()) {
    std::ifstream in(f.actions_file);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + f.actions_file);
    std::stringstream ss;
    ss << in.rdbuf();
    script = ss.str();
  }
  const std::vector<Action> actions = parse_actions(script);
  TaskEnvironment env(resolve_task(f.task, f.demos, f.eval_count, f.seed), f.seed);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!f.out.empty()) {
    file.open(f.out, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIo, "cannot write " + f.out);
    sink = &file;
  }

  env.reset();
  int episode = 0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const StepResult r = env.step(actions[i]);
    const nlohmann::json line{
        {"step", i},
        {"episode", episode},
        {"action", std::string(action_name(actions[i]))},
        {"reward", r.reward},
        {"outcome", std::string(outcome_name(r.outcome))},
        {"terminated", r.outcome == Outcome::kSuccess || r.outcome == Outcome::kFailSubmissions},
        {"truncated", r.outcome == Outcome::kFailTimeout},
        {"grid", grid_to_json(r.observation.grid)},
    };
    *sink << line.dump() << "\n";
    if (is_terminal(r.outcome)) {
      env.reset();
      ++episode;
    }
  }
  if (!*sink) throw Error(ErrorCode::kIo, "failed writing replay output");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Restricted-action ARC environment, agents and experiments", "arcrl"};
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("gen-task", "Write a generated task as ARC JSON");
  add_task_flags(gen, f);
  gen->add_option("--out", f.out, "Output file (default stdout)");

  auto* train = app.add_subcommand("train", "Train one agent on one task");
  add_run_flags(train, f);

  auto* transfer = app.add_subcommand("transfer", "Pretrain or load, then fine-tune on --task");
  add_run_flags(transfer, f);
  transfer->add_option("--pretrain-task", f.pretrain_task, "Task to pretrain on");
  transfer->add_option("--pretrain-steps", f.pretrain_steps, "Pretraining budget")
      ->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Score a checkpoint on held-out pairs");
  add_task_flags(eval, f);
  eval->add_option("--load-checkpoint", f.load_checkpoint, "Checkpoint to score")->required();
  eval->add_option("--eval-threads", f.eval_threads)->capture_default_str();

  auto* replay = app.add_subcommand("replay", "Step a fixed action script, one JSON line per step");
  add_task_flags(replay, f);
  auto* inline_actions =
      replay->add_option("--actions", f.actions, "Comma-separated action names or ordinals");
  replay->add_option("--actions-file", f.actions_file, "File holding the action script")
      ->excludes(inline_actions);
  replay->add_option("--out", f.out, "Output file (default stdout)");

  std::vector<std::string> argv_store{"arcrl"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (gen->parsed()) return cmd_gen_task(f, out);
    if (train->parsed()) return cmd_run(f, Protocol::kSingleTask, out);
    if (transfer->parsed()) return cmd_run(f, Protocol::kTransfer, out);
    if (eval->parsed()) return cmd_eval(f, out);
    if (replay->parsed()) return cmd_replay(f, out);
  } catch (const std::exception& e) {
    err << "arcrl: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace arcrl::cli
