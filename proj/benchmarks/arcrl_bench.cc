#include <benchmark/benchmark.h>

#include <random>

#include "arcrl/harness.h"
#include "arcrl/wm_planner_agent.h"

namespace arcrl {
namespace {

Grid random_grid(int side, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Color> cells(static_cast<std::size_t>(side * side));
  for (auto& c : cells) c = static_cast<Color>(gen() % kNumColors);
  return Grid(side, side, std::move(cells));
}

void BM_Transform(benchmark::State& state) {
  const Grid g = random_grid(static_cast<int>(state.range(0)), 1);
  const Action a = static_cast<Action>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(apply_action(a, g));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Transform)->ArgsProduct({{3, 10, 30}, {0, 1, 2, 3}});

// Scripted policy; this is the loop the throughput target is stated for.
void BM_EnvStep(benchmark::State& state) {
  const Grid input = random_grid(static_cast<int>(state.range(0)), 2);
  const GridPair pair{input, transpose(input)};
  constexpr std::array<Action, 5> script{Action::kRotate90, Action::kFlipH, Action::kFlipV,
                                         Action::kRotate270, Action::kSubmit};
  ArcEnv env;
  env.reset(pair);
  std::size_t i = 0;
  for (auto _ : state) {
    const StepResult r = env.step(script[i++ % script.size()]);
    if (is_terminal(r.outcome)) env.reset(pair);
    benchmark::DoNotOptimize(r.reward);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnvStep)->Arg(3)->Arg(10)->Arg(30);

void BM_OneHot(benchmark::State& state) {
  const Observation obs{random_grid(30, 3)};
  std::vector<float> planes(Observation::kTensorSize);
  for (auto _ : state) {
    obs.write_one_hot(planes);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_OneHot);

void BM_InduceRule(benchmark::State& state) {
  WmPlannerAgent planner{AgentConfig{}};
  const Grid probe = random_grid(4, 4);
  for (Action a : kTransformActions) {
    planner.mutable_model().learn(probe, a, apply_action(a, probe));
  }
  // Anti-diagonal needs a length-2 sequence; a recolor rule exhausts all 340.
  const bool exhaust = state.range(0) == 1;
  TaskSpec task = make_builtin_task("flip-a-NxN", 20, 1, 5);
  if (exhaust) task.demos = {{Grid{{1, 2}, {3, 4}}, Grid{{5, 5}, {5, 5}}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_rule(planner.model(), task.demos, 4));
  }
}
BENCHMARK(BM_InduceRule)->Arg(0)->Arg(1);

void BM_TrainHashQ(benchmark::State& state) {
  const TaskSpec task = make_builtin_task("flip-d-3x3", 100, 1, 6);
  RunOptions opts;
  opts.budget = 10'000;
  opts.eval_every = opts.budget;
  opts.eval_count = 1;
  for (auto _ : state) {
    auto agent = make_agent(AgentKind::kHashQ, AgentConfig{});
    benchmark::DoNotOptimize(run_single_task(*agent, task, opts));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(opts.budget));
}
BENCHMARK(BM_TrainHashQ)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace arcrl

BENCHMARK_MAIN();
