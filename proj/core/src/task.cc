#include "arcrl/task.h"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "arcrl/error.h"

namespace arcrl {

namespace {

// Substream tags keep demo and eval draws independent of each other's counts.
constexpr std::uint64_t kDemoStreamTag = 1;
constexpr std::uint64_t kEvalStreamTag = 2;

constexpr std::array<std::pair<Rule, std::string_view>, 4> kRuleNames{{
    {Rule::kDiagonalFlipMain, "diagonal-flip-main"},
    {Rule::kDiagonalFlipAnti, "diagonal-flip-anti"},
    {Rule::kRotateCcw, "rotate-ccw"},
    {Rule::kHorizontalFlip, "horizontal-flip"},
}};

const std::array<BuiltinTask, 6> kBuiltins{{
    {"flip-d-3x3", Rule::kDiagonalFlipMain, SizeSpec::fixed(3)},
    {"flip-d-NxN", Rule::kDiagonalFlipMain,
     SizeSpec::varying(kDefaultVaryingMin, kDefaultVaryingMax)},
    {"rotate-ccw-3x3", Rule::kRotateCcw, SizeSpec::fixed(3)},
    {"flip-h-NxN", Rule::kHorizontalFlip,
     SizeSpec::varying(kDefaultVaryingMin, kDefaultVaryingMax)},
    {"flip-a-3x3", Rule::kDiagonalFlipAnti, SizeSpec::fixed(3)},
    {"flip-a-NxN", Rule::kDiagonalFlipAnti,
     SizeSpec::varying(kDefaultVaryingMin, kDefaultVaryingMax)},
}};

GridPair parse_pair(const nlohmann::json& entry) {
  if (!entry.is_object() || !entry.contains("input") || !entry.contains("output")) {
    throw Error(ErrorCode::kMalformedTask, "pair must be an object with input and output");
  }
  return GridPair{grid_from_json(entry.at("input")), grid_from_json(entry.at("output"))};
}

std::vector<GridPair> parse_pairs(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw Error(ErrorCode::kMalformedTask, std::string("missing \"") + key + "\" array");
  }
  const auto& arr = doc.at(key);
  if (!arr.is_array()) {
    throw Error(ErrorCode::kMalformedTask, std::string("\"") + key + "\" must be an array");
  }
  std::vector<GridPair> out;
  out.reserve(arr.size());
  for (const auto& entry : arr) out.push_back(parse_pair(entry));
  return out;
}

}  // namespace

void SizeSpec::invalid_size() {
  throw Error(ErrorCode::kInvalidConfig, "square side range must satisfy 1 <= min <= max <= 30");
}

std::string_view rule_name(Rule rule) {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "unknown";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& [r, n] : kRuleNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

Grid apply_rule(Rule rule, const Grid& g) {
  switch (rule) {
    case Rule::kDiagonalFlipMain: return transpose(g);
    case Rule::kDiagonalFlipAnti: return anti_transpose(g);
    case Rule::kRotateCcw: return rotate270(g);
    case Rule::kHorizontalFlip: return flip_h(g);
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown rule");
}

Grid sample_grid(const SizeSpec& size, Rule rule, Rng& rng) {
  for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    const int n = size.is_fixed() ? size.min_side()
                                  : rng.uniform_int(size.min_side(), size.max_side());
    std::vector<Color> cells(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (auto& c : cells) c = static_cast<Color>(rng.below(kNumColors));
    Grid g(n, n, std::move(cells));
    if (apply_rule(rule, g) != g) return g;
  }
  throw Error(ErrorCode::kSamplingExhausted,
              "no grid with rule(g) != g after " + std::to_string(kMaxSampleAttempts) +
                  " attempts");
}

TaskSpec generate_task(Rule rule, const SizeSpec& size, std::size_t n_demos,
                       std::size_t n_evals, std::uint64_t seed, std::string task_id) {
  if (n_demos < 1) throw Error(ErrorCode::kInvalidConfig, "n_demos must be >= 1");
  TaskSpec task;
  task.task_id = task_id.empty() ? std::string(rule_name(rule)) : std::move(task_id);
  task.rule = rule;
  task.seed = seed;

  Rng demo_rng = Rng::substream(seed, kDemoStreamTag);
  task.demos.reserve(n_demos);
  for (std::size_t i = 0; i < n_demos; ++i) {
    Grid g = sample_grid(size, rule, demo_rng);
    Grid out = apply_rule(rule, g);
    task.demos.push_back({std::move(g), std::move(out)});
  }

  Rng eval_rng = Rng::substream(seed, kEvalStreamTag);
  std::unordered_set<std::uint64_t> seen;
  task.evals.reserve(n_evals);
  while (task.evals.size() < n_evals) {
    int rejects = 0;
    for (;;) {
      Grid g = sample_grid(size, rule, eval_rng);
      const std::uint64_t key = grid_digest(g);
      const bool dup = seen.contains(key) &&
                       std::any_of(task.evals.begin(), task.evals.end(),
                                   [&g](const GridPair& p) { return p.input == g; });
      if (!dup) {
        seen.insert(key);
        Grid out = apply_rule(rule, g);
        task.evals.push_back({std::move(g), std::move(out)});
        break;
      }
      if (++rejects >= kMaxSampleAttempts) {
        throw Error(ErrorCode::kSamplingExhausted,
                    "cannot draw " + std::to_string(n_evals) + " distinct eval inputs");
      }
    }
  }
  return task;
}

std::uint64_t TaskSpec::demo_fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ demos.size();
  for (const auto& p : demos) {
    h = (h ^ grid_digest(p.input)) * 0x100000001b3ULL;
    h = (h ^ grid_digest(p.output)) * 0x100000001b3ULL;
  }
  return h;
}

std::span<const BuiltinTask> builtin_tasks() { return kBuiltins; }

std::optional<BuiltinTask> find_builtin_task(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (b.name == name) return b;
  }
  return std::nullopt;
}

TaskSpec make_builtin_task(std::string_view name, std::size_t n_demos, std::size_t n_evals,
                           std::uint64_t seed) {
  const auto builtin = find_builtin_task(name);
  if (!builtin) {
    std::string valid;
    for (const auto& b : kBuiltins) {
      if (!valid.empty()) valid += ", ";
      valid += b.name;
    }
    throw Error(ErrorCode::kUnknownTask,
                "unknown task '" + std::string(name) + "' (built-in tasks: " + valid + ")");
  }
  return generate_task(builtin->rule, builtin->size, n_demos, n_evals, seed,
                       std::string(builtin->name));
}

TaskSpec load_arc_task(const nlohmann::json& document, std::string task_id) {
  if (!document.is_object()) {
    throw Error(ErrorCode::kMalformedTask, "task document must be a JSON object");
  }
  TaskSpec task;
  task.task_id = std::move(task_id);
  task.demos = parse_pairs(document, "train");
  task.evals = parse_pairs(document, "test");
  return task;
}

TaskSpec load_arc_task_text(std::string_view text, std::string task_id) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedTask, e.what());
  }
  return load_arc_task(doc, std::move(task_id));
}

TaskSpec load_arc_task_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read task file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_arc_task_text(buf.str(), std::filesystem::path(path).stem().string());
}

nlohmann::json export_arc_task(const TaskSpec& task) {
  auto pairs = [](const std::vector<GridPair>& src) {
    auto arr = nlohmann::json::array();
    for (const auto& p : src) {
      arr.push_back({{"input", grid_to_json(p.input)}, {"output", grid_to_json(p.output)}});
    }
    return arr;
  };
  return {{"train", pairs(task.demos)}, {"test", pairs(task.evals)}};
}

double demo_eval_overlap(const TaskSpec& task) {
  if (task.evals.empty()) return 0.0;
  std::unordered_set<std::uint64_t> demo_keys;
  for (const auto& p : task.demos) demo_keys.insert(grid_digest(p.input));
  std::size_t overlap = 0;
  for (const auto& e : task.evals) {
    if (!demo_keys.contains(grid_digest(e.input))) continue;
    const bool exact = std::any_of(task.demos.begin(), task.demos.end(),
                                   [&e](const GridPair& d) { return d.input == e.input; });
    if (exact) ++overlap;
  }
  return static_cast<double>(overlap) / static_cast<double>(task.evals.size());
}

}  // namespace arcrl
