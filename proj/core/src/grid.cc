#include "arcrl/grid.h"

#include <string>

#include "arcrl/error.h"

namespace arcrl {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRaggedRows: return "RaggedRows";
    case ErrorCode::kColorOutOfRange: return "ColorOutOfRange";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kGridTooLarge: return "GridTooLarge";
    case ErrorCode::kMalformedGrid: return "MalformedGrid";
    case ErrorCode::kMalformedTask: return "MalformedTask";
    case ErrorCode::kSamplingExhausted: return "SamplingExhausted";
    case ErrorCode::kUnknownTask: return "UnknownTask";
    case ErrorCode::kEmptyTask: return "EmptyTask";
    case ErrorCode::kStepAfterTermination: return "StepAfterTermination";
    case ErrorCode::kInvalidAction: return "InvalidAction";
    case ErrorCode::kLifecycleViolation: return "LifecycleViolation";
    case ErrorCode::kCheckpointKindMismatch: return "CheckpointKindMismatch";
    case ErrorCode::kCheckpointVersion: return "CheckpointVersion";
    case ErrorCode::kMalformedCheckpoint: return "MalformedCheckpoint";
    case ErrorCode::kContradictorySample: return "ContradictorySample";
    case ErrorCode::kNoRuleFound: return "NoRuleFound";
    case ErrorCode::kModelIncomplete: return "ModelIncomplete";
    case ErrorCode::kUnknownAgent: return "UnknownAgent";
    case ErrorCode::kInsufficientEvalPairs: return "InsufficientEvalPairs";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

void check_dims(int rows, int cols) {
  if (rows <= 0 || cols <= 0) {
    throw Error(ErrorCode::kEmptyGrid, "grid must have at least one row and one column");
  }
  if (rows > kMaxSide || cols > kMaxSide) {
    throw Error(ErrorCode::kGridTooLarge,
                std::to_string(rows) + "x" + std::to_string(cols) + " exceeds " +
                    std::to_string(kMaxSide) + " per side");
  }
}

void check_color(long long value) {
  if (value < 0 || value >= kNumColors) {
    throw Error(ErrorCode::kColorOutOfRange, "color " + std::to_string(value) + " not in 0..9");
  }
}

}  // namespace

Grid::Grid(int rows, int cols, std::vector<Color> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  check_dims(rows, cols);
  if (cells_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error(ErrorCode::kMalformedGrid, "cell count does not match dimensions");
  }
  for (Color c : cells_) check_color(c);
}

Grid::Grid(int rows, int cols, Color fill) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  check_color(fill);
  cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

Grid::Grid(std::initializer_list<std::initializer_list<int>> rows)
    : rows_(static_cast<int>(rows.size())),
      cols_(rows.size() == 0 ? 0 : static_cast<int>(rows.begin()->size())) {
  check_dims(rows_, cols_);
  cells_.reserve(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) {
      throw Error(ErrorCode::kRaggedRows, "rows differ in length");
    }
    for (int v : row) {
      check_color(v);
      cells_.push_back(static_cast<Color>(v));
    }
  }
}

void Grid::set(int r, int c, Color value) {
  check_color(value);
  cells_[index(r, c)] = value;
}

// Each transform fills the output row-major, reading the input cell named by
// its index formula (0-based, r = input rows, c = input cols).

namespace {

template <typename Source>
Grid remap(const Grid& g, int out_rows, int out_cols, Source source) {
  std::vector<Color> out(static_cast<std::size_t>(out_rows) * static_cast<std::size_t>(out_cols));
  const auto in = g.cells();
  const std::size_t in_cols = static_cast<std::size_t>(g.cols());
  std::size_t k = 0;
  for (int i = 0; i < out_rows; ++i) {
    for (int j = 0; j < out_cols; ++j) {
      const auto [r, c] = source(i, j);
      out[k++] = in[static_cast<std::size_t>(r) * in_cols + static_cast<std::size_t>(c)];
    }
  }
  return Grid(out_rows, out_cols, std::move(out));
}

}  // namespace

Grid rotate90(const Grid& g) {
  const int r = g.rows();
  return remap(g, g.cols(), r, [r](int i, int j) { return std::pair{r - 1 - j, i}; });
}

Grid rotate270(const Grid& g) {
  const int c = g.cols();
  return remap(g, c, g.rows(), [c](int i, int j) { return std::pair{j, c - 1 - i}; });
}

Grid flip_h(const Grid& g) {
  const int c = g.cols();
  return remap(g, g.rows(), c, [c](int i, int j) { return std::pair{i, c - 1 - j}; });
}

Grid flip_v(const Grid& g) {
  const int r = g.rows();
  return remap(g, r, g.cols(), [r](int i, int j) { return std::pair{r - 1 - i, j}; });
}

Grid transpose(const Grid& g) {
  return remap(g, g.cols(), g.rows(), [](int i, int j) { return std::pair{j, i}; });
}

Grid anti_transpose(const Grid& g) {
  const int r = g.rows();
  const int c = g.cols();
  return remap(g, c, r, [r, c](int i, int j) { return std::pair{r - 1 - j, c - 1 - i}; });
}

std::uint64_t grid_digest(const Grid& g) {
  constexpr std::uint64_t kOffset = 14695981039346656037ULL;
  constexpr std::uint64_t kPrime = 1099511628211ULL;
  std::uint64_t h = kOffset;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= kPrime;
  };
  mix(static_cast<std::uint8_t>(g.rows()));
  mix(static_cast<std::uint8_t>(g.cols()));
  for (Color c : g.cells()) mix(c);
  return h;
}

Grid grid_from_json(const nlohmann::json& value) {
  if (!value.is_array()) {
    throw Error(ErrorCode::kMalformedGrid, "grid must be an array of rows");
  }
  if (value.empty()) throw Error(ErrorCode::kEmptyGrid, "grid has no rows");
  const std::size_t rows = value.size();
  if (!value[0].is_array()) {
    throw Error(ErrorCode::kMalformedGrid, "grid rows must be arrays");
  }
  const std::size_t cols = value[0].size();
  if (cols == 0) throw Error(ErrorCode::kEmptyGrid, "grid has an empty row");
  std::vector<Color> cells;
  cells.reserve(rows * cols);
  for (const auto& row : value) {
    if (!row.is_array()) throw Error(ErrorCode::kMalformedGrid, "grid rows must be arrays");
    if (row.size() != cols) throw Error(ErrorCode::kRaggedRows, "rows differ in length");
    for (const auto& cell : row) {
      if (!cell.is_number_integer()) {
        throw Error(ErrorCode::kMalformedGrid, "grid cells must be integers");
      }
      check_color(cell.get<long long>());
      cells.push_back(static_cast<Color>(cell.get<int>()));
    }
  }
  if (rows > kMaxSide || cols > kMaxSide) {
    throw Error(ErrorCode::kGridTooLarge,
                std::to_string(rows) + "x" + std::to_string(cols) + " exceeds 30 per side");
  }
  return Grid(static_cast<int>(rows), static_cast<int>(cols), std::move(cells));
}

nlohmann::json grid_to_json(const Grid& g) {
  auto out = nlohmann::json::array();
  for (int r = 0; r < g.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < g.cols(); ++c) row.push_back(static_cast<int>(g.at(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Grid parse_grid(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedGrid, e.what());
  }
  return grid_from_json(doc);
}

std::string emit_grid(const Grid& g) { return grid_to_json(g).dump(); }

std::array<int, kNumColors> color_histogram(const Grid& g) {
  std::array<int, kNumColors> hist{};
  for (Color c : g.cells()) ++hist[c];
  return hist;
}

}  // namespace arcrl
