#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace arcrl {

using Color = std::uint8_t;

inline constexpr int kNumColors = 10;
inline constexpr int kMaxSide = 30;

/// Rectangular ARC color grid, row-major. Always 1..30 per side with every
/// cell in 0..9; constructors reject anything else.
class Grid {
 public:
  Grid(int rows, int cols, std::vector<Color> cells);
  Grid(int rows, int cols, Color fill = 0);
  Grid(std::initializer_list<std::initializer_list<int>> rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Color at(int r, int c) const { return cells_[index(r, c)]; }
  void set(int r, int c, Color value);

  std::span<const Color> cells() const noexcept { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int r, int c) const noexcept {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_;
  int cols_;
  std::vector<Color> cells_;
};

// Geometric transforms. Rotations are clockwise by the named angle, so
// rotate270 is one counterclockwise quarter-turn.
Grid rotate90(const Grid& g);
Grid rotate270(const Grid& g);
Grid flip_h(const Grid& g);
Grid flip_v(const Grid& g);
Grid transpose(const Grid& g);
Grid anti_transpose(const Grid& g);

/// FNV-1a over (rows, cols, cells). Stable across runs and platforms.
std::uint64_t grid_digest(const Grid& g);

// ARC JSON grid fragment: outer array = rows, inner arrays = colors.
Grid grid_from_json(const nlohmann::json& value);
nlohmann::json grid_to_json(const Grid& g);
Grid parse_grid(std::string_view text);
std::string emit_grid(const Grid& g);

std::array<int, kNumColors> color_histogram(const Grid& g);

}  // namespace arcrl
