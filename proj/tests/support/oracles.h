#pragma once

// Test-only reference implementations. These deliberately take a different
// route from the library: transforms are integer 2x2 matrices acting on cell
// coordinates (x right, y up) followed by re-normalisation, and rule search
// is exhaustive enumeration followed by a (length, lexicographic) minimum.

#include <algorithm>
#include <array>
#include <climits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "arcrl/env.h"
#include "arcrl/grid.h"
#include "arcrl/task.h"

namespace arcrl::testing {

using Matrix2 = std::array<int, 4>;  // {a, b, c, d}: x' = a x + b y, y' = c x + d y

inline constexpr Matrix2 kRot90Cw{0, 1, -1, 0};
inline constexpr Matrix2 kRot270Cw{0, -1, 1, 0};
inline constexpr Matrix2 kMirrorX{-1, 0, 0, 1};
inline constexpr Matrix2 kMirrorY{1, 0, 0, -1};
inline constexpr Matrix2 kMainDiagonal{0, -1, -1, 0};
inline constexpr Matrix2 kAntiDiagonal{0, 1, 1, 0};

inline Grid reference_transform(const Grid& g, const Matrix2& m) {
  struct Moved {
    int x, y;
    Color color;
  };
  std::vector<Moved> moved;
  int min_x = INT_MAX, max_y = INT_MIN, max_x = INT_MIN, min_y = INT_MAX;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      const int x = j, y = -i;
      const Moved p{m[0] * x + m[1] * y, m[2] * x + m[3] * y, g.at(i, j)};
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
      moved.push_back(p);
    }
  }
  Grid out(max_y - min_y + 1, max_x - min_x + 1);
  for (const auto& p : moved) out.set(max_y - p.y, p.x - min_x, p.color);
  return out;
}

inline Grid reference_action(Action a, const Grid& g) {
  switch (a) {
    case Action::kRotate90: return reference_transform(g, kRot90Cw);
    case Action::kRotate270: return reference_transform(g, kRot270Cw);
    case Action::kFlipH: return reference_transform(g, kMirrorX);
    case Action::kFlipV: return reference_transform(g, kMirrorY);
    case Action::kSubmit: break;
  }
  return g;
}

inline Grid reference_rule(Rule rule, const Grid& g) {
  switch (rule) {
    case Rule::kDiagonalFlipMain: return reference_transform(g, kMainDiagonal);
    case Rule::kDiagonalFlipAnti: return reference_transform(g, kAntiDiagonal);
    case Rule::kRotateCcw: return reference_transform(g, kRot270Cw);
    case Rule::kHorizontalFlip: return reference_transform(g, kMirrorX);
  }
  return g;
}

/// Every sequence over the four transforms with 1..max_len elements that
/// maps all demos correctly, then the shortest, lexicographically least one.
inline std::optional<std::vector<Action>> brute_force_rule(std::span<const GridPair> demos,
                                                           int max_len) {
  std::vector<std::vector<Action>> all;
  std::vector<std::vector<Action>> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Action>> next;
    for (const auto& prefix : frontier) {
      for (Action a : kTransformActions) {
        auto seq = prefix;
        seq.push_back(a);
        next.push_back(seq);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<std::vector<Action>> fits;
  for (const auto& seq : all) {
    bool ok = true;
    for (const auto& d : demos) {
      Grid g = d.input;
      for (Action a : seq) g = reference_action(a, g);
      if (g != d.output) {
        ok = false;
        break;
      }
    }
    if (ok) fits.push_back(seq);
  }
  if (fits.empty()) return std::nullopt;
  return *std::min_element(fits.begin(), fits.end(), [](const auto& l, const auto& r) {
    if (l.size() != r.size()) return l.size() < r.size();
    return std::lexicographical_compare(l.begin(), l.end(), r.begin(), r.end(),
                                        [](Action x, Action y) { return ordinal(x) < ordinal(y); });
  });
}

inline Grid random_grid(std::mt19937_64& gen, int rows, int cols) {
  std::uniform_int_distribution<int> color(0, kNumColors - 1);
  Grid g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g.set(i, j, static_cast<Color>(color(gen)));
  }
  return g;
}

inline Grid random_square_grid(std::mt19937_64& gen, int min_side = 1, int max_side = kMaxSide) {
  const int n = std::uniform_int_distribution<int>(min_side, max_side)(gen);
  return random_grid(gen, n, n);
}

}  // namespace arcrl::testing
