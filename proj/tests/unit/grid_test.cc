#include "arcrl/grid.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "arcrl/error.h"
#include "support/oracles.h"

namespace arcrl {
namespace {

using testing::random_grid;
using testing::random_square_grid;
using testing::reference_transform;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an arcrl::Error";
  return ErrorCode::kIo;
}

TEST(GridTest, RejectsBadShapesAndColors) {
  EXPECT_EQ(code_of([] { Grid(0, 3); }), ErrorCode::kEmptyGrid);
  EXPECT_EQ(code_of([] { Grid(31, 1); }), ErrorCode::kGridTooLarge);
  EXPECT_EQ(code_of([] { Grid({{1, 2}, {3}}); }), ErrorCode::kRaggedRows);
  EXPECT_EQ(code_of([] { Grid({{10}}); }), ErrorCode::kColorOutOfRange);
  EXPECT_EQ(code_of([] { Grid(1, 2, std::vector<Color>{1}); }), ErrorCode::kMalformedGrid);
}

TEST(GridTest, Rotate90Examples) {
  EXPECT_EQ(rotate90(Grid{{1, 2}, {3, 4}}), (Grid{{3, 1}, {4, 2}}));
  EXPECT_EQ(rotate90(Grid{{5}}), (Grid{{5}}));
  // Frozen from the coordinate-matrix oracle.
  const Grid wide{{1, 2, 3}, {4, 5, 6}};
  const Grid expected{{4, 1}, {5, 2}, {6, 3}};
  ASSERT_EQ(reference_transform(wide, testing::kRot90Cw), expected);
  EXPECT_EQ(rotate90(wide), expected);
}

TEST(GridTest, Rotate270Examples) {
  EXPECT_EQ(rotate270(Grid{{1, 2}, {3, 4}}), (Grid{{2, 4}, {1, 3}}));
  EXPECT_EQ(rotate270(Grid{{5}}), (Grid{{5}}));
  EXPECT_EQ(rotate270(rotate90(Grid{{1, 2}, {3, 4}})), (Grid{{1, 2}, {3, 4}}));
}

TEST(GridTest, FlipExamples) {
  EXPECT_EQ(flip_h(Grid{{1, 2}, {3, 4}}), (Grid{{2, 1}, {4, 3}}));
  EXPECT_EQ(flip_h(Grid{{7, 7}, {7, 7}}), (Grid{{7, 7}, {7, 7}}));
  EXPECT_EQ(flip_v(Grid{{1, 2}, {3, 4}}), (Grid{{3, 4}, {1, 2}}));
  EXPECT_EQ(flip_v(Grid{{5}}), (Grid{{5}}));
}

TEST(GridTest, DiagonalExamples) {
  EXPECT_EQ(transpose(Grid{{1, 2}, {3, 4}}), (Grid{{1, 3}, {2, 4}}));
  EXPECT_EQ(flip_h(rotate90(Grid{{1, 2}, {3, 4}})), (Grid{{1, 3}, {2, 4}}));
  EXPECT_EQ(transpose(Grid{{5}}), (Grid{{5}}));
  EXPECT_EQ(anti_transpose(Grid{{1, 2}, {3, 4}}), (Grid{{4, 2}, {3, 1}}));
  EXPECT_EQ(anti_transpose(Grid{{5}}), (Grid{{5}}));
}

TEST(GridTest, TransformsMatchCoordinateOracleOnRectangles) {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> side(1, kMaxSide);
  for (int trial = 0; trial < 300; ++trial) {
    const Grid g = random_grid(gen, side(gen), side(gen));
    ASSERT_EQ(rotate90(g), reference_transform(g, testing::kRot90Cw));
    ASSERT_EQ(rotate270(g), reference_transform(g, testing::kRot270Cw));
    ASSERT_EQ(flip_h(g), reference_transform(g, testing::kMirrorX));
    ASSERT_EQ(flip_v(g), reference_transform(g, testing::kMirrorY));
    ASSERT_EQ(transpose(g), reference_transform(g, testing::kMainDiagonal));
    ASSERT_EQ(anti_transpose(g), reference_transform(g, testing::kAntiDiagonal));
  }
}

TEST(GridTest, GroupIdentitiesOnRandomSquares) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Grid g = random_square_grid(gen);
    EXPECT_EQ(rotate90(rotate90(rotate90(rotate90(g)))), g);
    EXPECT_EQ(rotate270(g), rotate90(rotate90(rotate90(g))));
    EXPECT_EQ(flip_h(flip_h(g)), g);
    EXPECT_EQ(flip_v(flip_v(g)), g);
    EXPECT_EQ(anti_transpose(anti_transpose(g)), g);
    EXPECT_EQ(flip_h(rotate90(g)), transpose(g));
    EXPECT_EQ(flip_v(rotate270(g)), transpose(g));
    EXPECT_EQ(flip_v(rotate90(g)), anti_transpose(g));
  }
}

TEST(GridTest, OrbitHasAtMostEightGrids) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Grid g = random_square_grid(gen, 1, 6);
    std::set<std::vector<Color>> seen;
    std::vector<Grid> frontier{g};
    seen.insert({g.cells().begin(), g.cells().end()});
    while (!frontier.empty()) {
      Grid cur = frontier.back();
      frontier.pop_back();
      for (auto* op : {&rotate90, &rotate270, &flip_h, &flip_v}) {
        Grid next = op(cur);
        if (seen.insert({next.cells().begin(), next.cells().end()}).second) {
          frontier.push_back(next);
        }
      }
    }
    EXPECT_LE(seen.size(), 8u);
  }
}

TEST(GridTest, TransformsPreserveColorMultiset) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Grid g = random_grid(gen, 1 + trial % 30, 1 + (trial * 7) % 30);
    const auto hist = color_histogram(g);
    for (auto* op : {&rotate90, &rotate270, &flip_h, &flip_v, &transpose, &anti_transpose}) {
      EXPECT_EQ(color_histogram(op(g)), hist);
    }
  }
}

TEST(GridTest, DigestIsDeterministicAndShapeSensitive) {
  EXPECT_EQ(grid_digest(Grid{{1, 2}}), grid_digest(Grid{{1, 2}}));
  EXPECT_NE(grid_digest(Grid{{1, 2}}), grid_digest(Grid{{2, 1}}));
  EXPECT_NE(grid_digest(Grid{{1}, {2}}), grid_digest(Grid{{1, 2}}));
  // FNV-1a over the bytes {rows, cols, cells...}, values computed offline.
  EXPECT_EQ(grid_digest(Grid{{0}}), 0xd0a6fd18672a1435ULL);
  EXPECT_EQ(grid_digest(Grid{{1, 2, 3}, {4, 5, 6}}), 0x1f4ec05ebaea5e7dULL);
}

TEST(GridTest, ParseAndEmit) {
  const Grid g = parse_grid("[[0,1],[2,3]]");
  EXPECT_EQ(g.rows(), 2);
  EXPECT_EQ(g.cols(), 2);
  EXPECT_EQ(g, (Grid{{0, 1}, {2, 3}}));
  EXPECT_EQ(emit_grid(g), "[[0,1],[2,3]]");

  EXPECT_EQ(code_of([] { parse_grid("[[0,1],[2]]"); }), ErrorCode::kRaggedRows);
  EXPECT_EQ(code_of([] { parse_grid("[[10]]"); }), ErrorCode::kColorOutOfRange);
  EXPECT_EQ(code_of([] { parse_grid("[[-1]]"); }), ErrorCode::kColorOutOfRange);
  EXPECT_EQ(code_of([] { parse_grid("[]"); }), ErrorCode::kEmptyGrid);
  EXPECT_EQ(code_of([] { parse_grid("[[]]"); }), ErrorCode::kEmptyGrid);
  EXPECT_EQ(code_of([] { parse_grid("[[1.5]]"); }), ErrorCode::kMalformedGrid);
  EXPECT_EQ(code_of([] { parse_grid("not json"); }), ErrorCode::kMalformedGrid);
  std::string wide = "[[" ;
  for (int i = 0; i < 31; ++i) wide += (i ? ",0" : "0");
  wide += "]]";
  EXPECT_EQ(code_of([&] { parse_grid(wide); }), ErrorCode::kGridTooLarge);
}

TEST(GridTest, ParseEmitRoundTrip) {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<int> side(1, kMaxSide);
  for (int trial = 0; trial < 100; ++trial) {
    const Grid g = random_grid(gen, side(gen), side(gen));
    EXPECT_EQ(parse_grid(emit_grid(g)), g);
  }
}

}  // namespace
}  // namespace arcrl
