#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace tropicell;
using fixtures::example31;

TEST(SupportTuple, Example31Shape) {
  auto t = example31();
  EXPECT_EQ(t.n(), 2u);
  EXPECT_EQ(t.m(), 8u);
  EXPECT_EQ(t.offset(0), 0u);
  EXPECT_EQ(t.offset(1), 4u);
  EXPECT_EQ(t.size(1), 4u);
}

TEST(SupportTuple, SinglePoint) {
  auto t = new_support_tuple({{{0}}});
  EXPECT_EQ(t.n(), 1u);
  EXPECT_EQ(t.m(), 1u);
}

TEST(SupportTuple, Errors) {
  auto code = [](auto &&f) {
    try {
      f();
    } catch (const Error &e) {
      return e.code();
    }
    return Errc::InvariantViolation;
  };
  EXPECT_EQ(code([] { new_support_tuple({{{0, 0}}, {{1}}}); }), Errc::DimensionMismatch);
  EXPECT_EQ(code([] { new_support_tuple({{{0, 0}}, {}}); }), Errc::EmptyConfiguration);
  EXPECT_EQ(code([] { new_support_tuple({{{0, 40000}, {0, 0}}, {{0, 0}, {1, 0}}}); }),
            Errc::EntryOutOfRange);
  EXPECT_THROW(new_support_tuple({}), Error);
}

TEST(SupportTuple, IndexRoundTrip) {
  auto t = generate({"cyclic", 5});
  for (std::size_t g = 0; g < t.m(); ++g)
    EXPECT_EQ(t.global(t.config_of(g), t.local_of(g)), g);
  for (std::size_t i = 0; i < t.n(); ++i)
    for (std::size_t j = 0; j < t.size(i); ++j) {
      EXPECT_EQ(t.config_of(t.global(i, j)), i);
      EXPECT_EQ(t.local_of(t.global(i, j)), j);
    }
}

TEST(Cayley, Example31Matrix) {
  auto cm = cayley(example31());
  const std::int64_t want[4][8] = {{0, 0, 1, 1, 0, 0, 1, 2},
                                   {0, 2, 0, 1, 0, 1, 1, 0},
                                   {1, 1, 1, 1, 0, 0, 0, 0},
                                   {0, 0, 0, 0, 1, 1, 1, 1}};
  ASSERT_EQ(cm.rows(), 4u);
  ASSERT_EQ(cm.cols(), 8u);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 8; ++c) EXPECT_EQ(cm.at(r, c), want[r][c]) << r << "," << c;
}

TEST(Cayley, SmallestSquare) {
  auto cm = cayley(new_support_tuple({{{0}, {1}}}));
  EXPECT_EQ(cm.at(0, 0), 0);
  EXPECT_EQ(cm.at(0, 1), 1);
  EXPECT_EQ(cm.at(1, 0), 1);
  EXPECT_EQ(cm.at(1, 1), 1);
}

TEST(Cayley, Cyclic3AgainstBlocks) {
  auto t = generate({"cyclic", 3});
  auto cm = cayley(t);
  ASSERT_EQ(cm.rows(), 6u);
  ASSERT_EQ(cm.cols(), 8u);
  // x+y+z | xy+yz+zx | xyz-1
  const std::int64_t cols[8][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0},
                                   {0, 1, 1}, {1, 0, 1}, {1, 1, 1}, {0, 0, 0}};
  const std::size_t block[8] = {0, 0, 0, 1, 1, 1, 2, 2};
  std::multiset<std::vector<std::int64_t>> want, got;
  for (std::size_t c = 0; c < 8; ++c) {
    std::vector<std::int64_t> v(cols[c], cols[c] + 3);
    for (std::size_t i = 0; i < 3; ++i) v.push_back(block[c] == i);
    want.insert(v);
    std::vector<std::int64_t> g;
    for (std::size_t r = 0; r < 6; ++r) g.push_back(cm.at(r, c));
    got.insert(g);
  }
  EXPECT_EQ(got, want);
}

TEST(Cayley, RankOnRandomInstances) {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int s = 0; s < 40; ++s) {
    auto t = oracle::random_tuple(rng);
    if (oracle::rado_zero_check(t)) continue;
    std::vector<std::size_t> all(t.m());
    for (std::size_t g = 0; g < t.m(); ++g) all[g] = g;
    EXPECT_EQ(oracle::rank(oracle::cayley_columns(t, all)), 2 * t.n());
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree(Configuration(2, {{0, 0}, {0, 1}, {2, 0}})), 2);
  EXPECT_EQ(degree(Configuration(2, {{0, 0}})), 0);
  EXPECT_EQ(degree(example31().config(1)), 2);
}

TEST(PrependSimplex, Example31FirstConfig) {
  auto t = example31();
  auto e = prepend_simplex(t, 0, degree(t.config(0)));
  EXPECT_EQ(e.m(), 11u);
  std::vector<std::vector<Exponent>> want{{0, 0}, {2, 0}, {0, 2}, {0, 0},
                                          {0, 2}, {1, 0}, {1, 1}};
  EXPECT_EQ(e.config(0).columns(), want);
  EXPECT_EQ(e.config(1), t.config(1));
  for (std::size_t g = 0; g < e.m(); ++g)
    EXPECT_EQ(e.is_simplex_column(g), g < 3) << g;
}

TEST(PrependSimplex, Interval) {
  auto e = prepend_simplex(new_support_tuple({{{5}}}), 0, 1);
  std::vector<std::vector<Exponent>> want{{0}, {1}, {5}};
  EXPECT_EQ(e.config(0).columns(), want);
}

TEST(PrependSimplex, BothConfigs) {
  auto t = example31();
  auto e = prepend_simplex(prepend_simplex(t, 0, 2), 1, 2);
  EXPECT_EQ(e.m(), 14u);
  EXPECT_EQ(e.m(), t.n() * (t.n() + 1) + t.m());
  // original columns keep their relative order behind the new blocks
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_EQ(std::vector<Exponent>(e.column(e.global(i, j + 3)).begin(),
                                      e.column(e.global(i, j + 3)).end()),
                t.config(i).column(j));
}

TEST(LiftFor, ShapeChecks) {
  auto t = example31();
  auto l = lift_for(t, {{0, 0, 0, -2}, {0, -3, -4, -8}});
  EXPECT_EQ(l, fixtures::lift31());
  EXPECT_THROW(lift_for(t, {{0, 0, 0}, {0, -3, -4, -8}}), Error);
  EXPECT_THROW(lift_for(t, {{0, 0, 0, -2}}), Error);
}
