#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace tropicell;
using fixtures::example31;

namespace {

auto crossing(std::vector<ColumnIndex> support, std::vector<std::int64_t> coeffs,
              ColumnIndex gamma, std::size_t config) -> FacetCrossing {
  FacetCrossing x;
  x.gamma = gamma;
  x.circuit.support = std::move(support);
  x.circuit.coeffs = std::move(coeffs);
  x.circuit.gamma = gamma;
  x.config = config;
  return x;
}

} // namespace

TEST(FacetCircuits, Example31) {
  auto t = example31();
  auto f = facet_circuits(t, cell1({{2, 3}, {5, 7}}));
  ASSERT_EQ(f.size(), 4u);
  std::vector<BigInt> want{0, 1, 2, -3, -1, 0, 1, 0};
  bool seen = false;
  for (const auto &x : f)
    if (x.gamma == 3) {
      EXPECT_EQ(x.circuit.dense(8), want);
      seen = true;
    }
  EXPECT_TRUE(seen);

  auto cm = cayley(t);
  auto g = facet_circuits(t, cell1({{3, 4}, {7, 8}}));
  ASSERT_EQ(g.size(), 4u);
  std::set<ColumnIndex> gammas;
  for (const auto &x : g) {
    EXPECT_TRUE(annihilates(cm, x.circuit));
    gammas.insert(x.gamma);
  }
  EXPECT_EQ(gammas, (std::set<ColumnIndex>{0, 1, 4, 5}));
}

TEST(FacetCircuits, NoFacets) {
  auto t = new_support_tuple({{{0}, {1}}});
  EXPECT_TRUE(facet_circuits(t, cell1({{1, 2}})).empty());
  EXPECT_TRUE(in_cone(t, cell1({{1, 2}}), lex_order(2)));
}

TEST(FacetCircuits, CountOnRandomCandidates) {
  std::mt19937_64 rng(13);
  for (int s = 0; s < 40; ++s) {
    auto t = oracle::random_tuple(rng);
    std::size_t want = 0;
    for (std::size_t i = 0; i < t.n(); ++i) want += t.size(i) - 2;
    for (const auto &cell : oracle::enumerate_candidates(t))
      ASSERT_EQ(facet_circuits(t, cell).size(), want);
  }
}

TEST(InCone, Example31) {
  auto t = example31();
  auto cell = cell1({{2, 3}, {5, 7}});
  EXPECT_TRUE(in_cone(t, cell, refine_by(fixtures::lift31(), lex_order(8))));
  EXPECT_FALSE(in_cone(t, cell, refine_by(fixtures::lift31_moved(), lex_order(8))));
  auto c = circuit(cayley(t), cell, 3);
  EXPECT_EQ(lift_value(integer_lift(fixtures::lift31()), c), 2);
  EXPECT_EQ(lift_value(integer_lift(fixtures::lift31_moved()), c), -1);
}

TEST(InCone, MatchesOracle) {
  std::mt19937_64 rng(17);
  for (int s = 0; s < 40; ++s) {
    auto t = oracle::random_tuple(rng);
    auto order = refine_by(fixtures::random_lift(rng, t.m()), lex_order(t.m()));
    std::set<MixedCell> mine;
    for (const auto &cell : oracle::enumerate_candidates(t))
      if (in_cone(t, cell, order)) mine.insert(cell);
    ASSERT_EQ(mine, fixtures::brute(t, order));
  }
}

TEST(ExitFacet, Example31Move) {
  auto t = example31();
  auto sigma = refine_by(fixtures::lift31(), lex_order(8));
  auto x = exit_facet(t, cell1({{2, 3}, {5, 7}}), sigma, fixtures::lift31_moved());
  ASSERT_TRUE(x);
  EXPECT_EQ(x->gamma, 3);
  EXPECT_EQ(x->config, 0u);
  EXPECT_EQ(x->tau_value, -1);
  EXPECT_FALSE(exit_facet(t, cell1({{3, 4}, {7, 8}}), sigma, fixtures::lift31_moved()));
  EXPECT_FALSE(exit_facet(t, cell1({{2, 3}, {5, 7}}), sigma, fixtures::lift31()));
}

TEST(ExitFacet, InconsistentCone) {
  // a cell outside the cone of sigma with a violated target facet
  auto t = example31();
  auto sigma = refine_by(fixtures::lift31_moved(), lex_order(8));
  try {
    exit_facet(t, cell1({{2, 3}, {5, 7}}), sigma, fixtures::lift31_moved());
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::InconsistentCone);
  }
}

TEST(FlipChildren, Example31Wall) {
  auto t = example31();
  auto sigma = refine_by(fixtures::lift31(), lex_order(8));
  auto x = exit_facet(t, cell1({{2, 3}, {5, 7}}), sigma, fixtures::lift31_moved());
  ASSERT_TRUE(x);
  auto kids = flip_children(cell1({{2, 3}, {5, 7}}), *x);
  std::set<MixedCell> got(kids.begin(), kids.end());
  EXPECT_EQ(got, (std::set<MixedCell>{cell1({{3, 4}, {5, 7}}), cell1({{2, 4}, {5, 7}})}));
  std::map<MixedCell, std::int64_t> vol;
  for (const auto &k : kids) vol[k] = cell_volume(t, k);
  EXPECT_EQ(vol[cell1({{2, 4}, {5, 7}})], 2);
  EXPECT_EQ(vol[cell1({{3, 4}, {5, 7}})], 1);
}

TEST(FlipChildren, DegenerateCircuit) {
  auto t = fixtures::degenerate42();
  auto cell = cell1({{1, 3}, {4, 5}});
  FacetCrossing x{1, circuit(cayley(t), cell, 1), 0, BigInt(-1)};
  auto kids = flip_children(cell, x);
  ASSERT_EQ(kids.size(), 1u);
  EXPECT_EQ(kids[0], cell1({{1, 2}, {4, 5}}));
}

TEST(FlipChildren, RuleCases) {
  auto cell = cell1({{2, 5}, {7, 8}});
  // alpha = column 2 (index 1), beta = column 5 (index 4)
  auto make = [](std::int64_t ca, std::int64_t cb, ColumnIndex gamma) {
    std::vector<std::pair<ColumnIndex, std::int64_t>> e{{1, ca}, {4, cb}, {gamma, -1}};
    std::sort(e.begin(), e.end());
    std::vector<ColumnIndex> s;
    std::vector<std::int64_t> c;
    for (auto [k, v] : e)
      if (v != 0) {
        s.push_back(k);
        c.push_back(v);
      }
    return crossing(s, c, gamma, 0);
  };
  auto a_to = [&](ColumnIndex g) { return cell.replaced(0, 1, g); };
  auto b_to = [&](ColumnIndex g) { return cell.replaced(0, 4, g); };
  using V = std::vector<MixedCell>;
  EXPECT_EQ(flip_children(cell, make(1, 1, 2)), (V{a_to(2), b_to(2)}));
  EXPECT_EQ(flip_children(cell, make(1, 0, 2)), (V{a_to(2)}));
  EXPECT_EQ(flip_children(cell, make(1, -1, 5)), (V{a_to(5)}));  // beta < gamma
  EXPECT_EQ(flip_children(cell, make(1, -1, 2)), V{});           // beta > gamma
  EXPECT_EQ(flip_children(cell, make(0, 1, 2)), (V{b_to(2)}));
  EXPECT_EQ(flip_children(cell, make(-1, 1, 2)), (V{b_to(2)}));  // alpha < gamma
  EXPECT_EQ(flip_children(cell, make(-1, 1, 0)), V{});           // alpha > gamma
  EXPECT_EQ(flip_children(cell, make(-1, -1, 2)), V{});
  // without the canonical filter every neighbour past the wall is returned
  EXPECT_EQ(flip_children(cell, make(1, -1, 2), false), (V{a_to(2)}));
  EXPECT_EQ(flip_children(cell, make(-1, 1, 0), false), (V{b_to(0)}));
}

TEST(FlipChildren, SignError) {
  auto cell = cell1({{1, 2}, {4, 5}});
  auto x = crossing({0, 1, 2}, {1, -1, 1}, 2, 0);
  try {
    flip_children(cell, x);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::CircuitSignError);
  }
}

TEST(FlipChildren, ChildrenAreCandidates) {
  std::mt19937_64 rng(19);
  int flips = 0;
  for (int s = 0; s < 40; ++s) {
    auto t = oracle::random_tuple(rng);
    auto sigma = refine_by(fixtures::random_lift(rng, t.m()), lex_order(t.m()));
    auto tau = fixtures::random_lift(rng, t.m());
    auto cm = cayley(t);
    for (const auto &cell : fixtures::brute(t, sigma)) {
      auto x = exit_facet(t, cell, sigma, tau);
      if (!x) continue;
      for (bool canonical : {true, false})
        for (const auto &k : flip_children(cell, *x, canonical)) {
          ASSERT_TRUE(is_candidate(cm, k));
          ++flips;
        }
    }
  }
  EXPECT_GT(flips, 20);
}
