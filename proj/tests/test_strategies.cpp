#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace tropicell;
using fixtures::example31;

namespace {

auto run(const SupportTuple &t, StrategyKind k, bool filter = true) -> MixedCellsResult {
  RunOptions o;
  o.strategy = k;
  o.stage_filter = filter;
  return compute_mixed_cells(t, o);
}

} // namespace

TEST(StartCells, Formulas) {
  auto u2 = new_support_tuple({{{0, 0}, {1, 0}, {0, 1}}, {{0, 0}, {1, 0}, {0, 1}}});
  EXPECT_EQ(start_cell_total_degree(u2), cell1({{1, 2}, {4, 6}}));
  auto u1 = new_support_tuple({{{0}, {1}}});
  EXPECT_EQ(start_cell_total_degree(u1), cell1({{1, 2}}));
  std::vector<std::vector<std::vector<std::int64_t>>> raw(3);
  for (auto &cfg : raw) cfg = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto u3 = new_support_tuple(raw);
  EXPECT_EQ(start_cell_lex(u3), cell1({{1, 2}, {6, 7}, {11, 12}}));
  EXPECT_EQ(start_cell_lex(u1), cell1({{1, 2}}));
}

TEST(StartCells, LexCellIsInLexCone) {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Configuration> cfgs(n, unit_simplex(n));
    SupportTuple u(cfgs);
    EXPECT_TRUE(in_cone(u, start_cell_lex(u), lex_order(u.m()))) << n;
  }
  std::vector<Configuration> cfgs(3, unit_simplex(3));
  SupportTuple u(cfgs);
  EXPECT_EQ(fixtures::brute(u, lex_order(u.m())), std::set<MixedCell>{start_cell_lex(u)});
}

TEST(BreakOff, Cases) {
  std::set<MixedCell> cells{cell1({{1, 2}, {3, 4}}), cell1({{1, 3}, {2, 4}})};
  EXPECT_EQ(break_off(cells, {}), cells);
  std::vector<ColumnIndex> next{-1, 0, 1, 2};
  EXPECT_EQ(break_off(cells, next), std::set<MixedCell>{});
  std::vector<ColumnIndex> keep{0, 1, 2, 3};
  EXPECT_EQ(break_off(cells, keep), cells);
}

TEST(TotalDegree, Example31) {
  auto t = example31();
  auto plan = plan_total_degree(t);
  ASSERT_EQ(plan.stages.size(), 1u);
  const auto &ext = plan.stages[0].tuple;
  EXPECT_EQ(ext.m(), 14u);
  ASSERT_EQ(plan.roots.size(), 1u);
  EXPECT_EQ(cell_volume(ext, *plan.roots.begin()), 4);
  auto r = run(t, StrategyKind::TotalDegree);
  EXPECT_EQ(r.mixed_volume, 4);
  std::multiset<std::int64_t> vols;
  for (const auto &c : r.cells) vols.insert(c.volume);
  EXPECT_EQ(vols, (std::multiset<std::int64_t>{2, 2}));
}

TEST(TotalDegree, DroppedVolume) {
  // Newton triangle and a segment: product of degrees 2, mixed volume 1
  auto t = new_support_tuple({{{0, 0}, {1, 0}, {1, 1}}, {{0, 0}, {1, 0}}});
  EXPECT_EQ(oracle::incl_excl_mixed_volume(t), 1);
  auto r = run(t, StrategyKind::TotalDegree);
  EXPECT_EQ(r.mixed_volume, 1);
  EXPECT_GT(r.stats.dropped, 0u);
}

TEST(TotalDegree, Interval) {
  auto t = new_support_tuple({{{0}, {3}}});
  auto r = run(t, StrategyKind::TotalDegree);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0].volume, 3);
  EXPECT_EQ(run(t, StrategyKind::Regeneration).mixed_volume, 3);
  EXPECT_EQ(plan_regeneration(t).stages.size(), 1u);
}

TEST(TotalDegree, PureLexStart) {
  std::mt19937_64 rng(43);
  for (int s = 0; s < 15; ++s) {
    auto t = oracle::random_tuple(rng);
    if (oracle::rado_zero_check(t)) continue;
    bool ok = true;
    for (std::size_t i = 0; i < t.n(); ++i) ok = ok && degree(t.config(i)) > 0;
    if (!ok) continue;
    auto plan = plan_total_degree(t, TotalDegreeStart::PureLex);
    std::set<MixedCell> out;
    traverse(plan.stages, plan.roots, [&](const MixedCell &c, std::size_t) { out.insert(c); });
    ASSERT_EQ(out, fixtures::brute(t, lex_order(t.m())));
  }
}

TEST(Strategies, ZeroDegree) {
  auto t = new_support_tuple({{{0, 0}}, {{0, 0}, {1, 1}}});
  try {
    plan_total_degree(t);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::ZeroDegreeConfiguration);
  }
  EXPECT_THROW(plan_regeneration(t), Error);
  EXPECT_EQ(compute_mixed_cells(t).mixed_volume, 0);
  EXPECT_TRUE(compute_mixed_cells(t).cells.empty());
}

TEST(Strategies, NegativeEntriesRejected) {
  auto t = new_support_tuple({{{0}, {-1}}});
  EXPECT_THROW(plan_regeneration(t), Error);
}

TEST(Regeneration, Example31) {
  auto r = run(example31(), StrategyKind::Regeneration);
  EXPECT_EQ(r.mixed_volume, 4);
  EXPECT_EQ(r.cells, run(example31(), StrategyKind::TotalDegree).cells);
}

TEST(Regeneration, Example62) {
  auto t = fixtures::example62();
  auto plan = plan_regeneration(t);
  EXPECT_EQ(plan.stages.size(), 2u);
  // area(P1+P2) - area(P1) - area(P2), frozen from the oracle
  EXPECT_EQ(oracle::incl_excl_mixed_volume(t), 3);
  EXPECT_EQ(run(t, StrategyKind::Regeneration).mixed_volume, 3);
}

TEST(Regeneration, Cyclic10ColumnCounts) {
  auto plan = plan_regeneration(generate({"cyclic", 10}));
  ASSERT_EQ(plan.stages.size(), 10u);
  EXPECT_EQ(plan.stages.front().tuple.m(), 120u);
  EXPECT_EQ(plan.stages.back().tuple.m(), 103u);
}

TEST(Regeneration, StageInvariant) {
  std::mt19937_64 rng(47);
  std::vector<SupportTuple> cases{example31(), fixtures::example62()};
  while (cases.size() < 20) {
    auto t = oracle::random_tuple(rng, 4, 3);
    bool ok = true;
    for (std::size_t i = 0; i < t.n(); ++i) ok = ok && degree(t.config(i)) > 0;
    if (ok) cases.push_back(t);
  }
  for (const auto &t : cases) {
    auto plan = plan_regeneration(t);
    std::set<MixedCell> cells = plan.roots;
    ASSERT_EQ(cells, fixtures::brute(plan.stages[0].tuple, lex_order(plan.stages[0].tuple.m())));
    for (std::size_t s = 0; s < plan.stages.size(); ++s) {
      cells = break_off(continue_front(plan.stages[s], cells), plan.stages[s].next_index);
      const auto &next = s + 1 < plan.stages.size() ? plan.stages[s + 1].tuple : t;
      ASSERT_EQ(cells, fixtures::brute(next, lex_order(next.m()))) << "after stage " << s;
    }
  }
}

TEST(Strategies, AgreeWithOracleAndEachOther) {
  std::mt19937_64 rng(53);
  for (int s = 0; s < 50; ++s) {
    auto t = oracle::random_tuple(rng);
    auto regen = run(t, StrategyKind::Regeneration);
    ASSERT_EQ(fixtures::cell_set(regen), fixtures::brute(t, lex_order(t.m())));
    ASSERT_EQ(regen.mixed_volume, oracle::incl_excl_mixed_volume(t));
    ASSERT_EQ(run(t, StrategyKind::Regeneration, false).cells, regen.cells);
    bool positive = true;
    for (std::size_t i = 0; i < t.n(); ++i) positive = positive && degree(t.config(i)) > 0;
    if (!positive) continue;
    ASSERT_EQ(run(t, StrategyKind::TotalDegree).cells, regen.cells);
    ASSERT_EQ(run(t, StrategyKind::TotalDegree, false).cells, regen.cells);
  }
}

TEST(Strategies, FrontPipelineMatchesTraversal) {
  std::mt19937_64 rng(59);
  for (int s = 0; s < 20; ++s) {
    auto t = oracle::random_tuple(rng);
    for (auto k : {StrategyKind::Regeneration, StrategyKind::TotalDegree}) {
      bool positive = true;
      for (std::size_t i = 0; i < t.n(); ++i) positive = positive && degree(t.config(i)) > 0;
      if (!positive) continue;
      RunOptions o;
      o.strategy = k;
      ASSERT_EQ(compute_mixed_cells_front(t, o).cells, compute_mixed_cells(t, o).cells);
    }
  }
}

TEST(Strategies, ThreadsDoNotChangeCells) {
  auto t = generate({"cyclic", 7});
  auto one = compute_mixed_cells(t);
  EXPECT_EQ(one.mixed_volume, 924);
  RunOptions o;
  o.threads = 4;
  EXPECT_EQ(compute_mixed_cells(t, o).cells, one.cells);
}

TEST(Strategies, TargetLift) {
  auto t = example31();
  auto lift = fixtures::lift31();
  auto r = compute_mixed_cells(t, {}, &lift);
  std::set<MixedCell> want{cell1({{2, 3}, {5, 7}}), cell1({{3, 4}, {7, 8}})};
  EXPECT_EQ(fixtures::cell_set(r), want);
  EXPECT_EQ(want, fixtures::brute(t, refine_by(lift, lex_order(8))));
  auto bad = LiftVector::zeros(3);
  EXPECT_THROW(compute_mixed_cells(t, {}, &bad), Error);
}

TEST(Strategies, PointConfiguration) {
  auto t = new_support_tuple({{{0, 0}, {1, 0}}, {{1, 1}}});
  EXPECT_EQ(compute_mixed_cells(t).mixed_volume, 0);
  EXPECT_EQ(oracle::incl_excl_mixed_volume(t), 0);
}

TEST(Strategies, Names) {
  EXPECT_EQ(parse_strategy("total-degree"), StrategyKind::TotalDegree);
  EXPECT_EQ(strategy_name(StrategyKind::Regeneration), "regeneration");
  EXPECT_THROW(parse_strategy("homotopy"), Error);
}
