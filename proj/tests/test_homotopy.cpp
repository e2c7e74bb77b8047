#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <mutex>
#include <stdexcept>

using namespace tropicell;
using fixtures::example31;

namespace {

auto move_plan(const LiftVector &from, const LiftVector &to) -> StagePlan {
  auto t = example31();
  return {t, refine_by(from, lex_order(t.m())), to, {}, {}, std::nullopt};
}

auto figure1() -> std::set<MixedCell> { return {cell1({{2, 3}, {5, 7}}), cell1({{3, 4}, {7, 8}})}; }

auto figure2() -> std::set<MixedCell> {
  return {cell1({{2, 4}, {5, 7}}), cell1({{3, 4}, {5, 7}}), cell1({{3, 4}, {7, 8}})};
}

auto leaves(const std::vector<StagePlan> &plans, const std::set<MixedCell> &roots,
            TraverseOptions opt = {}) -> std::multiset<MixedCell> {
  std::mutex m;
  std::multiset<MixedCell> out;
  traverse(
    plans, roots,
    [&](const MixedCell &c, std::size_t) {
      std::lock_guard lock(m);
      out.insert(c);
    },
    opt);
  return out;
}

struct RandomMove {
  SupportTuple t;
  StagePlan plan;
  std::set<MixedCell> start;
  std::set<MixedCell> target;
};

auto random_moves(std::uint64_t seed, int count) -> std::vector<RandomMove> {
  std::mt19937_64 rng(seed);
  std::vector<RandomMove> out;
  for (int s = 0; s < count; ++s) {
    auto t = oracle::random_tuple(rng);
    auto from = fixtures::random_lift(rng, t.m());
    auto to = fixtures::random_lift(rng, t.m());
    auto sigma = refine_by(from, lex_order(t.m()));
    StagePlan p{t, sigma, to, {}, {}, std::nullopt};
    out.push_back({t, p, fixtures::brute(t, sigma),
                   fixtures::brute(t, refine_by(to, sigma))});
  }
  return out;
}

} // namespace

TEST(ContinueFront, Figure1ToFigure2) {
  HomotopyStats st;
  std::vector<std::pair<std::int64_t, std::int64_t>> walls;
  FrontOptions fo;
  fo.on_wall = [&](std::int64_t r, std::int64_t i) { walls.emplace_back(r, i); };
  auto out = continue_front(move_plan(fixtures::lift31(), fixtures::lift31_moved()),
                            figure1(), &st, fo);
  EXPECT_EQ(out, figure2());
  EXPECT_EQ(st.wall_crossings, 1u);
  ASSERT_EQ(walls.size(), 1u);
  EXPECT_EQ(walls[0], std::make_pair(std::int64_t{3}, std::int64_t{3}));
  auto t = example31();
  std::map<MixedCell, std::int64_t> vol;
  for (const auto &c : out) vol[c] = cell_volume(t, c);
  EXPECT_EQ(vol[cell1({{2, 4}, {5, 7}})], 2);
  EXPECT_EQ(vol[cell1({{3, 4}, {5, 7}})], 1);
  EXPECT_EQ(vol[cell1({{3, 4}, {7, 8}})], 1);
}

TEST(ContinueFront, TargetInsideCone) {
  HomotopyStats st;
  auto out = continue_front(move_plan(fixtures::lift31(), fixtures::lift31()), figure1(), &st);
  EXPECT_EQ(out, figure1());
  EXPECT_EQ(st.wall_crossings, 0u);
}

TEST(ContinueFront, ReverseMoveMerges) {
  HomotopyStats st;
  auto out = continue_front(move_plan(fixtures::lift31_moved(), fixtures::lift31()),
                            figure2(), &st);
  EXPECT_EQ(out, figure1());
  EXPECT_GT(st.duplicate_insertions, 0u);
}

TEST(ContinueFront, MatchesOracleOnRandomMoves) {
  for (auto &mv : random_moves(31, 50)) {
    std::int64_t total = 0;
    for (const auto &c : mv.start) total += cell_volume(mv.t, c);
    FrontOptions fo;
    fo.on_wall = [&](std::int64_t r, std::int64_t i) { total += i - r; };
    auto out = continue_front(mv.plan, mv.start, nullptr, fo);
    ASSERT_EQ(out, mv.target);
    std::int64_t after = 0;
    for (const auto &c : out) after += cell_volume(mv.t, c);
    ASSERT_EQ(total, after);
  }
}

TEST(Traverse, Figure1ToFigure2) {
  std::vector<StagePlan> plans{move_plan(fixtures::lift31(), fixtures::lift31_moved())};
  std::vector<MixedCell> got;
  auto st = traverse(plans, figure1(), [&](const MixedCell &c, std::size_t) { got.push_back(c); });
  EXPECT_EQ(got.size(), 3u);
  EXPECT_EQ(std::set<MixedCell>(got.begin(), got.end()), figure2());
  EXPECT_EQ(st.wall_crossings, 1u);
  EXPECT_EQ(st.leaves, 3u);
}

TEST(Traverse, ZeroPlans) {
  auto got = leaves({}, figure1());
  EXPECT_EQ(std::set<MixedCell>(got.begin(), got.end()), figure1());
  EXPECT_EQ(got.size(), 2u);
}

TEST(Traverse, EngineAgreement) {
  for (auto &mv : random_moves(37, 50)) {
    auto got = leaves({mv.plan}, mv.start);
    ASSERT_EQ(std::set<MixedCell>(got.begin(), got.end()).size(), got.size());
    ASSERT_EQ(std::set<MixedCell>(got.begin(), got.end()), continue_front(mv.plan, mv.start));
  }
}

TEST(Traverse, NonCanonicalChildrenKeepLeafSet) {
  for (auto &mv : random_moves(41, 30)) {
    TraverseOptions o;
    o.canonical_children = false;
    auto all = leaves({mv.plan}, mv.start, o);
    auto canon = leaves({mv.plan}, mv.start);
    ASSERT_EQ(std::set<MixedCell>(all.begin(), all.end()),
              std::set<MixedCell>(canon.begin(), canon.end()));
  }
}

TEST(Traverse, DeterministicAcrossWorkers) {
  auto t = generate({"cyclic", 6});
  auto plan = plan_regeneration(t);
  auto one = leaves(plan.stages, plan.roots);
  for (std::size_t w : {4u, 16u}) {
    TraverseOptions o;
    o.workers = w;
    EXPECT_EQ(leaves(plan.stages, plan.roots, o), one) << w << " workers";
  }
}

TEST(Traverse, EachCellVisitedOncePerStage) {
  auto t = generate({"cyclic", 6});
  auto plan = plan_regeneration(t);
  std::mutex m;
  std::set<std::pair<std::size_t, MixedCell>> seen;
  std::size_t repeats = 0;
  TraverseOptions o;
  o.workers = 4;
  o.on_node = [&](std::size_t stage, const MixedCell &c) {
    std::lock_guard lock(m);
    if (!seen.emplace(stage, c).second) ++repeats;
  };
  leaves(plan.stages, plan.roots, o);
  EXPECT_EQ(repeats, 0u);
  EXPECT_GT(seen.size(), 100u);
}

TEST(Traverse, SinkErrorAborts) {
  auto t = generate({"cyclic", 5});
  auto plan = plan_regeneration(t);
  for (std::size_t w : {1u, 4u}) {
    TraverseOptions o;
    o.workers = w;
    EXPECT_THROW(traverse(
                   plan.stages, plan.roots,
                   [](const MixedCell &, std::size_t) { throw std::runtime_error("sink"); }, o),
                 std::runtime_error);
  }
}

TEST(Traverse, ProgressCallback) {
  auto t = generate({"cyclic", 5});
  auto plan = plan_regeneration(t);
  std::atomic<int> calls{0};
  TraverseOptions o;
  o.progress_interval = 10;
  o.progress = [&](std::size_t, const HomotopyStats &) { ++calls; };
  auto st = traverse(plan.stages, plan.roots, [](const MixedCell &, std::size_t) {}, o);
  EXPECT_EQ(static_cast<std::uint64_t>(calls.load()), st.nodes / 10);
}

TEST(MapCell, Cases) {
  auto c = cell1({{1, 2}, {3, 4}});
  EXPECT_EQ(map_cell(c, {}), c);
  std::vector<ColumnIndex> next{5, 6, 7, 8};
  EXPECT_EQ(map_cell(c, next), cell1({{6, 7}, {8, 9}}));
  next[2] = -1;
  EXPECT_FALSE(map_cell(c, next));
  EXPECT_THROW(map_cell(c, std::vector<ColumnIndex>{0, 1}), Error);
}
