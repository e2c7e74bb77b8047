#pragma once

#include "tropicell/errors.hpp"
#include "tropicell/exact_linalg.hpp"
#include "tropicell/homotopy.hpp"
#include "tropicell/mixed_cell.hpp"
#include "tropicell/support_config.hpp"
#include "tropicell/term_order.hpp"

#include <algorithm>
#include <optional>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tropicell {

enum class StrategyKind { TotalDegree, Regeneration };

inline auto strategy_name(StrategyKind k) -> std::string_view {
  return k == StrategyKind::TotalDegree ? "total-degree" : "regeneration";
}

inline auto parse_strategy(std::string_view s) -> StrategyKind {
  if (s == "total-degree") return StrategyKind::TotalDegree;
  if (s == "regeneration") return StrategyKind::Regeneration;
  fail(Errc::InvalidInput, "unknown strategy '" + std::string(s) + "'");
}

/// Start order of the total degree homotopy.
enum class TotalDegreeStart {
  DegreeLift, // e_1 + e_{i+1} on each simplex block, then lex
  PureLex,
};

/// Stage plans plus the cells the first stage starts from. Leaves of the
/// last stage are cells of `output`.
struct Plan {
  std::set<MixedCell> roots;
  std::vector<StagePlan> stages;
  SupportTuple output;
};

/// The unit simplex {0, e_1, ..., e_n}.
inline auto unit_simplex(std::size_t n) -> Configuration {
  std::vector<std::vector<Exponent>> cols;
  cols.emplace_back(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Exponent> v(n, 0);
    v[r] = 1;
    cols.push_back(std::move(v));
  }
  return Configuration(n, std::move(cols));
}

/// ((1,2),(1,3),...,(1,n+1)) in local indices of the leading simplex blocks.
inline auto start_cell_total_degree(const SupportTuple &extended) -> MixedCell {
  std::vector<std::pair<std::size_t, std::size_t>> local;
  for (std::size_t i = 0; i < extended.n(); ++i) local.emplace_back(0, i + 1);
  return MixedCell::from_local(extended, local);
}

/// ((1,2),(2,3),...,(n,n+1)) in local indices of the leading simplex blocks.
inline auto start_cell_lex(const SupportTuple &t) -> MixedCell {
  std::vector<std::pair<std::size_t, std::size_t>> local;
  for (std::size_t i = 0; i < t.n(); ++i) local.emplace_back(i, i + 1);
  return MixedCell::from_local(t, local);
}

/// Keeps the cells avoiding dropped columns, renumbered by `next`.
inline auto break_off(const std::set<MixedCell> &cells,
                      const std::vector<ColumnIndex> &next) -> std::set<MixedCell> {
  std::set<MixedCell> out;
  for (const auto &c : cells)
    if (auto m = map_cell(c, next)) out.insert(std::move(*m));
  return out;
}

namespace detail {

inline void check_strategy_input(const SupportTuple &t) {
  if (!t.nonnegative())
    fail(Errc::InvalidInput, "strategies need nonnegative exponents");
  for (std::size_t i = 0; i < t.n(); ++i)
    if (degree(t.config(i)) < 1)
      fail(Errc::ZeroDegreeConfiguration,
           "configuration " + std::to_string(i + 1) + " has degree 0");
}

inline auto lift_on_mask(const std::vector<bool> &mask) -> LiftVector {
  LiftVector l = LiftVector::zeros(mask.size());
  for (std::size_t g = 0; g < mask.size(); ++g)
    if (mask[g]) l.values[g] = -1;
  return l;
}

// Column map from `from` to `to`, where configuration k of `from` has
// `skip[k]` leading columns that are dropped and the rest line up with the
// trailing columns of configuration k of `to`.
inline auto block_map(const SupportTuple &from, const SupportTuple &to,
                      const std::vector<std::size_t> &skip) -> std::vector<ColumnIndex> {
  std::vector<ColumnIndex> next(from.m(), -1);
  for (std::size_t k = 0; k < from.n(); ++k) {
    const std::size_t kept = from.size(k) - skip[k];
    if (kept > to.size(k)) fail(Errc::IndexMapError, "boundary map does not fit");
    const std::size_t lead = to.size(k) - kept;
    for (std::size_t j = skip[k]; j < from.size(k); ++j)
      next[from.global(k, j)] =
        static_cast<ColumnIndex>(to.global(k, lead + j - skip[k]));
  }
  return next;
}

} // namespace detail

inline auto plan_total_degree(const SupportTuple &t,
                              TotalDegreeStart start = TotalDegreeStart::DegreeLift)
  -> Plan {
  detail::check_strategy_input(t);
  const std::size_t n = t.n();
  SupportTuple ext = t;
  for (std::size_t i = 0; i < n; ++i) ext = prepend_simplex(ext, i, degree(t.config(i)));
  StagePlan p{ext, lex_order(ext.m()), {}, {}, {}, std::nullopt};
  p.drop_mask = ext.simplex_mask();
  p.tau = detail::lift_on_mask(p.drop_mask);
  Plan plan{{}, {}, t};
  if (start == TotalDegreeStart::DegreeLift) {
    std::vector<BigInt> row(ext.m(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      row[ext.global(i, 0)] = 1;
      row[ext.global(i, i + 1)] = 1;
    }
    p.sigma.push_front_row(std::move(row));
    plan.roots.insert(start_cell_total_degree(ext));
  } else {
    plan.roots.insert(start_cell_lex(ext));
  }
  p.next_index = detail::block_map(ext, t, std::vector<std::size_t>(n, n + 1));
  plan.stages.push_back(std::move(p));
  return plan;
}

/// Tuple (A_1, ..., A_s, [B A_{s+1}], L, ..., L) of regeneration stage s.
inline auto regeneration_tuple(const SupportTuple &t, std::size_t s) -> SupportTuple {
  const std::size_t n = t.n();
  std::vector<Configuration> configs;
  for (std::size_t k = 0; k < n; ++k)
    configs.push_back(k <= s ? t.config(k) : unit_simplex(n));
  return prepend_simplex(SupportTuple(std::move(configs)), s, degree(t.config(s)));
}

inline auto plan_regeneration(const SupportTuple &t) -> Plan {
  detail::check_strategy_input(t);
  const std::size_t n = t.n();
  Plan plan{{}, {}, t};
  std::vector<SupportTuple> tuples;
  for (std::size_t s = 0; s < n; ++s) tuples.push_back(regeneration_tuple(t, s));
  for (std::size_t s = 0; s < n; ++s) {
    const auto &ts = tuples[s];
    StagePlan p{ts, lex_order(ts.m()), {}, {}, {}, s};
    p.drop_mask.assign(ts.m(), false);
    for (std::size_t j = 0; j <= n; ++j) p.drop_mask[ts.global(s, j)] = true;
    p.tau = detail::lift_on_mask(p.drop_mask);
    std::vector<std::size_t> skip(n, 0);
    skip[s] = n + 1;
    // L of the next stage becomes its simplex block at the same local index
    p.next_index = detail::block_map(ts, s + 1 < n ? tuples[s + 1] : t, skip);
    if (s + 1 < n)
      for (std::size_t j = 0; j <= n; ++j)
        p.next_index[ts.global(s + 1, j)] =
          static_cast<ColumnIndex>(tuples[s + 1].global(s + 1, j));
    plan.stages.push_back(std::move(p));
  }
  plan.roots.insert(start_cell_lex(tuples.front()));
  return plan;
}

inline auto make_plan(const SupportTuple &t, StrategyKind k) -> Plan {
  return k == StrategyKind::TotalDegree ? plan_total_degree(t) : plan_regeneration(t);
}

/// A cell of the input tuple together with its volume.
struct CellVolume {
  MixedCell cell;
  std::int64_t volume;
  friend auto operator==(const CellVolume &, const CellVolume &) -> bool = default;
};

struct MixedCellsResult {
  std::vector<CellVolume> cells; // sorted by index tuple
  BigInt mixed_volume;
  HomotopyStats stats;
};

struct RunOptions {
  StrategyKind strategy{StrategyKind::Regeneration};
  std::size_t threads{1};
  bool stage_filter{true};
};

namespace detail {

// Empty plan if some configuration has no edge (mixed volume 0).
inline auto full_plan(const SupportTuple &t, StrategyKind k, const LiftVector *target)
  -> std::optional<Plan> {
  if (target && target->size() != t.m())
    fail(Errc::DimensionMismatch, "lift has " + std::to_string(target->size()) +
                                    " entries for " + std::to_string(t.m()) +
                                    " columns");
  for (std::size_t i = 0; i < t.n(); ++i)
    if (t.size(i) < 2 || (t.config(i).nonnegative() && degree(t.config(i)) == 0))
      return std::nullopt;
  Plan plan = make_plan(t, k);
  if (target) plan.stages.push_back({t, lex_order(t.m()), *target, {}, {}, std::nullopt});
  return plan;
}

inline auto with_volumes(const SupportTuple &t, std::vector<MixedCell> all,
                         MixedCellsResult &r) {
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    fail(Errc::InvariantViolation, "a mixed cell was reached twice");
  r.cells.reserve(all.size());
  for (auto &c : all) {
    auto v = cell_volume(t, c);
    r.mixed_volume += v;
    r.cells.push_back({std::move(c), v});
  }
}

} // namespace detail

/// Runs a strategy to the end: the mixed cells of t with respect to the
/// lexicographic order on its columns, or, if a target lift is given, with
/// respect to that lift refined by the lexicographic order.
inline auto compute_mixed_cells(const SupportTuple &t, const RunOptions &opt = {},
                                const LiftVector *target = nullptr)
  -> MixedCellsResult {
  MixedCellsResult r;
  auto plan = detail::full_plan(t, opt.strategy, target);
  if (!plan) return r;
  const std::size_t w = std::max<std::size_t>(1, opt.threads);
  std::vector<std::vector<MixedCell>> found(w);
  TraverseOptions to;
  to.workers = w;
  to.stage_filter = opt.stage_filter;
  r.stats = traverse(
    plan->stages, plan->roots,
    [&](const MixedCell &c, std::size_t worker) { found[worker].push_back(c); }, to);
  std::vector<MixedCell> all;
  for (auto &v : found) all.insert(all.end(), v.begin(), v.end());
  detail::with_volumes(t, std::move(all), r);
  return r;
}

/// Same as compute_mixed_cells, but every stage is run by the global-front
/// engine. Single-threaded; `opt.threads` is ignored.
inline auto compute_mixed_cells_front(const SupportTuple &t, const RunOptions &opt = {},
                                      const LiftVector *target = nullptr,
                                      FrontOptions front = {}) -> MixedCellsResult {
  MixedCellsResult r;
  auto plan = detail::full_plan(t, opt.strategy, target);
  if (!plan) return r;
  front.stage_filter = opt.stage_filter;
  std::set<MixedCell> cells = plan->roots;
  for (const auto &stage : plan->stages) {
    cells = continue_front(stage, cells, &r.stats, front);
    const auto before = cells.size();
    cells = break_off(cells, stage.next_index);
    r.stats.dropped += before - cells.size();
  }
  detail::with_volumes(t, {cells.begin(), cells.end()}, r);
  return r;
}

} // namespace tropicell
