#pragma once

#include "tropicell/errors.hpp"
#include "tropicell/exact_linalg.hpp"
#include "tropicell/mixed_cell.hpp"
#include "tropicell/mixed_cells.hpp"
#include "tropicell/support_config.hpp"
#include "tropicell/term_order.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <vector>

namespace tropicell {

/// One homotopy: walk from sigma toward tau over `tuple`, then send every
/// surviving cell through `next_index` (global column map into the next
/// stage's tuple, -1 for dropped columns; empty means identity).
struct StagePlan {
  SupportTuple tuple;
  TermOrder sigma;
  LiftVector tau;
  std::vector<bool> drop_mask;
  std::vector<ColumnIndex> next_index;
  std::optional<std::size_t> filter_config; // enables the stage facet filter

  [[nodiscard]] auto filter(bool enabled) const -> FacetFilter {
    FacetFilter f;
    if (!enabled || !filter_config) return f;
    f.enabled = true;
    f.config = *filter_config;
    f.dropped = drop_mask;
    if (f.dropped.size() != tuple.m()) f.dropped.assign(tuple.m(), false);
    return f;
  }
};

struct HomotopyStats {
  std::uint64_t wall_crossings{0};
  std::uint64_t circuits{0};
  std::uint64_t float_fallbacks{0};
  std::uint64_t wide_circuits{0};
  std::uint64_t leaves{0};
  std::uint64_t nodes{0};
  std::uint64_t dropped{0};
  std::uint64_t duplicate_insertions{0};
  std::uint64_t max_depth{0};

  auto operator+=(const HomotopyStats &o) -> HomotopyStats & {
    wall_crossings += o.wall_crossings;
    circuits += o.circuits;
    float_fallbacks += o.float_fallbacks;
    wide_circuits += o.wide_circuits;
    leaves += o.leaves;
    nodes += o.nodes;
    dropped += o.dropped;
    duplicate_insertions += o.duplicate_insertions;
    max_depth = std::max(max_depth, o.max_depth);
    return *this;
  }
  void absorb(const CircuitStats &c) {
    circuits += c.circuits;
    float_fallbacks += c.float_fallbacks;
    wide_circuits += c.wide_circuits;
  }
};

/// Applies a stage boundary map; nullopt if the cell uses a dropped column.
inline auto map_cell(const MixedCell &cell, const std::vector<ColumnIndex> &next)
  -> std::optional<MixedCell> {
  if (next.empty()) return cell;
  std::vector<MixedCell::Pair> pairs;
  pairs.reserve(cell.n());
  for (const auto &[a, b] : cell.pairs()) {
    if (static_cast<std::size_t>(b) >= next.size())
      fail(Errc::IndexMapError, "column outside the boundary map");
    ColumnIndex x = next[static_cast<std::size_t>(a)];
    ColumnIndex y = next[static_cast<std::size_t>(b)];
    if (x < 0 || y < 0) return std::nullopt;
    pairs.emplace_back(x, y);
  }
  return MixedCell(std::move(pairs));
}

struct FrontOptions {
  bool stage_filter{true};
  /// Called after every wall event with the volume removed and inserted.
  std::function<void(std::int64_t removed, std::int64_t inserted)> on_wall;
};

/// Reference engine: advances the whole set of cells wall by wall, always
/// crossing the globally earliest wall next. Single-threaded.
inline auto continue_front(const StagePlan &plan, const std::set<MixedCell> &start,
                           HomotopyStats *stats_out = nullptr,
                           const FrontOptions &opt = {}) -> std::set<MixedCell> {
  const auto &t = plan.tuple;
  ExitFinder finder(t, plan.sigma, integer_lift(plan.tau), plan.filter(opt.stage_filter));
  std::map<MixedCell, std::optional<FacetCrossing>> front;
  for (const auto &c : start) {
    c.validate(t);
    front.emplace(c, finder.find(c, Candidacy::Verify));
  }
  HomotopyStats stats;
  while (true) {
    const FacetCrossing *first = nullptr;
    for (const auto &[cell, x] : front) {
      if (!x) continue;
      if (!first) {
        first = &*x;
        continue;
      }
      if (same_wall(x->circuit, first->circuit)) continue;
      int s = crossing_sign(x->circuit, x->tau_value, first->circuit, first->tau_value,
                            plan.sigma);
      if (s == 0) fail(Errc::GenericityFailure, "two walls are crossed at once");
      if (s > 0) first = &*x;
    }
    if (!first) break;
    const Circuit wall = first->circuit;
    std::vector<std::pair<MixedCell, FacetCrossing>> hit;
    for (const auto &[cell, x] : front)
      if (x && same_wall(x->circuit, wall)) hit.emplace_back(cell, *x);
    std::int64_t removed = 0, inserted = 0;
    std::set<MixedCell> fresh;
    for (const auto &[cell, x] : hit) {
      removed += cell_volume(t, cell);
      front.erase(cell);
    }
    for (const auto &[cell, x] : hit) {
      // every cell past the wall, not only the canonical ones
      for (auto &child : flip_children(cell, x, false)) {
        if (fresh.count(child) || front.count(child)) {
          ++stats.duplicate_insertions;
          continue;
        }
        fresh.insert(child);
      }
    }
    for (const auto &c : fresh) {
      inserted += cell_volume(t, c);
      front.emplace(c, finder.find(c, Candidacy::Assume));
    }
    ++stats.wall_crossings;
    if (opt.on_wall) opt.on_wall(removed, inserted);
    if (removed != inserted)
      fail(Errc::InvariantViolation,
           "volume not conserved across a wall: " + std::to_string(removed) +
             " removed, " + std::to_string(inserted) + " inserted");
  }
  std::set<MixedCell> out;
  for (const auto &[cell, x] : front) out.insert(cell);
  stats.absorb(finder.stats());
  stats.leaves = out.size();
  if (stats_out) *stats_out += stats;
  return out;
}

struct TraverseOptions {
  std::size_t workers{1};
  bool stage_filter{true};
  bool canonical_children{true}; // false: keep duplicates (diagnostics)
  std::function<void(std::size_t stage, const MixedCell &)> on_node;
  std::uint64_t progress_interval{0};
  std::function<void(std::size_t worker, const HomotopyStats &)> progress;
};

namespace detail {

struct Node {
  std::size_t stage;
  MixedCell cell;
  std::uint64_t depth;
};

class WorkQueue {
public:
  void push(Node n) {
    std::lock_guard lock(m_);
    q_.push_back(std::move(n));
  }
  auto pop() -> std::optional<Node> {
    std::lock_guard lock(m_);
    if (q_.empty()) return std::nullopt;
    Node n = std::move(q_.back());
    q_.pop_back();
    return n;
  }
  auto steal() -> std::optional<Node> {
    std::lock_guard lock(m_);
    if (q_.empty()) return std::nullopt;
    Node n = std::move(q_.front());
    q_.pop_front();
    return n;
  }

private:
  std::mutex m_;
  std::deque<Node> q_;
};

} // namespace detail

/// Reverse-search traversal over all stages. Every leaf, mapped into the last
/// stage's output numbering, is passed to sink(cell, worker) exactly once.
/// The sink may be called concurrently from different workers.
template <class Sink>
auto traverse(const std::vector<StagePlan> &plans, const std::set<MixedCell> &roots,
              Sink &&sink, const TraverseOptions &opt = {}) -> HomotopyStats {
  if (plans.empty()) {
    HomotopyStats s;
    for (const auto &r : roots) {
      sink(r, std::size_t{0});
      ++s.leaves;
    }
    return s;
  }
  for (const auto &r : roots) r.validate(plans.front().tuple);
  const std::size_t workers = std::max<std::size_t>(1, opt.workers);

  std::vector<detail::WorkQueue> queues(workers);
  std::vector<HomotopyStats> stats(workers);
  std::atomic<std::int64_t> outstanding{0};
  std::atomic<bool> abort{false};
  std::exception_ptr error;
  std::mutex error_m;
  // idle workers park here until new nodes are queued
  std::mutex park_m;
  std::condition_variable park_cv;
  std::atomic<std::uint64_t> epoch{0};
  std::atomic<int> sleepers{0};
  auto wake = [&] {
    ++epoch;
    if (sleepers.load() > 0) {
      std::lock_guard lock(park_m);
      park_cv.notify_all();
    }
  };

  {
    std::size_t k = 0;
    for (const auto &r : roots) {
      ++outstanding;
      queues[k++ % workers].push({0, r, 0});
    }
  }

  auto work = [&](std::size_t w) {
    try {
      std::vector<ExitFinder> finders;
      finders.reserve(plans.size());
      for (const auto &p : plans)
        finders.emplace_back(p.tuple, p.sigma, integer_lift(p.tau),
                             p.filter(opt.stage_filter));
      auto &st = stats[w];
      auto expand = [&](detail::Node node) {
        ++st.nodes;
        st.max_depth = std::max(st.max_depth, node.depth);
        if (opt.on_node) opt.on_node(node.stage, node.cell);
        if (opt.progress && opt.progress_interval &&
            st.nodes % opt.progress_interval == 0)
          opt.progress(w, st);
        const auto &plan = plans[node.stage];
        auto mode = node.depth == 0 ? Candidacy::Verify : Candidacy::Assume;
        auto x = finders[node.stage].find(node.cell, mode);
        if (x) {
          ++st.wall_crossings;
          auto kids = flip_children(node.cell, *x, opt.canonical_children);
          for (auto &k : kids) {
            ++outstanding;
            queues[w].push({node.stage, std::move(k), node.depth + 1});
          }
          wake();
          return;
        }
        auto mapped = map_cell(node.cell, plan.next_index);
        if (!mapped) {
          ++st.dropped;
          return;
        }
        if (node.stage + 1 < plans.size()) {
          ++outstanding;
          queues[w].push({node.stage + 1, std::move(*mapped), node.depth + 1});
          wake();
          return;
        }
        ++st.leaves;
        sink(*mapped, w);
      };
      std::size_t victim = w;
      while (!abort.load(std::memory_order_relaxed)) {
        const auto seen = epoch.load();
        auto node = queues[w].pop();
        if (!node && workers > 1) {
          for (std::size_t k = 1; k < workers && !node; ++k) {
            victim = (victim + 1) % workers;
            if (victim != w) node = queues[victim].steal();
          }
        }
        if (!node) {
          if (outstanding.load() == 0) break;
          std::unique_lock lock(park_m);
          ++sleepers;
          park_cv.wait_for(lock, std::chrono::milliseconds(1), [&] {
            return epoch.load() != seen || outstanding.load() == 0 || abort.load();
          });
          --sleepers;
          continue;
        }
        expand(std::move(*node));
        if (--outstanding == 0) wake();
      }
      for (auto &f : finders) st.absorb(f.stats());
    } catch (...) {
      std::lock_guard lock(error_m);
      if (!error) error = std::current_exception();
      abort = true;
      wake();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto &th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  HomotopyStats total;
  for (const auto &s : stats) total += s;
  return total;
}

} // namespace tropicell
