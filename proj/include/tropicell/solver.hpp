#pragma once

#include "tropicell/arith.hpp"
#include "tropicell/errors.hpp"
#include "tropicell/exact_linalg.hpp"
#include "tropicell/homotopy.hpp"
#include "tropicell/mixed_cell.hpp"
#include "tropicell/strategies.hpp"
#include "tropicell/support_config.hpp"
#include "tropicell/term_order.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace tropicell {

struct SolutionPoint {
  std::vector<Rational> coords;
  std::int64_t multiplicity{0};
  friend auto operator==(const SolutionPoint &, const SolutionPoint &) -> bool = default;
};

/// The point x where every pair of the cell attains equal lifted value:
/// <A_{a_i}, x> + w_{a_i} = <A_{b_i}, x> + w_{b_i}.
inline auto solve_cell(const SupportTuple &t, const LiftVector &omega,
                       const MixedCell &cell) -> std::vector<Rational> {
  cell.validate(t);
  if (omega.size() != t.m())
    fail(Errc::DimensionMismatch, "lift dimension differs from column count");
  const std::size_t n = t.n();
  // rows (A_{b_i} - A_{a_i})^T
  std::vector<std::int64_t> et(n * n);
  std::vector<Rational> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [a, b] = cell.pair(i);
    auto ca = t.column(static_cast<std::size_t>(a));
    auto cb = t.column(static_cast<std::size_t>(b));
    for (std::size_t r = 0; r < n; ++r) et[i * n + r] = std::int64_t{cb[r]} - ca[r];
    rhs[i] = omega[static_cast<std::size_t>(a)] - omega[static_cast<std::size_t>(b)];
  }
  BigInt l = 1;
  for (const auto &q : rhs) {
    BigInt d = boost::multiprecision::denominator(q);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  std::vector<BigInt> scaled;
  for (const auto &q : rhs)
    scaled.push_back(boost::multiprecision::numerator(q) *
                     (l / boost::multiprecision::denominator(q)));
  auto sol = detail::exact_scaled_solve(et, n, scaled);
  if (!sol) fail(Errc::SingularCell, "cell " + cell.to_string() + " is singular");
  std::vector<Rational> x;
  for (auto &v : sol->second) x.emplace_back(v, sol->first * l);
  return x;
}

/// Every configuration attains its maximum lifted value at least twice.
inline auto verify_solution(const SupportTuple &t, const LiftVector &omega,
                            const std::vector<Rational> &x) -> bool {
  if (x.size() != t.n() || omega.size() != t.m()) return false;
  for (std::size_t i = 0; i < t.n(); ++i) {
    Rational best;
    int count = 0;
    for (std::size_t j = 0; j < t.size(i); ++j) {
      const std::size_t g = t.global(i, j);
      Rational v = omega[g];
      auto col = t.column(g);
      for (std::size_t r = 0; r < t.n(); ++r)
        if (col[r] != 0) v += x[r] * col[r];
      if (count == 0 || v > best) {
        best = v;
        count = 1;
      } else if (v == best) {
        ++count;
      }
    }
    if (count < 2) return false;
  }
  return true;
}

struct SolveResult {
  std::vector<SolutionPoint> points; // sorted by coordinates
  std::vector<CellVolume> cells;
  HomotopyStats stats;
};

/// A finite superset of the isolated points of the tropical intersection
/// for lift omega, with multiplicities summed over the cells of each point.
inline auto solve_superset(const SupportTuple &t, const LiftVector &omega,
                           const RunOptions &opt = {}) -> SolveResult {
  SolveResult res;
  auto cells = compute_mixed_cells(t, opt, &omega);
  res.stats = cells.stats;
  std::map<std::vector<Rational>, std::int64_t> merged;
  for (auto &cv : cells.cells) {
    auto x = solve_cell(t, omega, cv.cell);
    if (!verify_solution(t, omega, x))
      fail(Errc::InvariantViolation,
           "point of cell " + cv.cell.to_string() + " is not a tropical solution");
    merged[x] += cv.volume;
  }
  res.cells = std::move(cells.cells);
  for (auto &[x, mult] : merged) res.points.push_back({x, mult});
  return res;
}

} // namespace tropicell
