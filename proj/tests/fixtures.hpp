#pragma once

#include "tropicell/tropicell.hpp"

#include <random>
#include <set>
#include <vector>

namespace fixtures {

using namespace tropicell;

// Two plane quadrilaterals with mixed volume 4.
inline auto example31() -> SupportTuple {
  return new_support_tuple({{{0, 0}, {0, 2}, {1, 0}, {1, 1}},
                            {{0, 0}, {0, 1}, {1, 1}, {2, 0}}});
}

inline auto lift31() -> LiftVector {
  return LiftVector::from_integers({0, 0, 0, -2, 0, -3, -4, -8});
}

// lift31 with one coefficient raised; crosses the wall of the gamma=4 circuit
inline auto lift31_moved() -> LiftVector {
  return LiftVector::from_integers({0, 0, 0, -1, 0, -3, -4, -8});
}

// Cayley columns (0,0,1,0),(1,0,1,0),(0,1,1,0),(1,0,0,1),(0,1,0,1)
inline auto degenerate42() -> SupportTuple {
  return new_support_tuple({{{0, 0}, {1, 0}, {0, 1}}, {{1, 0}, {0, 1}}});
}

inline auto example62() -> SupportTuple {
  return new_support_tuple({{{0, 0}, {0, 1}, {2, 0}}, {{0, 0}, {0, 1}, {1, 1}}});
}

inline auto cell_set(const MixedCellsResult &r) -> std::set<MixedCell> {
  std::set<MixedCell> s;
  for (const auto &c : r.cells) s.insert(c.cell);
  return s;
}

inline auto random_lift(std::mt19937_64 &rng, std::size_t m, std::int64_t bound = 1000)
  -> LiftVector {
  std::uniform_int_distribution<std::int64_t> d(-bound, bound);
  LiftVector l;
  for (std::size_t g = 0; g < m; ++g) l.values.emplace_back(d(rng));
  return l;
}

// Mixed cells under `order`, by the brute-force oracle.
inline auto brute(const SupportTuple &t, const TermOrder &order) -> std::set<MixedCell> {
  return oracle::brute_mixed_cells(t, order);
}

} // namespace fixtures
