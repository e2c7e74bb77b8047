#pragma once

#include "tropicell/errors.hpp"
#include "tropicell/support_config.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tropicell {

using ColumnIndex = std::int32_t;

/// One edge per configuration, stored as global column indices with a < b.
class MixedCell {
public:
  using Pair = std::pair<ColumnIndex, ColumnIndex>;

  MixedCell() = default;
  explicit MixedCell(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    for (auto &p : pairs_) {
      if (p.first == p.second)
        fail(Errc::RepeatedColumn,
             "pair repeats column " + std::to_string(p.first + 1));
      if (p.first > p.second) std::swap(p.first, p.second);
    }
  }

  /// Builds a cell from per-configuration local indices (0-based).
  static auto from_local(const SupportTuple &t,
                         const std::vector<std::pair<std::size_t, std::size_t>> &local)
    -> MixedCell {
    if (local.size() != t.n())
      fail(Errc::DimensionMismatch, "cell needs one pair per configuration");
    std::vector<Pair> pairs;
    pairs.reserve(local.size());
    for (std::size_t i = 0; i < local.size(); ++i) {
      auto [a, b] = local[i];
      if (a >= t.size(i) || b >= t.size(i))
        fail(Errc::InvalidInput, "local index out of range in configuration " +
                                   std::to_string(i + 1));
      pairs.emplace_back(static_cast<ColumnIndex>(t.global(i, a)),
                         static_cast<ColumnIndex>(t.global(i, b)));
    }
    return MixedCell(std::move(pairs));
  }

  [[nodiscard]] auto n() const -> std::size_t { return pairs_.size(); }
  [[nodiscard]] auto pair(std::size_t i) const -> const Pair & { return pairs_[i]; }
  [[nodiscard]] auto pairs() const -> const std::vector<Pair> & { return pairs_; }

  [[nodiscard]] auto contains(ColumnIndex g) const -> bool {
    return std::any_of(pairs_.begin(), pairs_.end(), [g](const Pair &p) {
      return p.first == g || p.second == g;
    });
  }

  /// Copy with column `from` of pair i replaced by `to`.
  [[nodiscard]] auto replaced(std::size_t i, ColumnIndex from,
                              ColumnIndex to) const -> MixedCell {
    MixedCell c = *this;
    auto &p = c.pairs_[i];
    if (p.first == from) p.first = to;
    else if (p.second == from) p.second = to;
    else fail(Errc::InvariantViolation, "column not in pair");
    if (p.first == p.second)
      fail(Errc::RepeatedColumn, "replacement repeats a column");
    if (p.first > p.second) std::swap(p.first, p.second);
    return c;
  }

  /// Both members of pair i lie in configuration i.
  void validate(const SupportTuple &t) const {
    if (n() != t.n())
      fail(Errc::DimensionMismatch, "cell has " + std::to_string(n()) +
                                      " pairs for a tuple of size " +
                                      std::to_string(t.n()));
    for (std::size_t i = 0; i < n(); ++i) {
      auto [a, b] = pairs_[i];
      if (a < 0 || b < 0 || static_cast<std::size_t>(b) >= t.m() ||
          t.config_of(static_cast<std::size_t>(a)) != i ||
          t.config_of(static_cast<std::size_t>(b)) != i)
        fail(Errc::InvalidInput, "pair " + std::to_string(i + 1) +
                                   " does not belong to its configuration");
    }
  }

  /// "((2,3),(5,7))" with 1-based global indices.
  [[nodiscard]] auto to_string() const -> std::string {
    std::string s = "(";
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (i) s += ",";
      s += "(" + std::to_string(pairs_[i].first + 1) + "," +
           std::to_string(pairs_[i].second + 1) + ")";
    }
    return s + ")";
  }

  friend auto operator<=>(const MixedCell &, const MixedCell &) = default;
  friend auto operator==(const MixedCell &, const MixedCell &) -> bool = default;

private:
  std::vector<Pair> pairs_;
};

/// Parses the 1-based notation used in documentation and tests, e.g.
/// cell1({{2,3},{5,7}}).
inline auto cell1(std::initializer_list<std::pair<int, int>> one_based) -> MixedCell {
  std::vector<MixedCell::Pair> pairs;
  for (auto [a, b] : one_based) pairs.emplace_back(a - 1, b - 1);
  return MixedCell(std::move(pairs));
}

} // namespace tropicell
