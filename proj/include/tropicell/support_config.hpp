#pragma once

#include "tropicell/arith.hpp"
#include "tropicell/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tropicell {

using Exponent = std::int32_t;

/// Entries must satisfy |e| < 2^15; larger inputs are rejected at
/// construction so that the machine-integer paths stay within range.
inline constexpr std::int64_t kMaxEntryMagnitude = (std::int64_t{1} << 15) - 1;

/// One exponent configuration A_i: m_i column vectors of dimension n.
class Configuration {
public:
  Configuration() = default;
  Configuration(std::size_t dim, std::vector<std::vector<Exponent>> columns)
    : dim_(dim), columns_(std::move(columns)) {
    if (columns_.empty())
      fail(Errc::EmptyConfiguration, "configuration has no columns");
    for (const auto &c : columns_)
      if (c.size() != dim_)
        fail(Errc::DimensionMismatch,
             "column of length " + std::to_string(c.size()) +
               " in dimension " + std::to_string(dim_));
  }

  [[nodiscard]] auto dim() const -> std::size_t { return dim_; }
  [[nodiscard]] auto size() const -> std::size_t { return columns_.size(); }
  [[nodiscard]] auto column(std::size_t j) const -> const std::vector<Exponent> & {
    return columns_[j];
  }
  [[nodiscard]] auto columns() const -> const std::vector<std::vector<Exponent>> & {
    return columns_;
  }
  [[nodiscard]] auto nonnegative() const -> bool {
    for (const auto &c : columns_)
      for (auto e : c)
        if (e < 0) return false;
    return true;
  }
  friend auto operator==(const Configuration &, const Configuration &)
    -> bool = default;

private:
  std::size_t dim_{0};
  std::vector<std::vector<Exponent>> columns_;
};

/// Largest column sum of a configuration.
inline auto degree(const Configuration &config) -> std::int64_t {
  std::int64_t best = 0;
  for (const auto &c : config.columns()) {
    std::int64_t s = 0;
    for (auto e : c) s += e;
    best = std::max(best, s);
  }
  return best;
}

/// A square tuple (A_1, ..., A_n) with global column numbering.
///
/// Global index g of (config i, local j) is offset(i) + j. Columns are also
/// stored flat (column-major, n entries per column) for the hot loops.
/// A column may carry the "simplex" mark, set by prepend_simplex, which the
/// strategies use to know which columns are sent to -infinity.
class SupportTuple {
public:
  SupportTuple() = default;

  explicit SupportTuple(std::vector<Configuration> configs,
                        std::vector<bool> simplex_mask = {})
    : configs_(std::move(configs)) {
    if (configs_.empty())
      fail(Errc::InvalidInput, "a support tuple needs at least one configuration");
    n_ = configs_.size();
    offsets_.reserve(n_ + 1);
    offsets_.push_back(0);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto &c = configs_[i];
      if (c.dim() != n_)
        fail(Errc::DimensionMismatch,
             "configuration " + std::to_string(i + 1) + " has dimension " +
               std::to_string(c.dim()) + " but the tuple has " +
               std::to_string(n_) + " configurations");
      if (c.size() == 0)
        fail(Errc::EmptyConfiguration,
             "configuration " + std::to_string(i + 1) + " is empty");
      offsets_.push_back(offsets_.back() + c.size());
    }
    m_ = offsets_.back();
    exps_.reserve(m_ * n_);
    config_of_.reserve(m_);
    for (std::size_t i = 0; i < n_; ++i)
      for (const auto &col : configs_[i].columns()) {
        for (auto e : col) {
          if (e > kMaxEntryMagnitude || e < -kMaxEntryMagnitude)
            fail(Errc::EntryOutOfRange,
                 "exponent " + std::to_string(e) + " does not fit in 16 bits");
          exps_.push_back(e);
        }
        config_of_.push_back(static_cast<std::int32_t>(i));
      }
    if (simplex_mask.empty()) simplex_mask.assign(m_, false);
    if (simplex_mask.size() != m_)
      fail(Errc::DimensionMismatch, "simplex mask length differs from m");
    simplex_ = std::move(simplex_mask);
  }

  [[nodiscard]] auto n() const -> std::size_t { return n_; }
  [[nodiscard]] auto m() const -> std::size_t { return m_; }
  [[nodiscard]] auto size(std::size_t i) const -> std::size_t {
    return configs_[i].size();
  }
  [[nodiscard]] auto offset(std::size_t i) const -> std::size_t {
    return offsets_[i];
  }
  [[nodiscard]] auto offsets() const -> std::span<const std::size_t> {
    return {offsets_.data(), n_};
  }
  [[nodiscard]] auto config(std::size_t i) const -> const Configuration & {
    return configs_[i];
  }
  [[nodiscard]] auto configs() const -> const std::vector<Configuration> & {
    return configs_;
  }
  [[nodiscard]] auto config_of(std::size_t g) const -> std::size_t {
    return static_cast<std::size_t>(config_of_[g]);
  }
  [[nodiscard]] auto local_of(std::size_t g) const -> std::size_t {
    return g - offsets_[config_of(g)];
  }
  [[nodiscard]] auto global(std::size_t i, std::size_t j) const -> std::size_t {
    return offsets_[i] + j;
  }
  /// Exponent vector of global column g.
  [[nodiscard]] auto column(std::size_t g) const -> std::span<const Exponent> {
    return {exps_.data() + g * n_, n_};
  }
  [[nodiscard]] auto is_simplex_column(std::size_t g) const -> bool {
    return simplex_[g];
  }
  [[nodiscard]] auto simplex_mask() const -> const std::vector<bool> & {
    return simplex_;
  }
  [[nodiscard]] auto nonnegative() const -> bool {
    for (auto e : exps_)
      if (e < 0) return false;
    return true;
  }
  /// Nested column lists, the inverse of new_support_tuple.
  [[nodiscard]] auto raw() const
    -> std::vector<std::vector<std::vector<std::int64_t>>> {
    std::vector<std::vector<std::vector<std::int64_t>>> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (const auto &c : configs_[i].columns())
        out[i].emplace_back(c.begin(), c.end());
    return out;
  }

  friend auto operator==(const SupportTuple &a, const SupportTuple &b) -> bool {
    return a.configs_ == b.configs_ && a.simplex_ == b.simplex_;
  }

private:
  std::vector<Configuration> configs_;
  std::size_t n_{0};
  std::size_t m_{0};
  std::vector<std::size_t> offsets_;
  std::vector<Exponent> exps_;
  std::vector<std::int32_t> config_of_;
  std::vector<bool> simplex_;
};

/// Validates nested integer lists and builds a tuple.
inline auto new_support_tuple(
  const std::vector<std::vector<std::vector<std::int64_t>>> &raw)
  -> SupportTuple {
  if (raw.empty())
    fail(Errc::InvalidInput, "a support tuple needs at least one configuration");
  const std::size_t n = raw.size();
  std::vector<Configuration> configs;
  configs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].empty())
      fail(Errc::EmptyConfiguration,
           "configuration " + std::to_string(i + 1) + " is empty");
    std::vector<std::vector<Exponent>> cols;
    cols.reserve(raw[i].size());
    for (const auto &v : raw[i]) {
      if (v.size() != n)
        fail(Errc::DimensionMismatch,
             "configuration " + std::to_string(i + 1) +
               " has a vector of length " + std::to_string(v.size()) +
               ", expected " + std::to_string(n));
      std::vector<Exponent> col;
      col.reserve(n);
      for (auto e : v) {
        if (e > kMaxEntryMagnitude || e < -kMaxEntryMagnitude)
          fail(Errc::EntryOutOfRange,
               "exponent " + std::to_string(e) + " does not fit in 16 bits");
        col.push_back(static_cast<Exponent>(e));
      }
      cols.push_back(std::move(col));
    }
    configs.emplace_back(n, std::move(cols));
  }
  return SupportTuple(std::move(configs));
}

/// The (2n) x m Cayley matrix: exponent block on top, one indicator row per
/// configuration below.
class CayleyMatrix {
public:
  CayleyMatrix() = default;
  explicit CayleyMatrix(const SupportTuple &t)
    : n_(t.n()), m_(t.m()), entries_(2 * t.n() * t.m(), 0),
      config_of_(t.m()), local_of_(t.m()) {
    for (std::size_t g = 0; g < m_; ++g) {
      auto col = t.column(g);
      for (std::size_t r = 0; r < n_; ++r) entries_[r * m_ + g] = col[r];
      entries_[(n_ + t.config_of(g)) * m_ + g] = 1;
      config_of_[g] = t.config_of(g);
      local_of_[g] = t.local_of(g);
    }
  }

  [[nodiscard]] auto n() const -> std::size_t { return n_; }
  [[nodiscard]] auto rows() const -> std::size_t { return 2 * n_; }
  [[nodiscard]] auto cols() const -> std::size_t { return m_; }
  [[nodiscard]] auto at(std::size_t r, std::size_t c) const -> std::int64_t {
    return entries_[r * m_ + c];
  }
  [[nodiscard]] auto config_of(std::size_t g) const -> std::size_t {
    return config_of_[g];
  }
  [[nodiscard]] auto local_of(std::size_t g) const -> std::size_t {
    return local_of_[g];
  }

private:
  std::size_t n_{0};
  std::size_t m_{0};
  std::vector<std::int64_t> entries_;
  std::vector<std::size_t> config_of_;
  std::vector<std::size_t> local_of_;
};

inline auto cayley(const SupportTuple &t) -> CayleyMatrix {
  return CayleyMatrix(t);
}

/// Replaces configuration i by [B | A_i] where B = d * (0, e_1, ..., e_n).
/// The n+1 simplex columns come first and carry the simplex mark; existing
/// columns keep their relative order.
inline auto prepend_simplex(const SupportTuple &t, std::size_t i,
                            std::int64_t d) -> SupportTuple {
  if (d < 1) fail(Errc::InvalidInput, "simplex scale must be positive");
  if (i >= t.n()) fail(Errc::InvalidInput, "configuration index out of range");
  if (d > kMaxEntryMagnitude)
    fail(Errc::EntryOutOfRange, "simplex scale does not fit in 16 bits");
  const std::size_t n = t.n();
  std::vector<Configuration> configs;
  std::vector<bool> mask;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != i) {
      configs.push_back(t.config(k));
      for (std::size_t j = 0; j < t.size(k); ++j)
        mask.push_back(t.is_simplex_column(t.global(k, j)));
      continue;
    }
    std::vector<std::vector<Exponent>> cols;
    cols.emplace_back(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<Exponent> v(n, 0);
      v[r] = static_cast<Exponent>(d);
      cols.push_back(std::move(v));
    }
    for (std::size_t j = 0; j <= n; ++j) mask.push_back(true);
    for (const auto &c : t.config(k).columns()) {
      cols.push_back(c);
      mask.push_back(false);
    }
    configs.emplace_back(n, std::move(cols));
  }
  return SupportTuple(std::move(configs), std::move(mask));
}

/// One lift value per column, partitioned by configuration like the tuple.
struct LiftVector {
  std::vector<Rational> values;

  [[nodiscard]] auto size() const -> std::size_t { return values.size(); }
  [[nodiscard]] auto operator[](std::size_t g) const -> const Rational & {
    return values[g];
  }

  static auto zeros(std::size_t m) -> LiftVector {
    return LiftVector{std::vector<Rational>(m, Rational(0))};
  }
  static auto from_integers(const std::vector<std::int64_t> &v) -> LiftVector {
    LiftVector l;
    l.values.reserve(v.size());
    for (auto x : v) l.values.emplace_back(x);
    return l;
  }
  friend auto operator==(const LiftVector &, const LiftVector &) -> bool = default;
};

/// Checks the per-configuration shape of nested lifts and flattens them.
inline auto lift_for(const SupportTuple &t,
                     const std::vector<std::vector<Rational>> &per_config)
  -> LiftVector {
  if (per_config.size() != t.n())
    fail(Errc::DimensionMismatch, "lifts must have one list per configuration");
  LiftVector out;
  out.values.reserve(t.m());
  for (std::size_t i = 0; i < t.n(); ++i) {
    if (per_config[i].size() != t.size(i))
      fail(Errc::DimensionMismatch,
           "lift list " + std::to_string(i + 1) + " has " +
             std::to_string(per_config[i].size()) + " entries, expected " +
             std::to_string(t.size(i)));
    for (const auto &q : per_config[i]) out.values.push_back(q);
  }
  return out;
}

} // namespace tropicell
