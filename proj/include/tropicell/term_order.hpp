#pragma once

#include "tropicell/arith.hpp"
#include "tropicell/errors.hpp"
#include "tropicell/exact_linalg.hpp"
#include "tropicell/support_config.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace tropicell {

/// A symbolic lift a_1 + e a_2 + e^2 a_3 + ... followed by the identity rows
/// e_1, ..., e_m. Rows are stored as primitive integer vectors; a positive
/// rescaling of a row never changes a sign.
class TermOrder {
public:
  TermOrder() = default;
  explicit TermOrder(std::size_t m) : m_(m) {}

  [[nodiscard]] auto dim() const -> std::size_t { return m_; }
  [[nodiscard]] auto rows() const -> const std::vector<std::vector<BigInt>> & {
    return rows_;
  }
  [[nodiscard]] auto num_rows() const -> std::size_t { return rows_.size(); }
  /// Row k as machine integers, or nullptr if some entry is too large.
  [[nodiscard]] auto small_row(std::size_t k) const -> const std::vector<std::int64_t> * {
    return small_ok_[k] ? &small_[k] : nullptr;
  }

  void push_back_row(std::vector<BigInt> row) {
    if (row.size() != m_) fail(Errc::DimensionMismatch, "row has wrong length");
    bool all_zero = true;
    for (const auto &x : row) all_zero = all_zero && x == 0;
    if (all_zero) return;
    std::vector<std::int64_t> s;
    small_ok_.push_back(narrow_all(row, s));
    small_.push_back(std::move(s));
    rows_.push_back(std::move(row));
  }

  void push_front_row(std::vector<BigInt> row) {
    TermOrder t(m_);
    t.push_back_row(std::move(row));
    for (auto &r : rows_) t.push_back_row(std::move(r));
    *this = std::move(t);
  }

  friend auto operator==(const TermOrder &a, const TermOrder &b) -> bool {
    return a.m_ == b.m_ && a.rows_ == b.rows_;
  }

private:
  std::size_t m_{0};
  std::vector<std::vector<BigInt>> rows_;
  std::vector<std::vector<std::int64_t>> small_;
  std::vector<bool> small_ok_;
};

inline auto lex_order(std::size_t m) -> TermOrder {
  if (m < 1) fail(Errc::InvalidInput, "term order needs dimension >= 1");
  return TermOrder(m);
}

/// Primitive integer multiple of a lift.
inline auto integer_lift(const LiftVector &tau) -> std::vector<BigInt> {
  return primitive_integer_vector(tau.values);
}

/// tau prepended to the rows of base.
inline auto refine_by(const LiftVector &tau, const TermOrder &base) -> TermOrder {
  if (tau.size() != base.dim())
    fail(Errc::DimensionMismatch, "lift has " + std::to_string(tau.size()) +
                                    " entries for an order on " +
                                    std::to_string(base.dim()) + " columns");
  TermOrder t = base;
  t.push_front_row(integer_lift(tau));
  return t;
}

/// Sign of <sigma_e, v> for small e > 0.
inline auto order_sign(const TermOrder &order, std::span<const Rational> v) -> int {
  if (v.size() != order.dim())
    fail(Errc::DimensionMismatch, "vector length differs from order dimension");
  for (const auto &row : order.rows()) {
    Rational s = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (row[k] != 0 && v[k] != 0) s += Rational(row[k]) * v[k];
    if (s != 0) return sign_of(s);
  }
  for (const auto &x : v)
    if (x != 0) return sign_of(x);
  return 0;
}

inline auto order_sign(const TermOrder &order, std::span<const BigInt> v) -> int {
  std::vector<Rational> q(v.begin(), v.end());
  return order_sign(order, q);
}

/// Sign of <sigma_e, c> for a circuit, touching only its support.
inline auto order_sign(const TermOrder &order, const Circuit &c) -> int {
  for (std::size_t r = 0; r < order.num_rows(); ++r) {
    if (const auto *row = order.small_row(r); row && !c.is_wide()) {
      try {
        detail::i128 s = 0;
        for (std::size_t k = 0; k < c.size(); ++k)
          s = detail::add(s, detail::mul((*row)[static_cast<std::size_t>(c.support[k])],
                                         c.coeffs[k]));
        if (s != 0) return s > 0 ? 1 : -1;
        continue;
      } catch (const detail::Overflow &) {
      }
    }
    const auto &row = order.rows()[r];
    BigInt s = 0;
    for (std::size_t k = 0; k < c.size(); ++k)
      s += row[static_cast<std::size_t>(c.support[k])] * c.big(k);
    if (s != 0) return sign_of(s);
  }
  return c.size() == 0 ? 0 : c.sign_at(c.support.front());
}

/// <tau, c> for an integer lift.
inline auto lift_value(std::span<const BigInt> tau, const Circuit &c) -> BigInt {
  BigInt s = 0;
  for (std::size_t k = 0; k < c.size(); ++k)
    s += tau[static_cast<std::size_t>(c.support[k])] * c.big(k);
  return s;
}

namespace detail {

template <class Num>
auto crossing_sign_impl(const Circuit &c, const Num &tc, const Circuit &c2,
                        const Num &tc2, const TermOrder &sigma,
                        const std::vector<std::vector<Num>> &rows) -> int {
  auto coef = [](const Circuit &x, std::size_t k) -> Num {
    if constexpr (std::is_same_v<Num, BigInt>) return x.big(k);
    else return Num(x.coeffs[k]);
  };
  // rows: sign of tc2 <row,c> - tc <row,c2>
  for (const auto &row : rows) {
    Num a(0), b(0);
    for (std::size_t k = 0; k < c.size(); ++k)
      a += row[static_cast<std::size_t>(c.support[k])] * coef(c, k);
    for (std::size_t k = 0; k < c2.size(); ++k)
      b += row[static_cast<std::size_t>(c2.support[k])] * coef(c2, k);
    Num s = tc2 * a - tc * b;
    if (sign_of(s) != 0) return sign_of(s);
  }
  (void)sigma;
  // lex tail: first nonzero entry of tc2 c - tc c2 in column order
  std::size_t i = 0, j = 0;
  while (i < c.size() || j < c2.size()) {
    Num v(0);
    if (j == c2.size() || (i < c.size() && c.support[i] < c2.support[j])) {
      v = tc2 * coef(c, i);
      ++i;
    } else if (i == c.size() || c2.support[j] < c.support[i]) {
      v = Num(0) - tc * coef(c2, j);
      ++j;
    } else {
      v = tc2 * coef(c, i) - tc * coef(c2, j);
      ++i;
      ++j;
    }
    if (sign_of(v) != 0) return sign_of(v);
  }
  return 0;
}

} // namespace detail

/// Sign of <sigma_e, tc2 * c - tc * c2>, where tc = <tau,c> and tc2 = <tau,c2>
/// for some positive multiple of tau.
inline auto crossing_sign(const Circuit &c, const BigInt &tc, const Circuit &c2,
                          const BigInt &tc2, const TermOrder &sigma) -> int {
  if (!c.is_wide() && !c2.is_wide() && fits_int64(tc) && fits_int64(tc2)) {
    try {
      std::vector<std::vector<detail::Checked>> rows;
      bool ok = true;
      for (std::size_t r = 0; r < sigma.num_rows() && ok; ++r) {
        const auto *row = sigma.small_row(r);
        if (!row) {
          ok = false;
          break;
        }
        rows.emplace_back(row->begin(), row->end());
      }
      if (ok)
        return detail::crossing_sign_impl(
          c, detail::Checked(static_cast<std::int64_t>(tc)), c2,
          detail::Checked(static_cast<std::int64_t>(tc2)), sigma, rows);
    } catch (const detail::Overflow &) {
    }
  }
  return detail::crossing_sign_impl(c, tc, c2, tc2, sigma, sigma.rows());
}

/// True iff the walk from sigma toward tau leaves through the facet of c
/// strictly before the facet of c2.
inline auto crossing_less(const Circuit &c, const Circuit &c2, const LiftVector &tau,
                          const TermOrder &sigma) -> bool {
  if (tau.size() != sigma.dim())
    fail(Errc::DimensionMismatch, "lift and order dimensions differ");
  auto t = integer_lift(tau);
  BigInt tc = lift_value(t, c), tc2 = lift_value(t, c2);
  if (!(tc < 0) || !(tc2 < 0) || order_sign(sigma, c) <= 0 ||
      order_sign(sigma, c2) <= 0)
    fail(Errc::PreconditionViolated,
         "crossing comparison needs two facets violated by the target");
  int s = crossing_sign(c, tc, c2, tc2, sigma);
  if (s == 0)
    fail(Errc::GenericityFailure, "two facets cross at the same time");
  return s > 0;
}

} // namespace tropicell
