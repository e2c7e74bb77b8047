#pragma once

#include "tropicell/arith.hpp"
#include "tropicell/errors.hpp"
#include "tropicell/mixed_cell.hpp"
#include "tropicell/support_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tropicell {

/// Primitive integer kernel vector of the Cayley submatrix formed by a cell
/// and one extra column gamma, normalized so that the gamma entry is negative.
/// Only nonzero entries are stored; `support` is sorted.
struct Circuit {
  std::vector<ColumnIndex> support;
  std::vector<std::int64_t> coeffs; // aligned with support unless wide
  std::vector<BigInt> wide;         // used instead of coeffs when too large
  ColumnIndex gamma{-1};

  [[nodiscard]] auto is_wide() const -> bool { return !wide.empty(); }
  [[nodiscard]] auto size() const -> std::size_t { return support.size(); }

  [[nodiscard]] auto big(std::size_t k) const -> BigInt {
    return is_wide() ? wide[k] : BigInt(coeffs[k]);
  }
  [[nodiscard]] auto position(ColumnIndex g) const -> std::optional<std::size_t> {
    auto it = std::lower_bound(support.begin(), support.end(), g);
    if (it == support.end() || *it != g) return std::nullopt;
    return static_cast<std::size_t>(it - support.begin());
  }
  /// Sign of the entry at global column g (0 off the support).
  [[nodiscard]] auto sign_at(ColumnIndex g) const -> int {
    auto k = position(g);
    if (!k) return 0;
    return is_wide() ? sign_of(wide[*k]) : sign_of(coeffs[*k]);
  }
  [[nodiscard]] auto value_at(ColumnIndex g) const -> BigInt {
    auto k = position(g);
    return k ? big(*k) : BigInt(0);
  }
  /// Entries in global column order, zero off the support.
  [[nodiscard]] auto dense(std::size_t m) const -> std::vector<BigInt> {
    std::vector<BigInt> v(m, 0);
    for (std::size_t k = 0; k < support.size(); ++k)
      v[static_cast<std::size_t>(support[k])] = big(k);
    return v;
  }

  friend auto operator==(const Circuit &a, const Circuit &b) -> bool {
    if (a.support != b.support || a.gamma != b.gamma) return false;
    for (std::size_t k = 0; k < a.support.size(); ++k)
      if (a.big(k) != b.big(k)) return false;
    return true;
  }
};

namespace detail {

inline auto exact_div(const BigInt &a, const BigInt &b) -> BigInt { return a / b; }
inline auto exact_div(Checked a, Checked b) -> Checked {
  // b divides a exactly in Bareiss elimination; b != 0
  auto q = a.raw() / b.raw();
  Checked c(0);
  return c + Checked(narrow64(q));
}

/// Fraction-free (Bareiss) determinant of a k x k row-major matrix.
template <class Num> auto bareiss_det(std::vector<Num> a, std::size_t k) -> Num {
  if (k == 0) return Num(1);
  Num prev(1);
  int sgn = 1;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (sign_of(a[p * k + p]) == 0) {
      std::size_t r = p + 1;
      while (r < k && sign_of(a[r * k + p]) == 0) ++r;
      if (r == k) return Num(0);
      for (std::size_t c = 0; c < k; ++c) std::swap(a[p * k + c], a[r * k + c]);
      sgn = -sgn;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) {
        Num t = a[i * k + j] * a[p * k + p] - a[i * k + p] * a[p * k + j];
        a[i * k + j] = exact_div(t, prev);
      }
      a[i * k + p] = Num(0);
    }
    prev = a[p * k + p];
  }
  Num d = a[k * k - 1];
  return sgn < 0 ? Num(0) - d : d;
}

/// Exact determinant: machine integers first, BigInt on overflow.
inline auto determinant(std::span<const std::int64_t> rowmajor, std::size_t k)
  -> BigInt {
  try {
    std::vector<Checked> a(rowmajor.begin(), rowmajor.end());
    Checked d = bareiss_det(std::move(a), k);
    return BigInt(narrow64(d.raw()));
  } catch (const Overflow &) {
    std::vector<BigInt> a;
    a.reserve(rowmajor.size());
    for (auto v : rowmajor) a.emplace_back(v);
    return bareiss_det(std::move(a), k);
  }
}

/// Exact solve of E x = D b with D > 0 the lcm of the solution denominators.
/// Returns nullopt when E is singular.
inline auto exact_scaled_solve(std::span<const std::int64_t> e, std::size_t n,
                               std::span<const BigInt> rhs)
  -> std::optional<std::pair<BigInt, std::vector<BigInt>>> {
  std::vector<Rational> a(n * (n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r * (n + 1) + c] = e[r * n + c];
    a[r * (n + 1) + n] = Rational(rhs[r]);
  }
  const std::size_t w = n + 1;
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t piv = p;
    while (piv < n && a[piv * w + p] == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != p)
      for (std::size_t c = 0; c < w; ++c) std::swap(a[p * w + c], a[piv * w + c]);
    Rational inv = 1 / a[p * w + p];
    for (std::size_t c = p; c < w; ++c) a[p * w + c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == p || a[r * w + p] == 0) continue;
      Rational f = a[r * w + p];
      for (std::size_t c = p; c < w; ++c) a[r * w + c] -= f * a[p * w + c];
    }
  }
  BigInt d = 1;
  for (std::size_t r = 0; r < n; ++r) {
    BigInt den = boost::multiprecision::denominator(a[r * w + n]);
    d = d / boost::multiprecision::gcd(d, den) * den;
  }
  std::vector<BigInt> x(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto &q = a[r * w + n];
    x[r] = boost::multiprecision::numerator(q) *
           (d / boost::multiprecision::denominator(q));
  }
  return std::make_pair(std::move(d), std::move(x));
}

} // namespace detail

/// Counters for the circuit computations of one worker.
struct CircuitStats {
  std::uint64_t circuits{0};
  std::uint64_t float_fallbacks{0};
  std::uint64_t wide_circuits{0}; // coefficients past 64 bits

  auto operator+=(const CircuitStats &o) -> CircuitStats & {
    circuits += o.circuits;
    float_fallbacks += o.float_fallbacks;
    wide_circuits += o.wide_circuits;
    return *this;
  }
};

/// How far to trust that a cell is a candidate before factoring it.
enum class Candidacy {
  Verify, // compute the exact determinant; NotACandidate if zero
  Assume, // the caller knows it (children of flips, strategy roots)
};

/// The n x n edge matrix E of a cell, whose i-th column is
/// A_{b_i} - A_{a_i}, factored in floating point.
///
/// Every circuit of the cell reduces to a solve with E: for gamma in
/// configuration j, the kernel vector with c_gamma = -1 is
///   c_{a_i} = -l_i, c_{b_i} = l_i (i != j),
///   c_{a_j} = 1 - l_j, c_{b_j} = l_j,
/// where E l = A_gamma - A_{a_j}. The float solution is scaled by the rounded
/// determinant, rounded to integers and accepted only after the identity
/// E x = D r has been checked in exact integer arithmetic. Anything doubtful
/// is recomputed with exact rationals.
class CellSystem {
public:
  CellSystem() = default;
  CellSystem(const SupportTuple &t, const MixedCell &cell,
             Candidacy mode = Candidacy::Verify) {
    reset(t, cell, mode);
  }

  void reset(const SupportTuple &t, const MixedCell &cell,
             Candidacy mode = Candidacy::Verify) {
    tuple_ = &t;
    cell_ = &cell;
    n_ = t.n();
    if (cell.n() != n_)
      fail(Errc::DimensionMismatch, "cell size differs from tuple size");
    const std::size_t n = n_;
    e_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto [a, b] = cell.pair(i);
      if (a == b) fail(Errc::RepeatedColumn, "pair repeats a column");
      auto ca = t.column(static_cast<std::size_t>(a));
      auto cb = t.column(static_cast<std::size_t>(b));
      for (std::size_t r = 0; r < n; ++r)
        e_[r * n + i] = std::int64_t{cb[r]} - std::int64_t{ca[r]};
    }
    if (mode == Candidacy::Verify) {
      if (detail::determinant(e_, n) == 0)
        fail(Errc::NotACandidate, "cell " + cell.to_string() +
                                    " has a singular edge matrix");
    }
    factor();
  }

  [[nodiscard]] auto n() const -> std::size_t { return n_; }
  [[nodiscard]] auto edge_matrix() const -> std::span<const std::int64_t> {
    return e_;
  }

  /// Circuit of the cell plus column gamma.
  auto circuit(ColumnIndex gamma, CircuitStats *stats = nullptr,
               bool force_exact = false) const -> Circuit {
    const auto &t = *tuple_;
    if (gamma < 0 || static_cast<std::size_t>(gamma) >= t.m())
      fail(Errc::InvalidInput, "gamma out of range");
    if (cell_->contains(gamma))
      fail(Errc::GammaInCell, "column " + std::to_string(gamma + 1) +
                                " already belongs to the cell");
    if (stats) ++stats->circuits;
    const std::size_t j = t.config_of(static_cast<std::size_t>(gamma));
    const auto aj = static_cast<std::size_t>(cell_->pair(j).first);
    auto cg = t.column(static_cast<std::size_t>(gamma));
    auto ca = t.column(aj);
    rhs_.resize(n_);
    for (std::size_t r = 0; r < n_; ++r)
      rhs_[r] = std::int64_t{cg[r]} - std::int64_t{ca[r]};

    if (!force_exact && ok_) {
      if (auto c = fast_circuit(gamma, j)) return std::move(*c);
    }
    if (stats) ++stats->float_fallbacks;
    auto c = exact_circuit(gamma, j);
    if (stats && c.is_wide()) ++stats->wide_circuits;
    return c;
  }

  /// Exact (D, y) with E^T y = D * b and D != 0. Used to evaluate the lift
  /// functional on every circuit of the cell in O(n) per column.
  struct DualPoint {
    bool wide{false};
    std::int64_t d{0};
    std::vector<std::int64_t> y;
    BigInt big_d;
    std::vector<BigInt> big_y;
  };

  auto dual_point(std::span<const std::int64_t> b, CircuitStats *stats = nullptr) const
    -> DualPoint {
    DualPoint p;
    if (ok_ && fast_dual(b, p)) return p;
    if (stats) ++stats->float_fallbacks;
    // exact: solve E^T y = b over the rationals
    std::vector<std::int64_t> et(n_ * n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) et[r * n_ + c] = e_[c * n_ + r];
    std::vector<BigInt> rb(b.begin(), b.end());
    auto sol = detail::exact_scaled_solve(et, n_, rb);
    if (!sol) fail(Errc::InternalRankError, "edge matrix is singular");
    p.wide = true;
    p.big_d = std::move(sol->first);
    p.big_y = std::move(sol->second);
    if (fits_int64(p.big_d)) {
      std::vector<std::int64_t> small;
      if (narrow_all(p.big_y, small)) {
        p.wide = false;
        p.d = static_cast<std::int64_t>(p.big_d);
        p.y = std::move(small);
      }
    }
    return p;
  }

private:
  void factor() {
    const std::size_t n = n_;
    lu_.resize(n * n);
    for (std::size_t k = 0; k < n * n; ++k) lu_[k] = static_cast<double>(e_[k]);
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    ok_ = true;
    double det = 1.0;
    for (std::size_t p = 0; p < n; ++p) {
      std::size_t piv = p;
      double best = std::fabs(lu_[p * n + p]);
      for (std::size_t r = p + 1; r < n; ++r) {
        double v = std::fabs(lu_[r * n + p]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < 1e-9) {
        ok_ = false;
        return;
      }
      if (piv != p) {
        for (std::size_t c = 0; c < n; ++c)
          std::swap(lu_[p * n + c], lu_[piv * n + c]);
        std::swap(perm_[p], perm_[piv]);
        det = -det;
      }
      const double d = lu_[p * n + p];
      det *= d;
      for (std::size_t r = p + 1; r < n; ++r) {
        double f = lu_[r * n + p] / d;
        lu_[r * n + p] = f;
        if (f == 0.0) continue;
        for (std::size_t c = p + 1; c < n; ++c) lu_[r * n + c] -= f * lu_[p * n + c];
      }
    }
    if (!(std::fabs(det) < kExactDoubleLimit)) {
      ok_ = false;
      return;
    }
    det_ = std::llround(det);
    if (det_ == 0) ok_ = false;
  }

  static constexpr double kExactDoubleLimit = 4503599627370496.0; // 2^52
  static constexpr double kRoundingTolerance = 1.0 / 1048576.0;   // 2^-20

  // Solves E x = b (transposed = false) or E^T x = b in place.
  void float_solve(std::vector<double> &x, bool transposed) const {
    const std::size_t n = n_;
    if (!transposed) {
      std::vector<double> &b = x;
      tmp_.resize(n);
      for (std::size_t r = 0; r < n; ++r) tmp_[r] = b[perm_[r]];
      for (std::size_t r = 0; r < n; ++r) {
        double s = tmp_[r];
        for (std::size_t c = 0; c < r; ++c) s -= lu_[r * n + c] * tmp_[c];
        tmp_[r] = s;
      }
      for (std::size_t r = n; r-- > 0;) {
        double s = tmp_[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= lu_[r * n + c] * tmp_[c];
        tmp_[r] = s / lu_[r * n + r];
      }
      b = tmp_;
      return;
    }
    // P E = L U  =>  E^T = U^T L^T P
    tmp_ = x;
    for (std::size_t r = 0; r < n; ++r) {
      double s = tmp_[r];
      for (std::size_t c = 0; c < r; ++c) s -= lu_[c * n + r] * tmp_[c];
      tmp_[r] = s / lu_[r * n + r];
    }
    for (std::size_t r = n; r-- > 0;) {
      double s = tmp_[r];
      for (std::size_t c = r + 1; c < n; ++c) s -= lu_[c * n + r] * tmp_[c];
      tmp_[r] = s;
    }
    for (std::size_t r = 0; r < n; ++r) x[perm_[r]] = tmp_[r];
  }

  // Rounds D * sol to integers, rejecting anything not clearly integral.
  auto round_scaled(const std::vector<double> &sol, std::vector<std::int64_t> &out) const
    -> bool {
    out.resize(n_);
    const auto d = static_cast<double>(det_);
    for (std::size_t k = 0; k < n_; ++k) {
      double v = sol[k] * d;
      if (!(std::fabs(v) < kExactDoubleLimit)) return false;
      double r = std::nearbyint(v);
      if (std::fabs(v - r) >= kRoundingTolerance) return false;
      out[k] = static_cast<std::int64_t>(r);
    }
    return true;
  }

  auto fast_circuit(ColumnIndex gamma, std::size_t j) const -> std::optional<Circuit> {
    const std::size_t n = n_;
    sol_.resize(n);
    for (std::size_t r = 0; r < n; ++r) sol_[r] = static_cast<double>(rhs_[r]);
    float_solve(sol_, false);
    if (!round_scaled(sol_, x_)) return std::nullopt;
    try {
      // exact check E x == D r
      for (std::size_t r = 0; r < n; ++r) {
        detail::i128 s = 0;
        for (std::size_t c = 0; c < n; ++c)
          s = detail::add(s, detail::mul(e_[r * n + c], x_[c]));
        if (s != detail::mul(det_, rhs_[r])) return std::nullopt;
      }
      return assemble_small(gamma, j);
    } catch (const detail::Overflow &) {
      return std::nullopt;
    }
  }

  auto fast_dual(std::span<const std::int64_t> b, DualPoint &p) const -> bool {
    const std::size_t n = n_;
    sol_.resize(n);
    for (std::size_t r = 0; r < n; ++r) sol_[r] = static_cast<double>(b[r]);
    float_solve(sol_, true);
    if (!round_scaled(sol_, p.y)) return false;
    try {
      for (std::size_t c = 0; c < n; ++c) {
        detail::i128 s = 0;
        for (std::size_t r = 0; r < n; ++r)
          s = detail::add(s, detail::mul(e_[r * n + c], p.y[r]));
        if (s != detail::mul(det_, b[c])) return false;
      }
    } catch (const detail::Overflow &) {
      return false;
    }
    p.d = det_;
    return true;
  }

  auto assemble_small(ColumnIndex gamma, std::size_t j) const -> Circuit {
    entries_.clear();
    const std::int64_t d = det_;
    for (std::size_t i = 0; i < n_; ++i) {
      auto [a, b] = cell_->pair(i);
      std::int64_t cb = x_[i];
      std::int64_t ca = i == j ? detail::narrow64(detail::sub(d, cb))
                               : detail::narrow64(detail::sub(0, cb));
      entries_.emplace_back(a, ca);
      entries_.emplace_back(b, cb);
    }
    entries_.emplace_back(gamma, detail::narrow64(detail::sub(0, d)));
    const bool flip = d < 0;
    std::int64_t g = 0;
    for (auto &[idx, v] : entries_) {
      if (flip) v = detail::narrow64(detail::sub(0, v));
      g = std::gcd(g, v < 0 ? -v : v);
    }
    std::sort(entries_.begin(), entries_.end());
    Circuit c;
    c.gamma = gamma;
    c.support.reserve(entries_.size());
    c.coeffs.reserve(entries_.size());
    for (auto [idx, v] : entries_) {
      if (v == 0) continue;
      c.support.push_back(idx);
      c.coeffs.push_back(v / g);
    }
    return c;
  }

  auto exact_circuit(ColumnIndex gamma, std::size_t j) const -> Circuit {
    std::vector<BigInt> r(rhs_.begin(), rhs_.end());
    auto sol = detail::exact_scaled_solve(e_, n_, r);
    if (!sol)
      fail(Errc::InternalRankError,
           "kernel of the circuit submatrix is not one-dimensional");
    const BigInt &d = sol->first; // positive
    const auto &x = sol->second;
    std::vector<std::pair<ColumnIndex, BigInt>> ent;
    for (std::size_t i = 0; i < n_; ++i) {
      auto [a, b] = cell_->pair(i);
      ent.emplace_back(a, i == j ? BigInt(d - x[i]) : BigInt(-x[i]));
      ent.emplace_back(b, x[i]);
    }
    ent.emplace_back(gamma, BigInt(-d));
    BigInt g = 0;
    for (auto &[idx, v] : ent) g = boost::multiprecision::gcd(g, v);
    std::sort(ent.begin(), ent.end(),
              [](const auto &p, const auto &q) { return p.first < q.first; });
    Circuit c;
    c.gamma = gamma;
    std::vector<BigInt> vals;
    for (auto &[idx, v] : ent) {
      if (v == 0) continue;
      c.support.push_back(idx);
      vals.push_back(v / g);
    }
    if (!narrow_all(vals, c.coeffs)) c.wide = std::move(vals);
    return c;
  }

  const SupportTuple *tuple_{nullptr};
  const MixedCell *cell_{nullptr};
  std::size_t n_{0};
  std::vector<std::int64_t> e_;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
  std::int64_t det_{0};
  bool ok_{false};
  mutable std::vector<std::int64_t> rhs_;
  mutable std::vector<double> sol_;
  mutable std::vector<double> tmp_;
  mutable std::vector<std::int64_t> x_;
  mutable std::vector<std::pair<ColumnIndex, std::int64_t>> entries_;
};

namespace detail {

inline auto tuple_of(const CayleyMatrix &cm) -> SupportTuple {
  const std::size_t n = cm.n();
  std::vector<std::vector<std::vector<Exponent>>> cols(n);
  for (std::size_t g = 0; g < cm.cols(); ++g) {
    std::vector<Exponent> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = static_cast<Exponent>(cm.at(r, g));
    cols[cm.config_of(g)].push_back(std::move(v));
  }
  std::vector<Configuration> configs;
  for (auto &c : cols) configs.emplace_back(n, std::move(c));
  return SupportTuple(std::move(configs));
}

inline void check_pairs(const CayleyMatrix &cm, const MixedCell &cell) {
  if (cell.n() != cm.n())
    fail(Errc::DimensionMismatch, "cell size differs from tuple size");
  for (std::size_t i = 0; i < cell.n(); ++i) {
    auto [a, b] = cell.pair(i);
    if (a == b) fail(Errc::RepeatedColumn, "pair repeats a column");
    if (a < 0 || static_cast<std::size_t>(b) >= cm.cols() ||
        cm.config_of(static_cast<std::size_t>(a)) != i ||
        cm.config_of(static_cast<std::size_t>(b)) != i)
      fail(Errc::InvalidInput, "pair " + std::to_string(i + 1) +
                                 " does not belong to its configuration");
  }
}

} // namespace detail

/// True iff the 2n x 2n Cayley submatrix selected by the cell is nonsingular.
inline auto is_candidate(const CayleyMatrix &cm, const MixedCell &cell) -> bool {
  detail::check_pairs(cm, cell);
  const std::size_t k = 2 * cm.n();
  std::vector<std::int64_t> sub(k * k);
  for (std::size_t i = 0; i < cell.n(); ++i) {
    auto [a, b] = cell.pair(i);
    for (std::size_t r = 0; r < k; ++r) {
      sub[r * k + 2 * i] = cm.at(r, static_cast<std::size_t>(a));
      sub[r * k + 2 * i + 1] = cm.at(r, static_cast<std::size_t>(b));
    }
  }
  return detail::determinant(sub, k) != 0;
}

/// Circuit of `cell` plus column `gamma`, c_gamma < 0, primitive.
inline auto circuit(const CayleyMatrix &cm, const MixedCell &cell,
                    ColumnIndex gamma, CircuitStats *stats = nullptr) -> Circuit {
  detail::check_pairs(cm, cell);
  if (cell.contains(gamma))
    fail(Errc::GammaInCell, "column " + std::to_string(gamma + 1) +
                              " already belongs to the cell");
  auto t = detail::tuple_of(cm);
  CellSystem sys(t, cell, Candidacy::Verify);
  return sys.circuit(gamma, stats);
}

/// Exact identity Cayley * c == 0.
inline auto annihilates(const CayleyMatrix &cm, const Circuit &c) -> bool {
  for (std::size_t r = 0; r < cm.rows(); ++r) {
    BigInt s = 0;
    for (std::size_t k = 0; k < c.size(); ++k)
      s += BigInt(cm.at(r, static_cast<std::size_t>(c.support[k]))) * c.big(k);
    if (s != 0) return false;
  }
  return true;
}

/// |det| of the edge matrix (columns A_{b_i} - A_{a_i}).
inline auto cell_volume(const SupportTuple &t, const MixedCell &cell) -> std::int64_t {
  if (cell.n() != t.n())
    fail(Errc::DimensionMismatch, "cell size differs from tuple size");
  const std::size_t n = t.n();
  std::vector<std::int64_t> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [a, b] = cell.pair(i);
    if (a == b) fail(Errc::RepeatedColumn, "pair repeats a column");
    auto ca = t.column(static_cast<std::size_t>(a));
    auto cb = t.column(static_cast<std::size_t>(b));
    for (std::size_t r = 0; r < n; ++r) e[r * n + i] = std::int64_t{cb[r]} - ca[r];
  }
  BigInt d = abs(detail::determinant(e, n));
  if (d == 0)
    fail(Errc::NotACandidate, "cell " + cell.to_string() + " has volume zero");
  if (!fits_int64(d))
    fail(Errc::ArithmeticOverflow, "cell volume exceeds 64 bits");
  return static_cast<std::int64_t>(d);
}

} // namespace tropicell
