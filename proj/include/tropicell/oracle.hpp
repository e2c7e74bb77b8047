#pragma once

// Brute-force reference routines. They share only the data types with the
// homotopy code: ranks, kernels and volumes are recomputed from scratch with
// rational elimination and explicit convex hulls.

#include "tropicell/arith.hpp"
#include "tropicell/errors.hpp"
#include "tropicell/mixed_cell.hpp"
#include "tropicell/support_config.hpp"
#include "tropicell/term_order.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace tropicell::oracle {

inline constexpr std::uint64_t kDefaultBudget = 1000000;

using Matrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
inline auto rref(Matrix &a) -> std::vector<std::size_t> {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto &v : a[r]) v *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][c] == 0) continue;
      Rational f = a[k][c];
      for (std::size_t j = 0; j < cols; ++j) a[k][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline auto rank(Matrix a) -> std::size_t { return rref(a).size(); }

/// Basis of the right kernel.
inline auto nullspace(Matrix a, std::size_t cols) -> std::vector<std::vector<Rational>> {
  auto piv = rref(a);
  std::vector<bool> is_piv(cols, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -a[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline auto cayley_columns(const SupportTuple &t, const std::vector<std::size_t> &cols)
  -> Matrix {
  const std::size_t n = t.n();
  Matrix m(2 * n, std::vector<Rational>(cols.size(), 0));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    auto col = t.column(cols[k]);
    for (std::size_t r = 0; r < n; ++r) m[r][k] = col[r];
    m[n + t.config_of(cols[k])][k] = 1;
  }
  return m;
}

inline auto cell_columns(const MixedCell &cell) -> std::vector<std::size_t> {
  std::vector<std::size_t> cols;
  for (auto [a, b] : cell.pairs()) {
    cols.push_back(static_cast<std::size_t>(a));
    cols.push_back(static_cast<std::size_t>(b));
  }
  return cols;
}

inline auto is_candidate(const SupportTuple &t, const MixedCell &cell) -> bool {
  return rank(cayley_columns(t, cell_columns(cell))) == 2 * t.n();
}

/// Kernel of the cell's Cayley columns plus gamma, as a dense m-vector with a
/// negative gamma entry and coprime integer entries.
inline auto circuit(const SupportTuple &t, const MixedCell &cell, std::size_t gamma)
  -> std::vector<BigInt> {
  auto cols = cell_columns(cell);
  cols.push_back(gamma);
  auto basis = nullspace(cayley_columns(t, cols), cols.size());
  if (basis.size() != 1)
    fail(Errc::InternalRankError, "circuit kernel is not one-dimensional");
  auto prim = primitive_integer_vector(basis[0]);
  if (prim.back() > 0)
    for (auto &v : prim) v = -v;
  std::vector<BigInt> out(t.m(), 0);
  for (std::size_t k = 0; k < cols.size(); ++k) out[cols[k]] = prim[k];
  return out;
}

inline auto enumerate_candidates(const SupportTuple &t,
                                 std::uint64_t budget = kDefaultBudget)
  -> std::vector<MixedCell> {
  const std::size_t n = t.n();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t m = t.size(i);
    std::uint64_t pairs = m * (m - 1) / 2;
    if (pairs == 0) return {};
    if (total > budget / pairs)
      fail(Errc::BudgetExceeded, "more than " + std::to_string(budget) +
                                   " pair combinations");
    total *= pairs;
  }
  std::vector<MixedCell> out;
  std::vector<MixedCell::Pair> cur(n);
  auto rec = [&](auto &&self, std::size_t i) -> void {
    if (i == n) {
      MixedCell c(cur);
      if (is_candidate(t, c)) out.push_back(std::move(c));
      return;
    }
    for (std::size_t a = 0; a < t.size(i); ++a)
      for (std::size_t b = a + 1; b < t.size(i); ++b) {
        cur[i] = {static_cast<ColumnIndex>(t.global(i, a)),
                  static_cast<ColumnIndex>(t.global(i, b))};
        self(self, i + 1);
      }
  };
  rec(rec, 0);
  return out;
}

/// Sign of <sigma_e, v>, evaluated densely.
inline auto dense_sign(const TermOrder &order, const std::vector<BigInt> &v) -> int {
  for (const auto &row : order.rows()) {
    BigInt s = 0;
    for (std::size_t k = 0; k < v.size(); ++k) s += row[k] * v[k];
    if (s != 0) return s > 0 ? 1 : -1;
  }
  for (const auto &x : v)
    if (x != 0) return x > 0 ? 1 : -1;
  return 0;
}

inline auto brute_mixed_cells(const SupportTuple &t, const TermOrder &order,
                              std::uint64_t budget = kDefaultBudget)
  -> std::set<MixedCell> {
  if (order.dim() != t.m())
    fail(Errc::DimensionMismatch, "order dimension differs from column count");
  std::set<MixedCell> out;
  for (auto &c : enumerate_candidates(t, budget)) {
    bool inside = true;
    for (std::size_t g = 0; g < t.m() && inside; ++g) {
      if (c.contains(static_cast<ColumnIndex>(g))) continue;
      inside = dense_sign(order, circuit(t, c, g)) > 0;
    }
    if (inside) out.insert(std::move(c));
  }
  return out;
}

/// |det| of the edge vectors, by rational elimination.
inline auto cell_volume(const SupportTuple &t, const MixedCell &cell) -> BigInt {
  const std::size_t n = t.n();
  Matrix e(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    auto [a, b] = cell.pair(i);
    auto ca = t.column(static_cast<std::size_t>(a));
    auto cb = t.column(static_cast<std::size_t>(b));
    for (std::size_t r = 0; r < n; ++r) e[r][i] = cb[r] - ca[r];
  }
  Rational det = 1;
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t q = p;
    while (q < n && e[q][p] == 0) ++q;
    if (q == n) return 0;
    if (q != p) {
      std::swap(e[q], e[p]);
      det = -det;
    }
    det *= e[p][p];
    for (std::size_t r = p + 1; r < n; ++r) {
      Rational f = e[r][p] / e[p][p];
      for (std::size_t c = p; c < n; ++c) e[r][c] -= f * e[p][c];
    }
  }
  Rational mag = det < 0 ? Rational(-det) : det;
  return boost::multiprecision::numerator(mag);
}

namespace detail {

using P2 = std::array<std::int64_t, 2>;
using P3 = std::array<std::int64_t, 3>;

inline auto cross2(const P2 &o, const P2 &a, const P2 &b) -> std::int64_t {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Counter-clockwise hull without collinear points.
inline auto hull2(std::vector<P2> p) -> std::vector<P2> {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  std::vector<P2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

// Twice the area of the hull.
inline auto area2(const std::vector<P2> &pts) -> std::int64_t {
  auto h = hull2(pts);
  if (h.size() < 3) return 0;
  std::int64_t s = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto &a = h[i], &b = h[(i + 1) % h.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return s < 0 ? -s : s;
}

inline auto sub3(const P3 &a, const P3 &b) -> P3 {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline auto cross3(const P3 &a, const P3 &b) -> P3 {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline auto dot3(const P3 &a, const P3 &b) -> std::int64_t {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Six times the volume of the hull: enumerate supporting planes through
// point triples, order each facet's points by a planar hull and fan out
// tetrahedra from a fixed point of the polytope.
inline auto volume6(std::vector<P3> p) -> std::int64_t {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  const std::size_t k = p.size();
  if (k < 4) return 0;
  std::set<std::pair<P3, std::int64_t>> seen;
  std::int64_t total = 0;
  const P3 o = p[0];
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l) {
        P3 nrm = cross3(sub3(p[j], p[i]), sub3(p[l], p[i]));
        if (nrm == P3{0, 0, 0}) continue;
        std::int64_t off = dot3(nrm, p[i]);
        bool pos = false, neg = false;
        for (const auto &q : p) {
          auto s = dot3(nrm, q) - off;
          pos = pos || s > 0;
          neg = neg || s < 0;
        }
        if (pos && neg) continue;
        if (!pos && !neg) return 0; // flat
        if (pos) {
          for (auto &x : nrm) x = -x;
          off = -off;
        }
        std::int64_t g = 0;
        for (auto x : nrm) g = std::gcd(g, x < 0 ? -x : x);
        P3 key{nrm[0] / g, nrm[1] / g, nrm[2] / g};
        if (!seen.insert({key, off / g}).second) continue;
        std::vector<P3> face;
        for (const auto &q : p)
          if (dot3(nrm, q) == off) face.push_back(q);
        // drop the coordinate with the largest normal component
        std::size_t drop = 0;
        for (std::size_t c = 1; c < 3; ++c)
          if (std::abs(nrm[c]) > std::abs(nrm[drop])) drop = c;
        std::vector<P2> flat;
        for (const auto &q : face) {
          P2 v{};
          std::size_t w = 0;
          for (std::size_t c = 0; c < 3; ++c)
            if (c != drop) v[w++] = q[c];
          flat.push_back(v);
        }
        auto ring = hull2(flat);
        std::vector<P3> poly;
        for (const auto &v : ring)
          for (std::size_t f = 0; f < face.size(); ++f)
            if (flat[f] == v) {
              poly.push_back(face[f]);
              break;
            }
        for (std::size_t a = 1; a + 1 < poly.size(); ++a) {
          auto d = dot3(sub3(poly[0], o), cross3(sub3(poly[a], o), sub3(poly[a + 1], o)));
          total += d < 0 ? -d : d;
        }
      }
  return total;
}

} // namespace detail

/// Mixed volume by inclusion-exclusion over Minkowski sums (n <= 3).
inline auto incl_excl_mixed_volume(const SupportTuple &t) -> BigInt {
  const std::size_t n = t.n();
  if (n > 3) fail(Errc::DimensionTooLarge, "inclusion-exclusion needs n <= 3");
  // scale: n! * vol is an integer for lattice polytopes
  Rational mv = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::vector<std::int64_t>> sum{std::vector<std::int64_t>(n, 0)};
    int size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      ++size;
      std::set<std::vector<std::int64_t>> next;
      for (const auto &s : sum)
        for (const auto &c : t.config(i).columns()) {
          auto v = s;
          for (std::size_t r = 0; r < n; ++r) v[r] += c[r];
          next.insert(std::move(v));
        }
      sum.assign(next.begin(), next.end());
    }
    Rational vol;
    if (n == 1) {
      std::int64_t lo = sum.front()[0], hi = lo;
      for (const auto &s : sum) {
        lo = std::min(lo, s[0]);
        hi = std::max(hi, s[0]);
      }
      vol = hi - lo;
    } else if (n == 2) {
      std::vector<detail::P2> p;
      for (const auto &s : sum) p.push_back({s[0], s[1]});
      vol = Rational(detail::area2(p), 2);
    } else {
      std::vector<detail::P3> p;
      for (const auto &s : sum) p.push_back({s[0], s[1], s[2]});
      vol = Rational(detail::volume6(p), 6);
    }
    if ((n - static_cast<std::size_t>(size)) % 2) mv -= vol;
    else mv += vol;
  }
  if (boost::multiprecision::denominator(mv) != 1)
    fail(Errc::InvariantViolation, "mixed volume is not an integer");
  return boost::multiprecision::numerator(mv);
}

/// True iff some subset I of configurations has dim(sum_{i in I} P_i) < |I|,
/// which makes the mixed volume zero.
inline auto rado_zero_check(const SupportTuple &t) -> bool {
  const std::size_t n = t.n();
  if (n > 15) fail(Errc::DimensionTooLarge, "subset scan needs n <= 15");
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    Matrix rows;
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      ++size;
      const auto &cols = t.config(i).columns();
      for (std::size_t j = 1; j < cols.size(); ++j) {
        std::vector<Rational> d(n);
        for (std::size_t r = 0; r < n; ++r) d[r] = cols[j][r] - cols[0][r];
        rows.push_back(std::move(d));
      }
    }
    if (rank(rows) < size) return true;
  }
  return false;
}

/// Random small tuple: n in {2,3}, 2..max_m columns per configuration,
/// entries in [0, max_entry].
template <class Rng>
auto random_tuple(Rng &rng, std::size_t max_m = 5, std::int64_t max_entry = 4)
  -> SupportTuple {
  std::uniform_int_distribution<std::size_t> dn(2, 3), dm(2, max_m);
  std::uniform_int_distribution<std::int64_t> de(0, max_entry);
  const std::size_t n = dn(rng);
  std::vector<std::vector<std::vector<std::int64_t>>> raw(n);
  for (auto &cfg : raw) {
    const std::size_t m = dm(rng);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::int64_t> v(n);
      for (auto &e : v) e = de(rng);
      cfg.push_back(std::move(v));
    }
  }
  return new_support_tuple(raw);
}

} // namespace tropicell::oracle
