#pragma once

#include "tropicell/errors.hpp"
#include "tropicell/support_config.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tropicell {

struct FamilySpec {
  std::string name;
  std::size_t n{0};
};

namespace detail {

using Monomial = std::vector<Exponent>;

struct FamilyBounds {
  std::string_view name;
  std::size_t min_n;
  std::size_t max_n;
};

inline constexpr FamilyBounds kFamilies[] = {
  {"cyclic", 2, 30}, {"noon", 2, 40},  {"chandra", 2, 40},
  {"katsura", 1, 40}, {"eco", 2, 40},  {"gaukwa", 1, 20},
};

inline auto unit(std::size_t nvars, std::size_t i) -> Monomial {
  Monomial m(nvars, 0);
  m[i] = 1;
  return m;
}

// Deduplicates and sorts the monomials of one polynomial.
inline auto support(std::vector<Monomial> terms) -> std::vector<std::vector<std::int64_t>> {
  std::set<Monomial> s(terms.begin(), terms.end());
  std::vector<std::vector<std::int64_t>> out;
  for (const auto &m : s) out.emplace_back(m.begin(), m.end());
  return out;
}

inline auto cyclic(std::size_t n) -> std::vector<std::vector<std::vector<std::int64_t>>> {
  std::vector<std::vector<std::vector<std::int64_t>>> eqs;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Monomial> terms;
    for (std::size_t i = 0; i < n; ++i) {
      Monomial m(n, 0);
      for (std::size_t j = 0; j < k; ++j) m[(i + j) % n] = 1;
      terms.push_back(std::move(m));
    }
    eqs.push_back(support(std::move(terms)));
  }
  eqs.push_back(support({Monomial(n, 1), Monomial(n, 0)}));
  return eqs;
}

// x_i * sum_{j != i} x_j^2 - 1.1 x_i + 1
inline auto noon(std::size_t n) -> std::vector<std::vector<std::vector<std::int64_t>>> {
  std::vector<std::vector<std::vector<std::int64_t>>> eqs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Monomial> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Monomial m = unit(n, i);
      m[j] += 2;
      terms.push_back(std::move(m));
    }
    terms.push_back(unit(n, i));
    terms.push_back(Monomial(n, 0));
    eqs.push_back(support(std::move(terms)));
  }
  return eqs;
}

// 2n h_i - c h_i (1 + sum_{j=1}^{n-1} i/(i+j) h_j) - 2n
inline auto chandra(std::size_t n) -> std::vector<std::vector<std::vector<std::int64_t>>> {
  std::vector<std::vector<std::vector<std::int64_t>>> eqs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Monomial> terms;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      Monomial m = unit(n, i);
      m[j] += 1;
      terms.push_back(std::move(m));
    }
    terms.push_back(unit(n, i));
    terms.push_back(Monomial(n, 0));
    eqs.push_back(support(std::move(terms)));
  }
  return eqs;
}

// Variables u_0..u_n, u_{-l} = u_l, u_l = 0 for l > n.
//   sum_{l=-n}^{n} u_l u_{m-l} - u_m   (m = 0..n-1)
//   u_0 + 2 sum_{l=1}^{n} u_l - 1
inline auto katsura(std::size_t n) -> std::vector<std::vector<std::vector<std::int64_t>>> {
  const std::size_t v = n + 1;
  const auto ni = static_cast<long>(n);
  std::vector<std::vector<std::vector<std::int64_t>>> eqs;
  for (long m = 0; m < ni; ++m) {
    std::vector<Monomial> terms;
    for (long l = -ni; l <= ni; ++l) {
      long a = std::labs(l), b = std::labs(m - l);
      if (b > ni) continue;
      Monomial t(v, 0);
      t[static_cast<std::size_t>(a)] += 1;
      t[static_cast<std::size_t>(b)] += 1;
      terms.push_back(std::move(t));
    }
    terms.push_back(unit(v, static_cast<std::size_t>(m)));
    eqs.push_back(support(std::move(terms)));
  }
  std::vector<Monomial> lin;
  for (std::size_t l = 0; l < v; ++l) lin.push_back(unit(v, l));
  lin.push_back(Monomial(v, 0));
  eqs.push_back(support(std::move(lin)));
  return eqs;
}

// (x_k + sum_{i=1}^{n-k-1} x_i x_{i+k}) x_n - k/n   (k = 1..n-1)
// sum_{i=1}^{n-1} x_i + 1
inline auto eco(std::size_t n) -> std::vector<std::vector<std::vector<std::int64_t>>> {
  std::vector<std::vector<std::vector<std::int64_t>>> eqs;
  const std::size_t last = n - 1;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Monomial> terms;
    Monomial m = unit(n, k - 1);
    m[last] += 1;
    terms.push_back(std::move(m));
    for (std::size_t i = 1; i + k <= n - 1; ++i) {
      Monomial t(n, 0);
      t[i - 1] += 1;
      t[i + k - 1] += 1;
      t[last] += 1;
      terms.push_back(std::move(t));
    }
    terms.push_back(Monomial(n, 0));
    eqs.push_back(support(std::move(terms)));
  }
  std::vector<Monomial> lin;
  for (std::size_t i = 0; i + 1 < n; ++i) lin.push_back(unit(n, i));
  lin.push_back(Monomial(n, 0));
  eqs.push_back(support(std::move(lin)));
  return eqs;
}

// Variables w_1..w_n, x_1..x_n;  sum_i w_i x_i^k - c_k   (k = 0..2n-1)
inline auto gaukwa(std::size_t n) -> std::vector<std::vector<std::vector<std::int64_t>>> {
  const std::size_t v = 2 * n;
  std::vector<std::vector<std::vector<std::int64_t>>> eqs;
  for (std::size_t k = 0; k < 2 * n; ++k) {
    std::vector<Monomial> terms;
    for (std::size_t i = 0; i < n; ++i) {
      Monomial m = unit(v, i);
      m[n + i] += static_cast<Exponent>(k);
      terms.push_back(std::move(m));
    }
    terms.push_back(Monomial(v, 0));
    eqs.push_back(support(std::move(terms)));
  }
  return eqs;
}

} // namespace detail

inline auto family_names() -> std::vector<std::string> {
  std::vector<std::string> out;
  for (const auto &f : detail::kFamilies) out.emplace_back(f.name);
  return out;
}

/// Support tuple of a benchmark family (coefficients play no role).
inline auto generate(const FamilySpec &spec) -> SupportTuple {
  const detail::FamilyBounds *b = nullptr;
  for (const auto &f : detail::kFamilies)
    if (f.name == spec.name) b = &f;
  if (!b) fail(Errc::UnknownFamily, "unknown family '" + spec.name + "'");
  if (spec.n < b->min_n || spec.n > b->max_n)
    fail(Errc::SizeOutOfRange, spec.name + " needs " + std::to_string(b->min_n) +
                                 " <= n <= " + std::to_string(b->max_n));
  const auto &nm = spec.name;
  const std::size_t n = spec.n;
  if (nm == "cyclic") return new_support_tuple(detail::cyclic(n));
  if (nm == "noon") return new_support_tuple(detail::noon(n));
  if (nm == "chandra") return new_support_tuple(detail::chandra(n));
  if (nm == "katsura") return new_support_tuple(detail::katsura(n));
  if (nm == "eco") return new_support_tuple(detail::eco(n));
  return new_support_tuple(detail::gaukwa(n));
}

} // namespace tropicell
