#pragma once

#include "tropicell/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tropicell {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

/// Thrown by the checked machine-integer path; callers catch it and redo the
/// computation with BigInt.
struct Overflow {};

using i128 = __int128;

inline auto add(i128 a, i128 b) -> i128 {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline auto sub(i128 a, i128 b) -> i128 {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline auto mul(i128 a, i128 b) -> i128 {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline auto narrow64(i128 a) -> std::int64_t {
  if (a > std::numeric_limits<std::int64_t>::max() ||
      a < std::numeric_limits<std::int64_t>::min())
    throw Overflow{};
  return static_cast<std::int64_t>(a);
}

/// 128-bit integer whose arithmetic throws Overflow instead of wrapping.
/// Algorithms templated on the number type run first with this and then with
/// BigInt if the fast attempt overflowed.
class Checked {
public:
  constexpr Checked() = default;
  constexpr Checked(std::int64_t v) : v_(v) {} // NOLINT(implicit)
  explicit Checked(const BigInt &v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
      throw Overflow{};
    v_ = static_cast<std::int64_t>(v);
  }
  [[nodiscard]] constexpr auto raw() const -> i128 { return v_; }

  friend auto operator+(Checked a, Checked b) -> Checked {
    return from(add(a.v_, b.v_));
  }
  friend auto operator-(Checked a, Checked b) -> Checked {
    return from(sub(a.v_, b.v_));
  }
  friend auto operator*(Checked a, Checked b) -> Checked {
    return from(mul(a.v_, b.v_));
  }
  auto operator+=(Checked b) -> Checked & { return *this = *this + b; }
  auto operator-=(Checked b) -> Checked & { return *this = *this - b; }
  friend constexpr auto operator==(Checked a, Checked b) -> bool {
    return a.v_ == b.v_;
  }
  friend constexpr auto operator<(Checked a, Checked b) -> bool {
    return a.v_ < b.v_;
  }
  friend constexpr auto operator>(Checked a, Checked b) -> bool {
    return a.v_ > b.v_;
  }

private:
  static auto from(i128 v) -> Checked {
    Checked c;
    c.v_ = v;
    return c;
  }
  i128 v_{0};
};

} // namespace detail

template <class T> constexpr auto sign_of(const T &v) -> int {
  return v > T(0) ? 1 : (v < T(0) ? -1 : 0);
}
inline auto sign_of(const detail::Checked &v) -> int {
  return v.raw() > 0 ? 1 : (v.raw() < 0 ? -1 : 0);
}

inline auto to_big(std::int64_t v) -> BigInt { return BigInt(v); }

inline auto fits_int64(const BigInt &v) -> bool {
  return v <= std::numeric_limits<std::int64_t>::max() &&
         v >= std::numeric_limits<std::int64_t>::min();
}

/// Parses "p", "-p" or "p/q" into an exact rational.
inline auto parse_rational(std::string_view text) -> Rational {
  auto bad = [&] {
    fail(Errc::ParseError, "not a rational: '" + std::string(text) + "'");
  };
  if (text.empty()) bad();
  auto parse_int = [&](std::string_view s) -> BigInt {
    std::size_t k = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) k = 1;
    if (k == s.size()) bad();
    for (std::size_t i = k; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') bad();
    return BigInt(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) fail(Errc::ParseError, "zero denominator in '" +
                                           std::string(text) + "'");
  return Rational(num, den);
}

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline auto format_rational(const Rational &q) -> std::string {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Multiplies a rational vector by the positive lcm of its denominators and
/// divides by the gcd of the numerators. Signs of all linear functionals
/// evaluated against the result are those of the input.
inline auto primitive_integer_vector(std::span<const Rational> v)
  -> std::vector<BigInt> {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt l = 1;
  for (const auto &q : v) {
    BigInt d = denominator(q);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  std::vector<BigInt> out;
  out.reserve(v.size());
  BigInt g = 0;
  for (const auto &q : v) {
    BigInt x = numerator(q) * (l / denominator(q));
    g = boost::multiprecision::gcd(g, x);
    out.push_back(std::move(x));
  }
  if (g > 1)
    for (auto &x : out) x /= g;
  return out;
}

/// Converts when every entry fits; returns false otherwise.
inline auto narrow_all(std::span<const BigInt> in,
                       std::vector<std::int64_t> &out) -> bool {
  out.clear();
  out.reserve(in.size());
  for (const auto &x : in) {
    if (!fits_int64(x)) {
      out.clear();
      return false;
    }
    out.push_back(static_cast<std::int64_t>(x));
  }
  return true;
}

} // namespace tropicell
