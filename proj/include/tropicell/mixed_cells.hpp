#pragma once

#include "tropicell/arith.hpp"
#include "tropicell/errors.hpp"
#include "tropicell/exact_linalg.hpp"
#include "tropicell/mixed_cell.hpp"
#include "tropicell/support_config.hpp"
#include "tropicell/term_order.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tropicell {

/// One facet of a mixed cell cone: the circuit of the cell plus gamma.
struct FacetCrossing {
  ColumnIndex gamma{-1};
  Circuit circuit;
  std::size_t config{0};
  BigInt tau_value; // <tau, circuit> when produced by an exit search
};

/// Same hyperplane: equal support and coefficients (gamma ignored).
inline auto same_wall(const Circuit &a, const Circuit &b) -> bool {
  if (a.support != b.support) return false;
  if (!a.is_wide() && !b.is_wide()) return a.coeffs == b.coeffs;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a.big(k) != b.big(k)) return false;
  return true;
}

inline auto facet_circuits(const SupportTuple &t, const MixedCell &cell)
  -> std::vector<FacetCrossing> {
  cell.validate(t);
  CellSystem sys(t, cell, Candidacy::Verify);
  std::vector<FacetCrossing> out;
  for (std::size_t g = 0; g < t.m(); ++g) {
    auto gamma = static_cast<ColumnIndex>(g);
    if (cell.contains(gamma)) continue;
    out.push_back({gamma, sys.circuit(gamma), t.config_of(g), BigInt(0)});
  }
  return out;
}

inline auto in_cone(const SupportTuple &t, const MixedCell &cell,
                    const TermOrder &order) -> bool {
  if (order.dim() != t.m())
    fail(Errc::DimensionMismatch, "order dimension differs from column count");
  for (const auto &f : facet_circuits(t, cell))
    if (order_sign(order, f.circuit) <= 0) return false;
  return true;
}

/// Skips facets that the walk provably never crosses: while configuration
/// `config` is being deformed toward the dropped columns, a column gamma of
/// another configuration is irrelevant when the cell's pair in `config` lies
/// entirely inside or entirely outside the dropped set.
struct FacetFilter {
  bool enabled{false};
  std::size_t config{0};
  std::vector<bool> dropped;

  [[nodiscard]] auto skips(const MixedCell &cell, std::size_t gamma_config) const
    -> bool {
    if (!enabled || gamma_config == config) return false;
    auto [a, b] = cell.pair(config);
    return dropped[static_cast<std::size_t>(a)] == dropped[static_cast<std::size_t>(b)];
  }
};

/// Reusable workspace that finds the first facet a cell's cone is left
/// through along the line from sigma to tau. One per worker thread.
class ExitFinder {
public:
  ExitFinder(const SupportTuple &t, const TermOrder &sigma, std::vector<BigInt> tau,
             FacetFilter filter = {})
    : t_(&t), sigma_(&sigma), tau_(std::move(tau)), filter_(std::move(filter)) {
    if (tau_.size() != t.m() || sigma.dim() != t.m())
      fail(Errc::DimensionMismatch, "lift dimensions differ from column count");
    small_tau_ = narrow_all(tau_, tau64_);
  }

  [[nodiscard]] auto stats() const -> const CircuitStats & { return stats_; }
  auto stats() -> CircuitStats & { return stats_; }

  /// nullopt when tau (refined by sigma) already lies in the cone.
  auto find(const MixedCell &cell, Candidacy mode = Candidacy::Assume)
    -> std::optional<FacetCrossing> {
    sys_.reset(*t_, cell, mode);
    best_.reset();
    const auto &t = *t_;
    const std::size_t n = t.n();
    bool use_dual = small_tau_;
    CellSystem::DualPoint dual;
    if (use_dual) {
      dtau_.resize(n);
      try {
        for (std::size_t i = 0; i < n; ++i) {
          auto [a, b] = cell.pair(i);
          dtau_[i] = detail::narrow64(detail::sub(tau64_[static_cast<std::size_t>(b)],
                                                  tau64_[static_cast<std::size_t>(a)]));
        }
        dual = sys_.dual_point(dtau_, &stats_);
      } catch (const detail::Overflow &) {
        use_dual = false;
      }
    }
    for (std::size_t g = 0; g < t.m(); ++g) {
      auto gamma = static_cast<ColumnIndex>(g);
      if (cell.contains(gamma)) continue;
      const std::size_t j = t.config_of(g);
      if (filter_.skips(cell, j)) continue;
      if (use_dual && dual_sign(dual, cell, g, j) >= 0) continue;
      consider(gamma, j);
    }
    return std::move(best_);
  }

private:
  // Sign of <tau, c> for the normalized circuit of gamma, in O(n).
  auto dual_sign(const CellSystem::DualPoint &p, const MixedCell &cell, std::size_t g,
                 std::size_t j) const -> int {
    const auto &t = *t_;
    const auto aj = static_cast<std::size_t>(cell.pair(j).first);
    auto cg = t.column(g);
    auto ca = t.column(aj);
    if (!p.wide) {
      try {
        detail::i128 s = detail::mul(p.d, detail::sub(tau64_[aj], tau64_[g]));
        for (std::size_t r = 0; r < t.n(); ++r)
          s = detail::add(s, detail::mul(p.y[r], std::int64_t{cg[r]} - ca[r]));
        int sv = s > 0 ? 1 : (s < 0 ? -1 : 0);
        return sv * (p.d > 0 ? 1 : -1);
      } catch (const detail::Overflow &) {
      }
    }
    BigInt d = p.wide ? p.big_d : BigInt(p.d);
    BigInt s = d * (tau_[aj] - tau_[g]);
    for (std::size_t r = 0; r < t.n(); ++r)
      s += (p.wide ? p.big_y[r] : BigInt(p.y[r])) * (std::int64_t{cg[r]} - ca[r]);
    return sign_of(s) * sign_of(d);
  }

  void consider(ColumnIndex gamma, std::size_t j) {
    Circuit c = sys_.circuit(gamma, &stats_);
    BigInt tc = lift_value(tau_, c);
    if (tc >= 0) return;
    if (order_sign(*sigma_, c) <= 0)
      fail(Errc::InconsistentCone,
           "facet for column " + std::to_string(gamma + 1) +
             " is violated by both ends of the walk");
    if (best_) {
      int s = crossing_sign(c, tc, best_->circuit, best_->tau_value, *sigma_);
      if (s == 0)
        fail(Errc::GenericityFailure, "two facets cross at the same time");
      if (s < 0) return;
    }
    best_ = FacetCrossing{gamma, std::move(c), j, std::move(tc)};
  }

  const SupportTuple *t_;
  const TermOrder *sigma_;
  std::vector<BigInt> tau_;
  std::vector<std::int64_t> tau64_;
  bool small_tau_{false};
  FacetFilter filter_;
  CellSystem sys_;
  CircuitStats stats_;
  std::vector<std::int64_t> dtau_;
  std::optional<FacetCrossing> best_;
};

/// The facet through which the line from sigma to tau leaves the cone of
/// `cell` first, or nullopt if tau refined by sigma lies in the cone.
inline auto exit_facet(const SupportTuple &t, const MixedCell &cell,
                       const TermOrder &sigma, const LiftVector &tau)
  -> std::optional<FacetCrossing> {
  cell.validate(t);
  if (tau.size() != t.m())
    fail(Errc::DimensionMismatch, "lift dimension differs from column count");
  ExitFinder f(t, sigma, integer_lift(tau));
  return f.find(cell, Candidacy::Verify);
}

/// Cells on the far side of the wall that are reached canonically from this
/// cell; each cell past the wall is produced by exactly one neighbour.
/// With canonical = false every cell past the wall adjacent to this one is
/// returned, so neighbours may produce the same cell.
inline auto flip_children(const MixedCell &cell, const FacetCrossing &x,
                          bool canonical = true) -> std::vector<MixedCell> {
  const auto &c = x.circuit;
  const ColumnIndex gamma = x.gamma;
  if (c.sign_at(gamma) >= 0)
    fail(Errc::CircuitSignError, "circuit entry of the new column is not negative");
  auto [alpha, beta] = cell.pair(x.config);
  const int sa = c.sign_at(alpha);
  const int sb = c.sign_at(beta);
  std::vector<MixedCell> out;
  if (!canonical) {
    if (sa > 0) out.push_back(cell.replaced(x.config, alpha, gamma));
    if (sb > 0) out.push_back(cell.replaced(x.config, beta, gamma));
    return out;
  }
  if (sa > 0 && sb > 0) {
    out.push_back(cell.replaced(x.config, alpha, gamma));
    out.push_back(cell.replaced(x.config, beta, gamma));
  } else if (sa > 0 && (sb == 0 || (sb < 0 && beta < gamma))) {
    out.push_back(cell.replaced(x.config, alpha, gamma));
  } else if (sb > 0 && (sa == 0 || (sa < 0 && alpha < gamma))) {
    out.push_back(cell.replaced(x.config, beta, gamma));
  }
  return out;
}

} // namespace tropicell
