#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "sugeno/binops.hpp"
#include "sugeno/error.hpp"
#include "sugeno/ext_real.hpp"
#include "sugeno/measure.hpp"
#include "sugeno/profile.hpp"

namespace sugeno {

enum class Mode { exact, approximate };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "approximate"; }

struct IntegralResult {
  ExtReal value;
  Mode mode = Mode::exact;
  std::optional<double> error_bound;  // set in approximate mode only
  ExtReal argmax_t;
};

namespace detail {

inline void require_integrable_op(const BinaryOpSpec& op) {
  if (!op.flags.zero_absorbing) {
    throw Error(ErrorKind::hypothesis, "operation '" + op.name + "' is not declared zero-absorbing");
  }
  if (!op.flags.nondecreasing) {
    throw Error(ErrorKind::hypothesis, "operation '" + op.name + "' is not declared nondecreasing");
  }
}

}  // namespace detail

/// sup over t >= 0 of t o mu(A intersect {f >= t}) on a finite space.
///
/// The level set is constant on each (v_{k-1}, v_k] between consecutive
/// values of f on A, and t -> t o m is nondecreasing, so the supremum over
/// that piece is attained at v_k. The candidates {0} and the values of f on
/// A are therefore exhaustive for every nondecreasing op, continuous or not.
inline IntegralResult generalized_integral(const BinaryOpSpec& op, const MonotoneMeasure& mu, Subset a,
                                           const DiscreteFunction& f) {
  detail::require_integrable_op(op);
  check_function(mu, f.size());
  mu.space().check(a);
  std::vector<ExtReal> cand{ExtReal()};
  for (std::size_t i = 0; i < f.size(); ++i)
    if (a.contains(static_cast<int>(i))) cand.push_back(f[i]);
  std::sort(cand.begin(), cand.end(), [](const ExtReal& x, const ExtReal& y) { return x < y; });
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  IntegralResult r;
  bool first = true;
  for (const auto& t : cand) {
    const ExtReal v = op(t, mu(a & f.level_set(t)));
    if (first || v > r.value) {
      r.value = v;
      r.argmax_t = t;
      first = false;
    }
  }
  return r;
}

inline IntegralResult sugeno(const MonotoneMeasure& mu, Subset a, const DiscreteFunction& f) {
  return generalized_integral(ops::min_op(), mu, a, f);
}

inline IntegralResult shilkret(const MonotoneMeasure& mu, Subset a, const DiscreteFunction& f) {
  return generalized_integral(ops::product(), mu, a, f);
}

namespace detail {

inline void require_unit_instance(const MonotoneMeasure& mu, Subset a, const DiscreteFunction& f) {
  check_function(mu, f.size());
  if (mu(a) > ExtReal(1.0)) throw Error(ErrorKind::domain, "measure exceeds 1 on the domain");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (a.contains(static_cast<int>(i)) && f[i] > ExtReal(1.0)) {
      throw Error(ErrorKind::domain, "function value above 1 at index " + std::to_string(i));
    }
}

}  // namespace detail

/// sup over t in [0,1] of mu({f >= t}) (x) t over the whole space.
inline IntegralResult q_integral(const BinaryOpSpec& conj, const MonotoneMeasure& mu, const DiscreteFunction& f) {
  const Subset all = mu.space().full();
  detail::require_unit_instance(mu, all, f);
  return generalized_integral(fuzzy_conjunction_to_circ(conj), mu, all, f);
}

/// sup over t in [0,1] of S(t, mu(A intersect {f >= t})).
inline IntegralResult seminormed(const BinaryOpSpec& s, const MonotoneMeasure& mu, Subset a,
                                 const DiscreteFunction& f) {
  detail::require_unit_instance(mu, a, f);
  return generalized_integral(semicopula_to_circ(s), mu, a, f);
}

struct ProfileOptions {
  double tol = 1e-9;
  int initial_points = 1 << 10;
  int max_rounds = 60;
  std::size_t max_live_cells = std::size_t{1} << 20;
};

/// sup over t in [0, T] of t o G(t) for a nonincreasing profile G.
///
/// Branch and bound over cells [u, v]: for t in (u, v], t o G(t) is at most
/// v o G(u+), with G(u+) the right limit. Cells whose bound cannot beat the
/// incumbent by more than tol are discarded; the rest are halved. The
/// returned value is an attained t o G(t), and error_bound is the largest
/// remaining cell bound minus that value.
inline IntegralResult integrate_profile(const BinaryOpSpec& op, const SurvivalProfile& g,
                                        const ProfileOptions& opt = {}) {
  detail::require_integrable_op(op);
  if (!(opt.tol > 0)) throw Error(ErrorKind::invalid_input, "tolerance must be positive");
  if (!std::isfinite(g.upper) || g.upper < 0) {
    throw Error(ErrorKind::invalid_input, "profile needs a finite upper threshold");
  }

  auto phi = [&](double t) { return op(ExtReal(t), g.at(t)); };
  IntegralResult r;
  r.mode = Mode::approximate;
  r.value = phi(0.0);
  r.argmax_t = ExtReal();
  auto offer = [&](double t) {
    const ExtReal v = phi(t);
    if (v > r.value || (v == r.value && ExtReal(t) < r.argmax_t)) {
      r.value = v;
      r.argmax_t = ExtReal(t);
    }
  };

  std::vector<double> cuts{0.0};
  for (double b : g.breakpoints)
    if (b > 0 && b < g.upper) cuts.push_back(b);
  cuts.push_back(g.upper);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (double c : cuts) offer(c);

  struct Cell {
    double u, v;
  };
  std::vector<Cell> live;
  const double span = g.upper;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const int n = std::max(4, static_cast<int>(std::ceil(opt.initial_points * (hi - lo) / span)));
    double prev = lo;
    for (int k = 1; k <= n; ++k) {
      const double next = k == n ? hi : lo + (hi - lo) * k / n;
      if (next > prev) {
        live.push_back({prev, next});
        if (k < n) offer(next);
      }
      prev = next;
    }
  }

  auto bound = [&](const Cell& c) { return op(ExtReal(c.v), g.right_limit(c.u)); };
  double discarded = -kInf;
  double worst = 0.0;
  for (int round = 0;; ++round) {
    if (r.value.is_inf()) {
      r.error_bound = 0.0;
      return r;
    }
    const double inc = r.value.to_double();
    std::vector<Cell> keep;
    double top = discarded;
    for (const auto& c : live) {
      const double b = bound(c).to_double();
      if (b > inc + opt.tol) {
        keep.push_back(c);
      } else {
        discarded = std::max(discarded, b);
      }
      top = std::max(top, b);
    }
    worst = std::max(0.0, top - inc);
    if (keep.empty() || round >= opt.max_rounds || keep.size() * 2 > opt.max_live_cells) {
      r.error_bound = worst;
      return r;
    }
    live.clear();
    for (const auto& c : keep) {
      const double m = c.u / 2 + c.v / 2;
      if (m <= c.u || m >= c.v) {
        // cannot split further; keep the cell for the final bound only
        discarded = std::max(discarded, bound(c).to_double());
        continue;
      }
      offer(m);
      live.push_back({c.u, m});
      live.push_back({m, c.v});
    }
  }
}

inline IntegralResult integrate_profile(const BinaryOpSpec& op, const SurvivalProfile& g, double tol) {
  ProfileOptions opt;
  opt.tol = tol;
  return integrate_profile(op, g, opt);
}

}  // namespace sugeno
