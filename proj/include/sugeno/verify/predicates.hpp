#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "sugeno/error.hpp"
#include "sugeno/measure.hpp"

namespace sugeno::verify {

/// Outcome of a measure predicate. On failure `b` (and `c` for the
/// two-set predicates) name a violating configuration.
struct PredicateResult {
  bool holds = true;
  std::optional<Subset> b;
  std::optional<Subset> c;
  explicit operator bool() const { return holds; }
};

namespace detail {

// x <= y up to rounding of sums.
inline bool le_tol(const ExtReal& x, const ExtReal& y) {
  if (x <= y) return true;
  if (x.is_inf() || y.is_inf()) return false;
  return x.value() - y.value() <= 1e-12 * (1.0 + y.value());
}

inline void require_enumerable(const MonotoneMeasure& mu, int max_n) {
  if (!mu.is_discrete()) throw Error(ErrorKind::not_enumerable, "predicate needs a discrete measure");
  if (mu.space().size() > max_n) {
    throw Error(ErrorKind::not_enumerable, "ground space too large for exhaustive enumeration");
  }
}

}  // namespace detail

/// mu(A) <= mu(A intersect B) + mu(A minus B) for every B.
inline PredicateResult is_weakly_subadditive(const MonotoneMeasure& mu, Subset a) {
  detail::require_enumerable(mu, 24);
  mu.space().check(a);
  const ExtReal whole = mu(a);
  for (std::uint32_t s = a.bits;; s = (s - 1) & a.bits) {
    const Subset b{s};
    if (!detail::le_tol(whole, mu(b) + mu(Subset{a.bits & ~s}))) return {false, b, std::nullopt};
    if (s == 0) break;
  }
  return {};
}

/// mu(A) >= mu(A intersect B) + mu(A minus B) for every B.
inline PredicateResult is_weakly_superadditive(const MonotoneMeasure& mu, Subset a) {
  detail::require_enumerable(mu, 24);
  mu.space().check(a);
  const ExtReal whole = mu(a);
  for (std::uint32_t s = a.bits;; s = (s - 1) & a.bits) {
    const Subset b{s};
    if (!detail::le_tol(mu(b) + mu(Subset{a.bits & ~s}), whole)) return {false, b, std::nullopt};
    if (s == 0) break;
  }
  return {};
}

namespace detail {

template <class Cmp>
PredicateResult disjoint_pairs(const MonotoneMeasure& mu, Cmp ok) {
  require_enumerable(mu, 16);
  const auto count = mu.space().subset_count();
  for (std::uint64_t u = 1; u < count; ++u) {
    const auto ub = static_cast<std::uint32_t>(u);
    const ExtReal whole = mu(Subset{ub});
    // each unordered split {B, U minus B} once: B holds the lowest element
    const std::uint32_t low = ub & (~ub + 1);
    for (std::uint32_t s = ub;; s = (s - 1) & ub) {
      if (s & low) {
        const Subset b{s}, c{ub & ~s};
        if (!ok(whole, mu(b) + mu(c))) return {false, b, c};
      }
      if (s == 0) break;
    }
  }
  return {};
}

}  // namespace detail

/// mu(B u C) <= mu(B) + mu(C) for all disjoint B, C. Needs n <= 16.
inline PredicateResult is_subadditive(const MonotoneMeasure& mu) {
  return detail::disjoint_pairs(mu, [](const ExtReal& u, const ExtReal& s) { return detail::le_tol(u, s); });
}

/// mu(B u C) >= mu(B) + mu(C) for all disjoint B, C. Needs n <= 16.
inline PredicateResult is_superadditive(const MonotoneMeasure& mu) {
  return detail::disjoint_pairs(mu, [](const ExtReal& u, const ExtReal& s) { return detail::le_tol(s, u); });
}

/// Closed-form facts about the interval families: lambda and counting are
/// additive, lambda^q is subadditive for q <= 1 and superadditive for q >= 1.
struct FamilyProperties {
  bool subadditive = false;
  bool superadditive = false;
  bool continuous = false;
};

inline FamilyProperties properties(const IntervalFamily& fam) {
  switch (fam.kind) {
    case IntervalFamily::Kind::lebesgue: return {true, true, true};
    case IntervalFamily::Kind::power: return {fam.q <= 1.0, fam.q >= 1.0, true};
    // additive, but a shrinking interval family drops from inf to a point
    case IntervalFamily::Kind::counting: return {true, true, false};
  }
  return {};
}

}  // namespace sugeno::verify
