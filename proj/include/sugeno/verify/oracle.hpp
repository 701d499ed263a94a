#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "sugeno/binops.hpp"
#include "sugeno/measure.hpp"

namespace sugeno::verify {

/// Brute-force generalized integral: max of t o mu(A intersect {f >= t})
/// over a dense threshold set (0, every distinct value of f, midpoints of
/// consecutive values, and each value nudged one ulp either way). Builds
/// its own level sets and does not use the integration module.
inline ExtReal oracle_integral(const BinaryOpSpec& op, const MonotoneMeasure& mu, Subset a, const DiscreteFunction& f) {
  const int n = mu.space().size();
  std::set<double> finite_values{0.0};
  bool has_inf = false;
  for (int i = 0; i < n; ++i) {
    if (!a.contains(i)) continue;
    const ExtReal& v = f[static_cast<std::size_t>(i)];
    if (v.is_inf()) has_inf = true;
    else finite_values.insert(v.value());
  }
  std::vector<double> sorted(finite_values.begin(), finite_values.end());
  std::set<double> grid(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    grid.insert(std::nextafter(sorted[i], -1.0));
    grid.insert(std::nextafter(sorted[i], std::numeric_limits<double>::infinity()));
    if (i + 1 < sorted.size()) grid.insert(sorted[i] + (sorted[i + 1] - sorted[i]) / 2);
  }
  const double top = sorted.back();
  grid.insert(top + 1.0);

  auto level = [&](const ExtReal& t) {
    std::uint32_t bits = 0;
    for (int i = 0; i < n; ++i)
      if (a.contains(i) && !(f[static_cast<std::size_t>(i)] < t)) bits |= 1u << i;
    return Subset{bits};
  };
  ExtReal best = op(ExtReal(), mu(level(ExtReal())));
  for (double t : grid) {
    if (t < 0) continue;
    best = max(best, op(ExtReal(t), mu(level(ExtReal(t)))));
  }
  if (has_inf) best = max(best, op(ExtReal::infinity(), mu(level(ExtReal::infinity()))));
  return best;
}

}  // namespace sugeno::verify
