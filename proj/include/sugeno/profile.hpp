#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "sugeno/error.hpp"
#include "sugeno/ext_real.hpp"
#include "sugeno/interval_set.hpp"
#include "sugeno/measure.hpp"
#include "sugeno/piecewise.hpp"

namespace sugeno {

/// Level-set profile t -> mu(A intersect {g >= t}) of some integrand g.
/// `right_limit(t)` is mu(A intersect {g > t}), the limit from the right;
/// both are nonincreasing and vanish beyond `upper`.
struct SurvivalProfile {
  std::function<ExtReal(double)> at;
  std::function<ExtReal(double)> right_limit;
  double upper = 0.0;
  std::vector<double> breakpoints;  // possible discontinuities, sorted
};

/// Profile from closed forms. When the profile is continuous except at the
/// listed breakpoints, `right_limit` may be omitted and is taken from `at`
/// away from breakpoints.
inline SurvivalProfile closed_form_profile(std::function<ExtReal(double)> at, double upper,
                                           std::vector<double> breakpoints = {},
                                           std::function<ExtReal(double)> right_limit = {}) {
  std::sort(breakpoints.begin(), breakpoints.end());
  if (!right_limit) {
    right_limit = [at, breakpoints](double t) {
      if (std::binary_search(breakpoints.begin(), breakpoints.end(), t)) {
        return at(std::nextafter(t, kInf));
      }
      return at(t);
    };
  }
  return {std::move(at), std::move(right_limit), upper, std::move(breakpoints)};
}

/// Profile given as a nonincreasing map G on [0, inf], cut to 0 above
/// `upper`.
inline SurvivalProfile profile_from_map(const PiecewiseMap& g, double upper) {
  if (!g.nonincreasing(1e-12)) throw Error(ErrorKind::invalid_input, "profile map must be nonincreasing");
  if (!(upper >= 0) || !std::isfinite(upper)) throw Error(ErrorKind::invalid_input, "profile needs a finite upper threshold");
  auto at = [g, upper](double t) {
    if (t > upper) return ExtReal();
    return ExtReal::from_double(std::max(0.0, g(std::max(t, 0.0))));
  };
  auto right = [g, upper](double t) {
    if (t >= upper) return ExtReal();
    return ExtReal::from_double(std::max(0.0, t < 0 ? g(0.0) : g.limits(t).lower_right));
  };
  std::vector<double> bps;
  for (double b : g.boundaries())
    if (b > 0 && b < upper) bps.push_back(b);
  return {at, right, upper, std::move(bps)};
}

/// Interval instance: a closed-form measure family on the real line, the
/// integration domain A, and the integrand's underlying map f (on x).
struct IntervalInstance {
  IntervalFamily family;
  Interval a;
  PiecewiseMap f;

  ExtReal measure_of_a() const { return family.measure(IntervalSet(a)); }
  /// mu(A intersect f^{-1}(Y)).
  ExtReal measure_of_preimage(const IntervalSet& ys) const {
    return family.measure(f.preimage(ys).intersect_with(a));
  }
  Extrema f_range() const { return f.extrema(a); }
};

namespace detail {

inline void add_point(std::vector<double>& out, double v, double upper) {
  if (std::isfinite(v) && v > 0 && v <= upper) out.push_back(v);
}

/// Values the integrand H(f) takes at the structural points of f and H.
inline std::vector<double> profile_breakpoints(const IntervalInstance& inst, const PiecewiseMap& h, double upper,
                                               bool negate_argument) {
  std::vector<double> out;
  auto hval = [&](double y) {
    const double arg = negate_argument ? -y : y;
    const Interval dom = h.domain_interval();
    if (!dom.contains(arg)) return;
    add_point(out, h(arg), upper);
    const OneSidedLimits l = h.limits(arg);
    add_point(out, l.lower_left, upper);
    add_point(out, l.lower_right, upper);
  };
  for (double b : h.boundaries()) hval(negate_argument ? -b : b);
  std::vector<double> xs{inst.a.lo, inst.a.hi};
  for (double b : inst.f.boundaries())
    if (inst.a.contains(b)) xs.push_back(b);
  for (double x : xs) {
    if (!std::isfinite(x)) continue;
    hval(inst.f(x));
    const OneSidedLimits l = inst.f.limits(x);
    hval(l.lower_left);
    hval(l.lower_right);
  }
  add_point(out, upper, upper);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Interval f_value_range(const IntervalInstance& inst) {
  const Extrema e = inst.f_range();
  return Interval{e.inf, e.sup, true, true};
}

}  // namespace detail

/// Profile of H(f) on an interval instance; H maps [0, inf] to [0, inf].
inline SurvivalProfile profile_of(const IntervalInstance& inst, const PiecewiseMap& h) {
  const Interval range = detail::f_value_range(inst);
  const Interval hr = intersect(range, h.domain_interval());
  if (hr.empty()) throw Error(ErrorKind::domain, "f takes no values inside H's domain");
  if (range.lo < h.domain_interval().lo) throw Error(ErrorKind::domain, "f leaves H's domain on A");
  const double upper = h.extrema(hr).sup;
  if (!std::isfinite(upper)) throw Error(ErrorKind::domain, "profile has no finite upper threshold");
  const ExtReal whole = inst.measure_of_a();
  auto level = [inst, h, whole](double t, bool strict) -> ExtReal {
    if (t < 0 || (t == 0 && !strict)) return whole;
    return inst.measure_of_preimage(h.superlevel(t, strict));
  };
  return {[level](double t) { return level(t, false); }, [level](double t) { return level(t, true); }, upper,
          detail::profile_breakpoints(inst, h, upper, false)};
}

/// Profile of f itself.
inline SurvivalProfile profile_of(const IntervalInstance& inst) { return profile_of(inst, PiecewiseMap::identity()); }

/// Profile of H1(f^+) for a real-valued f, with H1 on [0, inf] and H1(0) = 0.
inline SurvivalProfile positive_part_profile(const IntervalInstance& inst, const PiecewiseMap& h1) {
  const Interval range = detail::f_value_range(inst);
  const double top = std::max(range.hi, 0.0);
  const double upper = h1.extrema(0.0, top).sup;
  const ExtReal whole = inst.measure_of_a();
  auto level = [inst, h1, whole](double t, bool strict) -> ExtReal {
    if (t < 0 || (t == 0 && !strict)) return whole;
    IntervalSet ys = h1.superlevel(t, strict).intersect_with(Interval{0.0, kInf, false, true});
    return inst.measure_of_preimage(ys);
  };
  return {[level](double t) { return level(t, false); }, [level](double t) { return level(t, true); }, upper,
          detail::profile_breakpoints(inst, h1, upper, false)};
}

/// Profile of H2(f^-) for a real-valued f, with H2 on [0, inf] and H2(0) = 0.
inline SurvivalProfile negative_part_profile(const IntervalInstance& inst, const PiecewiseMap& h2) {
  const Interval range = detail::f_value_range(inst);
  const double top = std::max(-range.lo, 0.0);
  const double upper = h2.extrema(0.0, top).sup;
  const ExtReal whole = inst.measure_of_a();
  auto level = [inst, h2, whole](double t, bool strict) -> ExtReal {
    if (t < 0 || (t == 0 && !strict)) return whole;
    IntervalSet ys = h2.superlevel(t, strict).intersect_with(Interval{0.0, kInf, false, true}).negated();
    return inst.measure_of_preimage(ys);
  };
  return {[level](double t) { return level(t, false); }, [level](double t) { return level(t, true); }, upper,
          detail::profile_breakpoints(inst, h2, upper, true)};
}

}  // namespace sugeno
