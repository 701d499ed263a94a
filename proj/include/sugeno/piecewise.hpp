#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sugeno/error.hpp"
#include "sugeno/ext_real.hpp"
#include "sugeno/interval_set.hpp"

namespace sugeno {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed-form elementary expression, continuous on its segment's closure.
struct Expr {
  enum class Kind { constant, affine, quad, power };
  Kind kind = Kind::constant;
  std::array<double, 4> p{0.0, 0.0, 0.0, 0.0};

  static Expr constant(double k) { return {Kind::constant, {k, 0, 0, 0}}; }
  /// a + b x
  static Expr affine(double a, double b) { return {Kind::affine, {a, b, 0, 0}}; }
  /// a + b x + c x^2
  static Expr quad(double a, double b, double c) { return {Kind::quad, {a, b, c, 0}}; }
  /// c sgn(x - s) |x - s|^alpha + d
  static Expr power(double c, double alpha, double shift = 0.0, double d = 0.0) {
    return {Kind::power, {c, alpha, shift, d}};
  }

  double operator()(double x) const {
    switch (kind) {
      case Kind::constant: return p[0];
      case Kind::affine:
        if (std::isinf(x)) return p[1] == 0 ? p[0] : std::copysign(kInf, p[1] * x);
        return p[0] + p[1] * x;
      case Kind::quad:
        if (std::isinf(x)) {
          if (p[2] != 0) return std::copysign(kInf, p[2]);
          return p[1] == 0 ? p[0] : std::copysign(kInf, p[1] * x);
        }
        return p[0] + x * (p[1] + x * p[2]);
      case Kind::power: {
        if (p[0] == 0) return p[3];
        const double u = x - p[2];
        if (u == 0) return (p[1] == 0 ? p[0] : (p[1] > 0 ? 0.0 : kInf)) + p[3];
        const double mag = std::pow(std::fabs(u), p[1]);
        return p[0] * (u < 0 ? -mag : mag) + p[3];
      }
    }
    return 0.0;
  }

  /// A point x with expr(x) close to y, when a closed-form inverse exists.
  /// Used only as a starting guess; callers confirm with the predicate.
  std::optional<double> solve(double y) const {
    double x = std::numeric_limits<double>::quiet_NaN();
    switch (kind) {
      case Kind::constant: return std::nullopt;
      case Kind::affine:
        if (p[1] == 0) return std::nullopt;
        x = (y - p[0]) / p[1];
        break;
      case Kind::quad: {
        if (p[2] == 0) {
          if (p[1] == 0) return std::nullopt;
          x = (y - p[0]) / p[1];
          break;
        }
        const double disc = p[1] * p[1] - 4 * p[2] * (p[0] - y);
        if (disc < 0) return std::nullopt;
        // Either root; the caller's bracket picks the right side.
        x = (-p[1] + std::sqrt(disc)) / (2 * p[2]);
        break;
      }
      case Kind::power: {
        if (p[0] == 0 || p[1] == 0) return std::nullopt;
        const double r = (y - p[3]) / p[0];
        x = p[2] + std::copysign(std::pow(std::fabs(r), 1.0 / p[1]), r);
        break;
      }
    }
    if (!std::isfinite(x)) return std::nullopt;
    return x;
  }

  double derivative(double x) const {
    switch (kind) {
      case Kind::constant: return 0.0;
      case Kind::affine: return p[1];
      case Kind::quad: return p[1] + 2.0 * p[2] * x;
      case Kind::power: {
        if (p[0] == 0 || p[1] == 0) return 0.0;
        const double u = std::fabs(x - p[2]);
        if (u == 0) return p[1] < 1 ? std::copysign(kInf, p[0]) : (p[1] == 1 ? p[0] : 0.0);
        return p[0] * p[1] * std::pow(u, p[1] - 1.0);
      }
    }
    return 0.0;
  }
};

enum class Mono { inc, dec, constant };

struct Segment {
  Interval iv;
  Expr expr;
  Mono mono = Mono::inc;
};

enum class Domain { nonneg, real };

struct OneSidedLimits {
  double lower_left = 0.0;   // H(p_-)
  double lower_right = 0.0;  // H(p_+)
  double upper_left = 0.0;   // H(p^-)
  double upper_right = 0.0;  // H(p^+)
};

struct Extrema {
  double inf = kInf;
  double sup = -kInf;
};

/// Support line y -> value + slope (y - p).
struct SupportLine {
  double p = 0.0;
  double slope = 0.0;
  double value = 0.0;
  double operator()(double y) const { return value + slope * (y - p); }
};

/// Function given by monotone closed-form segments that partition the
/// domain ([0, inf] or [-inf, inf]). Interval extrema and one-sided limits
/// reduce to endpoint evaluation because each segment is monotone.
class PiecewiseMap {
public:
  PiecewiseMap(std::vector<Segment> segments, Domain domain) : segs_(std::move(segments)), domain_(domain) {
    validate();
  }

  // Constructors for common shapes on [0, inf].
  static PiecewiseMap identity(Domain d = Domain::nonneg) {
    return PiecewiseMap({{full(d), Expr::affine(0, 1), Mono::inc}}, d);
  }
  static PiecewiseMap constant(double k, Domain d = Domain::nonneg) {
    return PiecewiseMap({{full(d), Expr::constant(k), Mono::constant}}, d);
  }
  static PiecewiseMap affine(double a, double b, Domain d = Domain::nonneg) {
    return PiecewiseMap({{full(d), Expr::affine(a, b), mono_of_slope(b)}}, d);
  }
  /// c x^alpha on [0, inf].
  static PiecewiseMap power(double c, double alpha) {
    return PiecewiseMap({{full(Domain::nonneg), Expr::power(c, alpha), mono_of_slope(c * alpha)}}, Domain::nonneg);
  }
  /// a + b x + c x^2, split at the vertex when it falls inside the domain.
  static PiecewiseMap quadratic(double a, double b, double c, Domain d = Domain::nonneg) {
    const Interval dom = full(d);
    if (c == 0) return affine(a, b, d);
    const double v = -b / (2 * c);
    const Expr e = Expr::quad(a, b, c);
    if (v <= dom.lo) return PiecewiseMap({{dom, e, c > 0 ? Mono::inc : Mono::dec}}, d);
    return PiecewiseMap({{{dom.lo, v, true, false}, e, c > 0 ? Mono::dec : Mono::inc},
                         {{v, dom.hi, true, true}, e, c > 0 ? Mono::inc : Mono::dec}},
                        d);
  }
  /// (m (y - c))^+ on [0, inf].
  static PiecewiseMap positive_affine(double m, double c) {
    if (!std::isfinite(m) || !std::isfinite(c)) throw Error(ErrorKind::domain, "positive_affine needs finite m and c");
    const Expr e = Expr::affine(-m * c, m);
    if (m == 0) return constant(0.0);
    if (m > 0) {
      if (c <= 0) return PiecewiseMap({{full(Domain::nonneg), e, Mono::inc}}, Domain::nonneg);
      return PiecewiseMap({{{0, c, true, false}, Expr::constant(0), Mono::constant}, {{c, kInf, true, true}, e, Mono::inc}},
                          Domain::nonneg);
    }
    if (c <= 0) return constant(0.0);
    return PiecewiseMap({{{0, c, true, false}, e, Mono::dec}, {{c, kInf, true, true}, Expr::constant(0), Mono::constant}},
                        Domain::nonneg);
  }

  /// x -> scale * H(sign * x) on [0, inf]; sign is +1 or -1 and the
  /// evaluated points must lie in this map's domain.
  PiecewiseMap half_line(int sign, double scale = 1.0) const {
    std::vector<Segment> out;
    const Interval half{0.0, kInf, true, true};
    for (const auto& s : segs_) {
      Segment t = s;
      if (sign < 0) {
        t.iv = {-s.iv.hi, -s.iv.lo, s.iv.hi_closed, s.iv.lo_closed};
        t.expr = reflect(s.expr);
        t.mono = flip(s.mono);
      }
      if (scale != 1.0) {
        t.expr = scaled(t.expr, scale);
        if (scale < 0) t.mono = flip(t.mono);
        if (scale == 0) t.mono = Mono::constant;
      }
      t.iv = intersect(t.iv, half);
      if (!t.iv.empty()) out.push_back(t);
    }
    std::sort(out.begin(), out.end(), [](const Segment& a, const Segment& b) { return a.iv.lo < b.iv.lo || (a.iv.lo == b.iv.lo && a.iv.lo_closed && !b.iv.lo_closed); });
    return PiecewiseMap(std::move(out), Domain::nonneg);
  }

  /// Map on the real line: pos(x) for x >= 0 and neg_scale * neg(-x) for
  /// x < 0, from two maps on [0, inf].
  static PiecewiseMap from_halves(const PiecewiseMap& pos, const PiecewiseMap& neg, double neg_scale) {
    if (pos.domain_ != Domain::nonneg || neg.domain_ != Domain::nonneg) {
      throw Error(ErrorKind::invalid_input, "halves must be maps on [0, inf]");
    }
    std::vector<Segment> out;
    const Interval left{-kInf, 0.0, true, false};
    for (auto it = neg.segs_.rbegin(); it != neg.segs_.rend(); ++it) {
      Segment t{{-it->iv.hi, -it->iv.lo, it->iv.hi_closed, it->iv.lo_closed}, reflect(it->expr), flip(it->mono)};
      t.expr = scaled(t.expr, neg_scale);
      if (neg_scale < 0) t.mono = flip(t.mono);
      if (neg_scale == 0) t.mono = Mono::constant;
      t.iv = intersect(t.iv, left);
      if (!t.iv.empty()) out.push_back(t);
    }
    for (const auto& s : pos.segs_) out.push_back(s);
    return PiecewiseMap(std::move(out), Domain::real);
  }

  Domain domain() const { return domain_; }
  Interval domain_interval() const { return full(domain_); }
  const std::vector<Segment>& segments() const { return segs_; }

  double operator()(double y) const {
    const Segment* s = segment_at(y);
    if (!s) throw Error(ErrorKind::domain, "point outside the map's domain: " + std::to_string(y));
    return s->expr(y);
  }

  /// Nonnegative evaluation; negative values or NaN are domain errors.
  ExtReal eval(const ExtReal& y) const {
    const double v = (*this)(y.to_double());
    if (v != v || v < 0) throw Error(ErrorKind::domain, "map value is negative at " + std::to_string(y.to_double()));
    return ExtReal::from_double(v);
  }

  /// Exact one-sided limits. Left limits at the domain's lower end are 0.
  OneSidedLimits limits(double p) const {
    OneSidedLimits r;
    const Interval dom = domain_interval();
    if (p > dom.lo) {
      const Segment* s = segment_left_of(p);
      r.lower_left = r.upper_left = s->expr(p);
    }
    if (p < dom.hi) {
      const Segment* s = segment_right_of(p);
      r.lower_right = r.upper_right = s->expr(p);
    } else {
      r.lower_right = r.upper_right = (*this)(p);
    }
    return r;
  }

  bool left_continuous_at(double p, double tol = 1e-12) const {
    if (p <= domain_interval().lo) return true;
    return close((*this)(p), limits(p).lower_left, tol);
  }
  bool right_continuous_at(double p, double tol = 1e-12) const {
    if (p >= domain_interval().hi) return true;
    return close((*this)(p), limits(p).lower_right, tol);
  }
  bool continuous(double tol = 1e-12) const {
    for (const double b : boundaries())
      if (!left_continuous_at(b, tol) || !right_continuous_at(b, tol)) return false;
    return true;
  }

  /// Exact infimum and supremum over an interval of the domain.
  Extrema extrema(const Interval& q) const {
    const Interval dom = domain_interval();
    if (q.empty()) throw Error(ErrorKind::domain, "empty interval");
    if (q.lo < dom.lo || q.hi > dom.hi) throw Error(ErrorKind::domain, "interval outside the map's domain");
    Extrema r;
    for (const auto& s : segs_) {
      const Interval x = intersect(s.iv, q);
      if (x.empty()) continue;
      const double a = s.expr(x.lo);
      const double b = x.degenerate() ? a : s.expr(x.hi);
      r.inf = std::min({r.inf, a, b});
      r.sup = std::max({r.sup, a, b});
    }
    return r;
  }
  Extrema extrema(double lo, double hi, bool lo_closed = true, bool hi_closed = true) const {
    return extrema(Interval{lo, hi, lo_closed, hi_closed});
  }
  double inf_all() const { return extrema(domain_interval()).inf; }
  double sup_all() const { return extrema(domain_interval()).sup; }

  /// One-sided derivatives of the adjacent segment expressions.
  double left_derivative(double p) const { return segment_left_of(p)->expr.derivative(p); }
  double right_derivative(double p) const { return segment_right_of(p)->expr.derivative(p); }

  /// Finite segment boundaries in increasing order.
  std::vector<double> boundaries() const {
    std::vector<double> b;
    for (std::size_t i = 0; i + 1 < segs_.size(); ++i)
      if (b.empty() || b.back() != segs_[i].iv.hi) b.push_back(segs_[i].iv.hi);
    return b;
  }

  /// Largest finite boundary, or 0 when there is none.
  double last_finite_point() const {
    double r = domain_ == Domain::nonneg ? 0.0 : -kInf;
    for (const auto& s : segs_) {
      if (std::isfinite(s.iv.lo)) r = std::max(r, s.iv.lo);
      if (std::isfinite(s.iv.hi)) r = std::max(r, s.iv.hi);
    }
    return std::isfinite(r) ? r : 0.0;
  }

  /// Nondecreasing on q, counting jumps at segment boundaries.
  bool nondecreasing_on(const Interval& q, double tol = 1e-12) const { return monotone_on(q, +1, tol); }
  bool nonincreasing_on(const Interval& q, double tol = 1e-12) const { return monotone_on(q, -1, tol); }
  bool nondecreasing(double tol = 1e-12) const { return nondecreasing_on(domain_interval(), tol); }
  bool nonincreasing(double tol = 1e-12) const { return nonincreasing_on(domain_interval(), tol); }

  /// Point a with H nonincreasing on [lo, a] and nondecreasing on [a, inf],
  /// read from the segment boundaries.
  std::optional<double> quasiconvex_pivot(double tol = 1e-12) const { return pivot(+1, tol); }
  /// Point c with H nondecreasing on [lo, c] and nonincreasing on [c, inf];
  /// c = inf when H is nondecreasing throughout.
  std::optional<double> quasiconcave_pivot(double tol = 1e-12) const { return pivot(-1, tol); }

  /// Midpoint convexity (sign=+1) or concavity (sign=-1) on a sample grid of
  /// [lo, hi]; falsifies only.
  bool sampled_convex(double lo, double hi, int sign = +1, int points = 129, double tol = 1e-9) const {
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    std::vector<double> hv;
    for (double x : xs) hv.push_back((*this)(x));
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 2; j < xs.size(); j += 2) {
        const double mid = (*this)((xs[i] + xs[j]) / 2);
        const double chord = (hv[i] + hv[j]) / 2;
        if (sign * (mid - chord) > tol * (1 + std::fabs(chord))) return false;
      }
    return true;
  }

  /// Checks declared segment monotonicity at 256 points per segment.
  /// Unbounded segments are sampled out to 1e6 times their scale, cubically
  /// spaced so the finite end is sampled densely.
  bool monotonicity_holds(int samples = 256) const {
    return std::all_of(segs_.begin(), segs_.end(), [&](const Segment& s) { return segment_monotone(s, samples); });
  }

  static bool segment_monotone(const Segment& s, int samples = 256) {
    {
      if (s.iv.degenerate()) return true;
      const bool lo_inf = std::isinf(s.iv.lo), hi_inf = std::isinf(s.iv.hi);
      auto at = [&](int i) {
        const double t = static_cast<double>(i) / samples;
        if (lo_inf && hi_inf) return 1e6 * (2 * t - 1) * std::fabs(2 * t - 1) * std::fabs(2 * t - 1);
        if (hi_inf) return s.iv.lo + std::max(1.0, std::fabs(s.iv.lo)) * 1e6 * t * t * t;
        if (lo_inf) return s.iv.hi - std::max(1.0, std::fabs(s.iv.hi)) * 1e6 * (1 - t) * (1 - t) * (1 - t);
        return s.iv.lo + (s.iv.hi - s.iv.lo) * t;
      };
      const int first = lo_inf ? 1 : 0, last = hi_inf ? samples - 1 : samples;
      double prev = s.expr(at(first));
      for (int i = first + 1; i <= last; ++i) {
        const double v = s.expr(at(i));
        const double slack = 1e-12 * (1 + std::fabs(prev));
        if (s.mono == Mono::inc && v < prev - slack) return false;
        if (s.mono == Mono::dec && v > prev + slack) return false;
        if (s.mono == Mono::constant && std::fabs(v - prev) > slack) return false;
        prev = v;
      }
    }
    return true;
  }

  /// {y : H(y) >= t}, or {y : H(y) > t} when strict.
  IntervalSet superlevel(double t, bool strict = false) const {
    IntervalSet out;
    for (const auto& s : segs_) {
      auto pass = [&](double y) {
        const double v = s.expr(y);
        return strict ? v > t : v >= t;
      };
      out.add(monotone_region(s, pass, t));
    }
    return out;
  }

  /// {y : H(y) in Y}.
  IntervalSet preimage(const IntervalSet& ys) const {
    IntervalSet out;
    for (const auto& s : segs_)
      for (const auto& y : ys.parts()) {
        auto in_lo = [&](double x) {
          const double v = s.expr(x);
          return y.lo_closed ? v >= y.lo : v > y.lo;
        };
        auto in_hi = [&](double x) {
          const double v = s.expr(x);
          return y.hi_closed ? v <= y.hi : v < y.hi;
        };
        const Interval a = monotone_region(s, in_lo, y.lo);
        if (a.empty()) continue;
        const Interval b = monotone_region(s, in_hi, y.hi);
        if (b.empty()) continue;
        out.add(intersect(a, b));
      }
    return out;
  }

private:
  static Interval full(Domain d) {
    return d == Domain::nonneg ? Interval{0.0, kInf, true, true} : Interval{-kInf, kInf, true, true};
  }
  static Mono flip(Mono m) { return m == Mono::inc ? Mono::dec : (m == Mono::dec ? Mono::inc : m); }
  static Expr reflect(Expr e) {
    switch (e.kind) {
      case Expr::Kind::constant: return e;
      case Expr::Kind::affine:
      case Expr::Kind::quad: e.p[1] = -e.p[1]; return e;
      case Expr::Kind::power: return Expr::power(-e.p[0], e.p[1], -e.p[2], e.p[3]);
    }
    return e;
  }
  static Expr scaled(Expr e, double k) {
    if (e.kind == Expr::Kind::power) {
      e.p[0] *= k;
      e.p[3] *= k;
    } else {
      for (auto& c : e.p) c *= k;
    }
    return e;
  }
  static Mono mono_of_slope(double b) { return b > 0 ? Mono::inc : (b < 0 ? Mono::dec : Mono::constant); }
  static bool close(double a, double b, double tol) {
    if (a == b) return true;
    if (std::isinf(a) || std::isinf(b)) return false;
    return std::fabs(a - b) <= tol * (1 + std::max(std::fabs(a), std::fabs(b)));
  }

  void validate() const {
    if (segs_.empty()) throw Error(ErrorKind::invalid_input, "map needs at least one segment");
    const Interval dom = full(domain_);
    if (segs_.front().iv.lo != dom.lo || !segs_.front().iv.lo_closed) {
      throw Error(ErrorKind::invalid_input, "first segment must start (closed) at the domain's lower end");
    }
    if (segs_.back().iv.hi != dom.hi) throw Error(ErrorKind::invalid_input, "last segment must reach infinity");
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      const Interval& iv = segs_[i].iv;
      if (iv.empty()) throw Error(ErrorKind::invalid_input, "empty segment " + std::to_string(i));
      if (i + 1 < segs_.size()) {
        const Interval& nx = segs_[i + 1].iv;
        if (iv.hi != nx.lo || iv.hi_closed == nx.lo_closed) {
          throw Error(ErrorKind::invalid_input, "segments " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                                    " do not partition the domain");
        }
      }
      if (!segment_monotone(segs_[i])) {
        static constexpr const char* kNames[] = {"nondecreasing", "nonincreasing", "constant"};
        throw Error(ErrorKind::invalid_input,
                    "segment " + std::to_string(i) + " is not " + kNames[static_cast<int>(segs_[i].mono)] + " as declared");
      }
    }
  }

  const Segment* segment_at(double y) const {
    for (const auto& s : segs_)
      if (s.iv.contains(y)) return &s;
    return nullptr;
  }
  // Segment containing (p - eps, p) for small eps.
  const Segment* segment_left_of(double p) const {
    for (const auto& s : segs_)
      if (s.iv.lo < p && p <= s.iv.hi) return &s;
    throw Error(ErrorKind::domain, "no points left of " + std::to_string(p));
  }
  // Segment containing (p, p + eps).
  const Segment* segment_right_of(double p) const {
    for (const auto& s : segs_)
      if (s.iv.lo <= p && p < s.iv.hi) return &s;
    throw Error(ErrorKind::domain, "no points right of " + std::to_string(p));
  }

  bool monotone_on(const Interval& q, int dir, double tol) const {
    auto le = [&](double a, double b) {
      if (a == b) return true;
      if (std::isinf(a) || std::isinf(b)) return dir > 0 ? a < b : a > b;
      return dir * (b - a) >= -tol * (1 + std::fabs(a) + std::fabs(b));
    };
    for (const auto& s : segs_) {
      const Interval x = intersect(s.iv, q);
      if (x.empty() || x.degenerate()) continue;
      if (s.mono == Mono::constant) continue;
      if ((dir > 0 && s.mono == Mono::dec) || (dir < 0 && s.mono == Mono::inc)) {
        if (!close(s.expr(x.lo), s.expr(x.hi), tol)) return false;
      }
    }
    for (const double b : boundaries()) {
      if (!q.contains(b)) continue;
      const OneSidedLimits l = limits(b);
      const double v = (*this)(b);
      if (q.lo < b && !le(l.lower_left, v)) return false;
      if (q.hi > b && !le(v, l.lower_right)) return false;
    }
    return true;
  }

  std::optional<double> pivot(int dir, double tol) const {
    const Interval dom = domain_interval();
    std::vector<double> cands{dom.lo};
    for (double b : boundaries()) cands.push_back(b);
    // nondecreasing throughout: the peak sits at the upper end
    if (dir < 0) cands.push_back(dom.hi);
    for (double a : cands) {
      const Interval left{dom.lo, a, true, true};
      const Interval right{a, dom.hi, true, true};
      const bool ok = dir > 0 ? (nonincreasing_on(left, tol) && nondecreasing_on(right, tol))
                              : (nondecreasing_on(left, tol) && nonincreasing_on(right, tol));
      if (ok) return a;
    }
    return std::nullopt;
  }

  /// {x in s.iv : pass(x)} for a predicate monotone along the segment's
  /// expression (an interval, possibly empty). Boundaries are located by
  /// bisection to adjacent doubles.
  template <class Pred>
  static Interval monotone_region(const Segment& s, Pred&& pass, double level) {
    const Interval& iv = s.iv;
    if (iv.degenerate()) return pass(iv.lo) ? iv : Interval{1, 0, true, true};
    // Representative interior points near each end.
    const double lo_pt = iv.lo_closed ? iv.lo : inner(iv.lo, iv.hi, +1);
    const double hi_pt = iv.hi_closed ? iv.hi : inner(iv.hi, iv.lo, -1);
    const bool at_lo = pass(lo_pt);
    const bool at_hi = pass(hi_pt);
    if (at_lo && at_hi) return iv;
    if (!at_lo && !at_hi) {
      // A monotone predicate true somewhere inside would be true at one end.
      return {1, 0, true, true};
    }
    if (!at_lo) {
      // F..F T..T : find first true point.
      const double x = bisect(lo_pt, hi_pt, pass, true, s.expr.solve(level));
      return {x, iv.hi, true, iv.hi_closed};
    }
    const double x = bisect(lo_pt, hi_pt, pass, false, s.expr.solve(level));
    return {iv.lo, x, iv.lo_closed, true};
  }

  // Point just inside an open end (towards `toward`).
  static double inner(double end, double toward, int dir) {
    if (std::isinf(end)) return dir > 0 ? -1e300 : 1e300;
    return std::nextafter(end, toward);
  }

  // With pass(a) != pass(b): returns the first true point (rising) or the
  // last true point (falling) between a and b.
  template <class Pred>
  static double bisect(double a, double b, Pred& pass, bool rising, std::optional<double> guess = std::nullopt) {
    // Narrow the bracket around a closed-form guess by steps growing from
    // one ulp; the predicate decides, so a poor guess only costs time.
    if (guess && *guess > a && *guess < b) {
      const double g = *guess;
      const bool at_g = pass(g);
      if (at_g == rising) {
        b = g;  // crossing at or below g
        double step = std::max(std::fabs(g), 1e-300) * 0x1p-52;
        for (int i = 0; i < 64; ++i) {
          const double y = g - step;
          if (!(y > a)) break;
          if (pass(y) != rising) {
            a = y;
            break;
          }
          b = y;
          step *= 4;
        }
      } else {
        a = g;
        double step = std::max(std::fabs(g), 1e-300) * 0x1p-52;
        for (int i = 0; i < 64; ++i) {
          const double y = g + step;
          if (!(y < b)) break;
          if (pass(y) == rising) {
            b = y;
            break;
          }
          a = y;
          step *= 4;
        }
      }
    }
    // Replace infinite ends by finite points with the same predicate value.
    if (std::isinf(b)) {
      const bool want = pass(b);
      double y = std::isinf(a) ? 1.0 : std::max(1.0, 2 * std::fabs(a));
      while (y < 1e300 && pass(y) != want) y *= 2;
      if (pass(y) != want) return rising ? b : y;
      b = y;
    }
    if (std::isinf(a)) {
      const bool want = pass(a);
      double y = std::isinf(b) ? -1.0 : -std::max(1.0, 2 * std::fabs(b));
      while (y > -1e300 && pass(y) != want) y *= 2;
      if (pass(y) != want) return rising ? y : a;
      a = y;
    }
    for (int it = 0; it < 2200; ++it) {
      const double m = a / 2 + b / 2;
      if (m <= a || m >= b) break;
      if (pass(m) == rising) {
        b = m;
      } else {
        a = m;
      }
    }
    return rising ? b : a;
  }

  std::vector<Segment> segs_;
  Domain domain_;
};

/// Support line of a concave map at p. The slope defaults to the midpoint of
/// the one-sided derivatives; `slope` overrides it. The support inequality is
/// checked at `grid_points` points of [range_lo, range_hi].
inline SupportLine support_slope(const PiecewiseMap& h, double p, std::optional<double> slope = std::nullopt,
                                 std::optional<std::pair<double, double>> range = std::nullopt,
                                 int grid_points = 1000) {
  const Interval dom = h.domain_interval();
  if (!(p > dom.lo && p < dom.hi)) throw Error(ErrorKind::domain, "support slope needs an interior point");
  double m;
  if (slope) {
    m = *slope;
  } else {
    const double dl = h.left_derivative(p);
    const double dr = h.right_derivative(p);
    m = (dl + dr) / 2;
  }
  if (!std::isfinite(m)) throw Error(ErrorKind::not_concave, "infinite support slope");
  const SupportLine line{p, m, h(p)};
  const double lo = range ? range->first : std::max(dom.lo, -std::max({4 * std::fabs(p), 4.0}));
  const double hi = range ? range->second : std::max({4 * std::fabs(p), p + 4.0, 1.5 * h.last_finite_point()});
  for (int i = 0; i < grid_points; ++i) {
    const double y = lo + (hi - lo) * i / (grid_points - 1);
    const double hy = h(y);
    const double ly = line(y);
    if (hy > ly + 1e-9 * (1 + std::fabs(ly))) {
      throw Error(ErrorKind::not_concave,
                  "not concave at p=" + std::to_string(p) + ": support line fails at y=" + std::to_string(y));
    }
  }
  return line;
}

}  // namespace sugeno
