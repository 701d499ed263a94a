#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sugeno/binops.hpp"
#include "sugeno/error.hpp"
#include "sugeno/measure.hpp"
#include "sugeno/piecewise.hpp"
#include "sugeno/verify/predicates.hpp"

namespace sugeno::verify {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for an independent stream keyed by (seed, a, b).
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

/// Portable generator: mt19937_64 is fully specified by the standard and
/// doubles are built from the top 53 bits, so draws match across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Integer in [lo, hi].
  int range(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>((eng_() >> 11) % span);
  }
  bool coin(double p = 0.5) { return uniform() < p; }
  /// Multiple of `step` in [0, hi].
  double grid(double hi, double step) {
    const int k = static_cast<int>(std::floor(hi / step + 1e-9));
    return step * range(0, k);
  }
  /// Continuous or quantized value in [0, hi]; quantized draws make ties
  /// and coincidences with H's knots likely.
  double value(double hi) { return coin(0.5) ? grid(hi, hi / 8) : uniform(0.0, hi); }

private:
  std::mt19937_64 eng_;
};

enum class MeasureKind { general, subadditive, superadditive, weakly_sub, weakly_super, additive };

inline const char* to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::general: return "general";
    case MeasureKind::subadditive: return "subadditive";
    case MeasureKind::superadditive: return "superadditive";
    case MeasureKind::weakly_sub: return "weakly_sub";
    case MeasureKind::weakly_super: return "weakly_super";
    case MeasureKind::additive: return "additive";
  }
  return "general";
}

inline MeasureKind parse_measure_kind(std::string_view s) {
  if (s == "general") return MeasureKind::general;
  if (s == "subadditive") return MeasureKind::subadditive;
  if (s == "superadditive") return MeasureKind::superadditive;
  if (s == "weakly_sub" || s == "weakly-subadditive") return MeasureKind::weakly_sub;
  if (s == "weakly_super" || s == "weakly-superadditive") return MeasureKind::weakly_super;
  if (s == "additive") return MeasureKind::additive;
  throw Error(ErrorKind::invalid_input, "unknown measure kind '" + std::string(s) + "'");
}

namespace detail {

inline MonotoneMeasure closure_measure(Rng& r, int n, double scale, bool allow_inf) {
  const FiniteSpace sp(n);
  std::vector<ExtReal> v(sp.subset_count());
  const double zero_rate = r.uniform(0.0, 0.6);
  const bool quantized = r.coin(0.5);
  for (std::uint32_t b = 1; b < v.size(); ++b) {
    ExtReal raw;
    if (!r.coin(zero_rate)) raw = ExtReal(quantized ? r.grid(scale, scale / 8) : r.uniform(0.0, scale));
    for (int i = 0; i < n; ++i)
      if ((b >> i) & 1u) raw = max(raw, v[b & ~(1u << i)]);
    v[b] = raw;
  }
  if (allow_inf && r.coin(0.05)) {
    // every superset of one random nonempty set becomes infinite
    const auto seed = static_cast<std::uint32_t>(r.range(1, static_cast<int>(v.size()) - 1));
    for (std::uint32_t b = 1; b < v.size(); ++b)
      if ((b & seed) == seed) v[b] = ExtReal::infinity();
  }
  return MonotoneMeasure::dense(sp, std::move(v));
}

/// scale * (w(B) / w(X))^alpha over random weights.
inline MonotoneMeasure distorted_measure(Rng& r, int n, double scale, double alpha) {
  std::vector<double> w;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    w.push_back(r.coin(0.5) ? 0.125 * r.range(1, 8) : r.uniform(0.05, 1.0));
    total += w.back();
  }
  const FiniteSpace sp(n);
  std::vector<ExtReal> v(sp.subset_count());
  for (std::uint32_t b = 1; b < v.size(); ++b) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      if ((b >> i) & 1u) s += w[static_cast<std::size_t>(i)];
    v[b] = ExtReal(b == sp.full().bits ? scale : scale * std::pow(s / total, alpha));
  }
  return MonotoneMeasure::dense(sp, std::move(v));
}

/// max of weights over B: subadditive.
inline MonotoneMeasure possibility_measure(Rng& r, int n, double scale) {
  std::vector<double> w;
  for (int i = 0; i < n; ++i) w.push_back(r.value(scale));
  const FiniteSpace sp(n);
  std::vector<ExtReal> v(sp.subset_count());
  for (std::uint32_t b = 1; b < v.size(); ++b) {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      if ((b >> i) & 1u) m = std::max(m, w[static_cast<std::size_t>(i)]);
    v[b] = ExtReal(m);
  }
  return MonotoneMeasure::dense(sp, std::move(v));
}

inline bool kind_holds(const MonotoneMeasure& mu, MeasureKind k, Subset a) {
  if (!validate_monotone(mu).valid()) return false;
  switch (k) {
    case MeasureKind::general: return true;
    case MeasureKind::subadditive: return is_subadditive(mu).holds;
    case MeasureKind::superadditive: return is_superadditive(mu).holds;
    case MeasureKind::weakly_sub: return is_weakly_subadditive(mu, a).holds;
    case MeasureKind::weakly_super: return is_weakly_superadditive(mu, a).holds;
    case MeasureKind::additive: return is_subadditive(mu).holds && is_superadditive(mu).holds;
  }
  return false;
}

}  // namespace detail

/// Random monotone measure on n points of the given kind; `a` is the set
/// the weak kinds refer to. The kind's predicate is re-verified and the
/// draw repeated on failure. With `unit`, mu(X) <= 1.
inline MonotoneMeasure random_measure(Rng& r, int n, MeasureKind kind, Subset a, bool unit = false) {
  if (n < 1 || n > 12) throw Error(ErrorKind::invalid_input, "generated spaces need 1 <= n <= 12");
  const double scale = unit ? 1.0 : 0.5 * r.range(1, 6);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::optional<MonotoneMeasure> mu;
    switch (kind) {
      case MeasureKind::general: mu = detail::closure_measure(r, n, scale, !unit); break;
      case MeasureKind::subadditive:
        mu = r.coin(1.0 / 3) ? detail::possibility_measure(r, n, scale)
                             : detail::distorted_measure(r, n, scale, r.uniform(0.25, 1.0));
        break;
      case MeasureKind::superadditive: mu = detail::distorted_measure(r, n, scale, r.uniform(1.0, 3.0)); break;
      case MeasureKind::additive: mu = detail::distorted_measure(r, n, scale, 1.0); break;
      case MeasureKind::weakly_sub:
        mu = attempt < 30 ? detail::closure_measure(r, n, scale, !unit)
                          : detail::distorted_measure(r, n, scale, r.uniform(0.25, 1.0));
        break;
      case MeasureKind::weakly_super:
        mu = attempt < 30 ? detail::closure_measure(r, n, scale, !unit)
                          : detail::distorted_measure(r, n, scale, r.uniform(1.0, 3.0));
        break;
    }
    if (detail::kind_holds(*mu, kind, a)) return *mu;
  }
  throw Error(ErrorKind::hypothesis, std::string("resample budget exhausted for measure kind ") + to_string(kind));
}

/// Nonempty random subset; the whole space with probability 0.3.
inline Subset random_subset(Rng& r, int n) {
  const FiniteSpace sp(n);
  if (r.coin(0.3)) return sp.full();
  return Subset{static_cast<std::uint32_t>(r.range(1, static_cast<int>(sp.subset_count()) - 1))};
}

/// i.i.d. values in [0, hi] (or [-hi, hi] when `signed_values`), zero with
/// probability 0.15.
inline SignedFunction random_function(Rng& r, int n, double hi, bool signed_values = false) {
  std::vector<SignedExtReal> v;
  for (int i = 0; i < n; ++i) {
    double x = r.coin(0.15) ? 0.0 : r.value(hi);
    if (signed_values && r.coin(0.5)) x = -x;
    v.emplace_back(x);
  }
  return SignedFunction(std::move(v));
}

// ---------------------------------------------------------------------------
// Transforms

/// Shape families the transform generator draws from.
enum class Shape {
  any,                 // nonnegative, jumps allowed
  continuous,          // nonnegative and continuous
  nondecreasing,       // jumps allowed
  quasiconvex,         // decreasing then increasing, jumps allowed
  quasiconcave,        // continuous, increasing then decreasing
  concave,             // continuous, nondecreasing
  convex,              // continuous
  unit_quasiconvex,    // [0,1] -> [0,1], constant after 1
  unit_nondecreasing,  // [0,1] -> [0,1], constant after 1
  real_nondecreasing,  // on the real line with H(0) = 0
  real_valley,         // on the real line, decreasing to H(0) = 0, then increasing
};

/// Piecewise-linear data on [0, inf]: knots 0 = x[0] < ... < x[k]. Piece
/// i < k runs from value a[i] at x[i] to b[i] at x[i+1]; the tail starts
/// at a[k] with slope `tail`. At an interior knot the value belongs to the
/// left piece when left_owns[i].
struct LinearSpec {
  std::vector<double> x;
  std::vector<double> a, b;
  std::vector<bool> left_owns;
  double tail = 0.0;
};

/// Each piece is anchored at its lower end value, so no rounding can push
/// a piece below min(a[i], b[i]).
inline PiecewiseMap build_linear(const LinearSpec& s) {
  const std::size_t k = s.x.size() - 1;
  std::vector<Segment> segs;
  auto piece = [](double x0, double v0, double x1, double v1) {
    if (v0 == v1) return std::pair{Expr::constant(v0), Mono::constant};
    const double c = (v1 - v0) / (x1 - x0);
    if (c > 0) return std::pair{Expr::power(c, 1.0, x0, v0), Mono::inc};
    return std::pair{Expr::power(c, 1.0, x1, v1), Mono::dec};
  };
  for (std::size_t i = 0; i < k; ++i) {
    const auto [e, m] = piece(s.x[i], s.a[i], s.x[i + 1], s.b[i]);
    segs.push_back({{s.x[i], s.x[i + 1], i == 0 || !s.left_owns[i], s.left_owns[i + 1]}, e, m});
  }
  Expr tail = s.tail == 0 ? Expr::constant(s.a[k]) : Expr::power(s.tail, 1.0, s.x[k], s.a[k]);
  segs.push_back({{s.x[k], kInf, k == 0 || !s.left_owns[k], true},
                  tail,
                  s.tail > 0 ? Mono::inc : (s.tail < 0 ? Mono::dec : Mono::constant)});
  return PiecewiseMap(std::move(segs), Domain::nonneg);
}

namespace detail {

/// Sorted knots 0 < x_1 < ... < x_k inside (0, span), on a grid of span/16.
inline std::vector<double> random_knots(Rng& r, int k, double span) {
  std::vector<double> x{0.0};
  std::vector<int> picks;
  while (static_cast<int>(picks.size()) < k) {
    const int g = r.range(1, 15);
    if (std::find(picks.begin(), picks.end(), g) == picks.end()) picks.push_back(g);
  }
  std::sort(picks.begin(), picks.end());
  for (int g : picks) x.push_back(span * g / 16.0);
  return x;
}

inline LinearSpec spec_with(std::vector<double> x) {
  LinearSpec s;
  const std::size_t k = x.size() - 1;
  s.x = std::move(x);
  s.a.assign(k + 1, 0.0);
  s.b.assign(k, 0.0);
  s.left_owns.assign(k + 1, true);
  return s;
}

/// Continuous LinearSpec through the given knot values.
inline LinearSpec continuous_spec(std::vector<double> x, const std::vector<double>& v, double tail) {
  LinearSpec s = spec_with(std::move(x));
  for (std::size_t i = 0; i < v.size(); ++i) {
    s.a[i] = v[i];
    if (i > 0) s.b[i - 1] = v[i];
  }
  s.tail = tail;
  return s;
}

/// Nondecreasing values with occasional upward jumps; starts at `start`.
inline LinearSpec nondecreasing_spec(Rng& r, double span, double top, double start, bool left_cont_bias) {
  LinearSpec s = spec_with(random_knots(r, r.range(0, 3), span));
  double cur = start;
  const std::size_t k = s.x.size() - 1;
  for (std::size_t i = 0; i <= k; ++i) {
    if (i > 0 && r.coin(0.4)) cur += r.value(top / 2);  // jump at x_i
    s.a[i] = cur;
    if (i < k) {
      cur += r.coin(0.3) ? 0.0 : r.value(top / 2);
      s.b[i] = cur;
    }
    s.left_owns[i] = left_cont_bias ? !r.coin(0.15) : r.coin(0.5);
  }
  s.tail = r.coin(0.3) ? 0.0 : r.value(2.0);
  return s;
}

inline PiecewiseMap nonneg_any(Rng& r, double span, double top, bool continuous) {
  LinearSpec s = spec_with(random_knots(r, r.range(0, 3), span));
  const std::size_t k = s.x.size() - 1;
  double prev = r.value(top);
  for (std::size_t i = 0; i <= k; ++i) {
    s.a[i] = (continuous || i == 0 || r.coin(0.5)) ? prev : r.value(top);
    if (i < k) prev = s.b[i] = r.value(top);
    s.left_owns[i] = r.coin(0.5);
  }
  s.tail = r.coin(0.5) ? 0.0 : r.value(2.0);
  return build_linear(s);
}

/// Nonincreasing up to a minimum at knot m, nondecreasing after; jumps
/// allowed, and the minimum is attained at x_m.
inline PiecewiseMap quasiconvex_map(Rng& r, double span, double top, bool unit) {
  std::vector<double> x = random_knots(r, r.range(1, 3), unit ? 1.0 : span);
  if (unit) x.push_back(1.0);
  LinearSpec s = spec_with(x);
  const std::size_t k = s.x.size() - 1;
  const std::size_t m = static_cast<std::size_t>(r.range(0, static_cast<int>(k)));
  // sequence a_0, b_0, a_1, ..., a_k along x; position 2m holds the minimum
  const bool continuous = r.coin(0.4);
  std::vector<double> seq;
  for (std::size_t j = 0; j <= 2 * k; ++j) seq.push_back(r.value(top));
  std::sort(seq.begin(), seq.end());
  std::vector<double> left(seq.begin() + 1, seq.begin() + 1 + static_cast<long>(2 * m));
  std::vector<double> right(seq.begin() + 1 + static_cast<long>(2 * m), seq.end());
  std::sort(left.rbegin(), left.rend());
  std::vector<double> ordered(left);
  ordered.push_back(seq.front());
  ordered.insert(ordered.end(), right.begin(), right.end());
  for (std::size_t i = 0; i <= k; ++i) {
    s.a[i] = ordered[2 * i];
    if (i < k) s.b[i] = ordered[2 * i + 1];
    s.left_owns[i] = r.coin(0.5);
  }
  if (continuous)
    for (std::size_t i = 1; i <= k; ++i) {
      if (i <= m) s.b[i - 1] = s.a[i];
      else s.a[i] = s.b[i - 1];
    }
  if (m > 0) s.left_owns[m] = false;
  s.tail = unit ? 0.0 : (r.coin(0.4) ? 0.0 : r.value(2.0));
  return build_linear(s);
}

inline PiecewiseMap quasiconcave_map(Rng& r, double span, double top) {
  std::vector<double> x = random_knots(r, r.range(1, 3), span);
  const std::size_t k = x.size() - 1;
  const std::size_t peak = static_cast<std::size_t>(r.range(0, static_cast<int>(k)));
  std::vector<double> up, down;
  for (std::size_t i = 0; i <= k; ++i) (i <= peak ? up : down).push_back(r.value(top));
  std::sort(up.begin(), up.end());
  std::sort(down.rbegin(), down.rend());
  for (auto& d : down) d = std::min(d, up.back());
  std::vector<double> v(up);
  v.insert(v.end(), down.begin(), down.end());
  double tail = 0.0;
  if (peak == k && r.coin(0.5)) tail = r.value(1.0);  // still rising: plain nondecreasing
  return build_linear(continuous_spec(x, v, tail));
}

inline PiecewiseMap concave_map(Rng& r, double span, double top) {
  if (r.coin(0.3)) {
    const double c = 0.25 * r.range(1, 8), alpha = 0.125 * r.range(2, 7), d = r.coin(0.5) ? 0.0 : r.value(top / 2);
    return PiecewiseMap({{{0.0, kInf, true, true}, Expr::power(c, alpha, 0.0, d), Mono::inc}}, Domain::nonneg);
  }
  std::vector<double> x = random_knots(r, r.range(0, 3), span);
  std::vector<double> slopes;
  for (std::size_t i = 0; i < x.size(); ++i) slopes.push_back(r.coin(0.2) ? 0.0 : r.value(2.0));
  std::sort(slopes.rbegin(), slopes.rend());
  std::vector<double> v{r.coin(0.5) ? 0.0 : r.value(top / 2)};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) v.push_back(v.back() + slopes[i] * (x[i + 1] - x[i]));
  return build_linear(continuous_spec(x, v, slopes.back()));
}

inline PiecewiseMap convex_map(Rng& r, double span, double top) {
  if (r.coin(0.3)) {
    // c (x - v)^2 + k
    const double c = 0.25 * r.range(1, 8), v = r.value(span), k = r.coin(0.5) ? 0.0 : r.value(top / 2);
    return PiecewiseMap::quadratic(c * v * v + k, -2 * c * v, c);
  }
  std::vector<double> x = random_knots(r, r.range(0, 3), span);
  std::vector<double> slopes;
  for (std::size_t i = 0; i < x.size(); ++i) slopes.push_back(r.uniform(-2.0, 2.0));
  std::sort(slopes.begin(), slopes.end());
  if (slopes.back() < 0) slopes.back() = r.coin(0.5) ? 0.0 : r.value(1.0);
  std::vector<double> v{0.0};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) v.push_back(v.back() + slopes[i] * (x[i + 1] - x[i]));
  const double lift = -*std::min_element(v.begin(), v.end()) + (r.coin(0.5) ? 0.0 : r.value(top / 2));
  for (auto& y : v) y = std::max(0.0, y + lift);
  return build_linear(continuous_spec(x, v, slopes.back()));
}

inline PiecewiseMap unit_nondecreasing_map(Rng& r) {
  LinearSpec s = nondecreasing_spec(r, 1.0, 0.5, 0.0, true);
  s.x.push_back(1.0);
  s.a.push_back(0.0);
  s.b.push_back(0.0);
  s.left_owns.push_back(true);
  const std::size_t k = s.x.size() - 1;
  s.b[k - 1] = s.a[k - 1] + (s.tail > 0 ? s.tail * (1.0 - s.x[k - 1]) : 0.0);
  s.a[k] = s.b[k - 1];
  s.tail = 0.0;
  const double top = std::max(s.a[k], 1e-300);
  if (top > 1.0) {
    for (auto& v : s.a) v /= top;
    for (auto& v : s.b) v /= top;
  }
  return build_linear(s);
}

}  // namespace detail

/// Random transform of the given shape; `top` sets the value scale and
/// `span` the region holding the knots.
inline PiecewiseMap random_transform(Rng& r, Shape shape, double top = 2.0, double span = 3.0) {
  using namespace detail;
  switch (shape) {
    case Shape::any: return nonneg_any(r, span, top, false);
    case Shape::continuous: return nonneg_any(r, span, top, true);
    case Shape::nondecreasing:
      return build_linear(nondecreasing_spec(r, span, top, r.coin(0.5) ? 0.0 : r.value(top / 2), false));
    case Shape::quasiconvex: return quasiconvex_map(r, span, top, false);
    case Shape::quasiconcave: return quasiconcave_map(r, span, top);
    case Shape::concave: return concave_map(r, span, top);
    case Shape::convex: return convex_map(r, span, top);
    case Shape::unit_quasiconvex: return quasiconvex_map(r, 1.0, 1.0, true);
    case Shape::unit_nondecreasing: return unit_nondecreasing_map(r);
    case Shape::real_nondecreasing:
      return PiecewiseMap::from_halves(build_linear(nondecreasing_spec(r, span, top, 0.0, false)),
                                       build_linear(nondecreasing_spec(r, span, top, 0.0, false)), -1.0);
    case Shape::real_valley:
      return PiecewiseMap::from_halves(build_linear(nondecreasing_spec(r, span, top, 0.0, false)),
                                       build_linear(nondecreasing_spec(r, span, top, 0.0, false)), 1.0);
  }
  throw Error(ErrorKind::invalid_input, "unknown shape");
}

/// Operation pool for the generalized-integral bounds.
inline BinaryOpSpec random_op(Rng& r) {
  switch (r.range(0, 3)) {
    case 0: return ops::min_op();
    case 1: return ops::product();
    case 2: return ops::ceil_min();
    default: return ops::floor_min();
  }
}

inline BinaryOpSpec random_tnorm(Rng& r) {
  static const char* names[] = {"min", "product", "lukasiewicz"};
  return tnorm(names[r.range(0, 2)]);
}

}  // namespace sugeno::verify
