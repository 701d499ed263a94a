#pragma once

#include <cmath>

#include "sugeno/binops.hpp"
#include "sugeno/error.hpp"
#include "sugeno/ext_real.hpp"
#include "sugeno/integrals.hpp"
#include "sugeno/measure.hpp"
#include "sugeno/piecewise.hpp"

namespace sugeno {

struct SignedParts {
  DiscreteFunction pos;  // f v 0
  DiscreteFunction neg;  // (-f) v 0
};

inline SignedParts split_parts(const SignedFunction& f) {
  std::vector<ExtReal> p, n;
  p.reserve(f.size());
  n.reserve(f.size());
  for (const auto& v : f.values()) {
    p.push_back(v.positive_part());
    n.push_back(v.negative_part());
  }
  return {DiscreteFunction(std::move(p)), DiscreteFunction(std::move(n))};
}

struct SplitTransform {
  PiecewiseMap h1;  // H(x), x >= 0
  PiecewiseMap h2;  // -H(-x), x >= 0
};

/// Splits a nondecreasing H on the real line with H(0) = 0 into the two
/// nonnegative maps acting on f+ and f-.
inline SplitTransform split_transform(const PiecewiseMap& h) {
  if (h.domain() != Domain::real) throw Error(ErrorKind::invalid_input, "split needs a map on the real line");
  if (h(0.0) != 0.0) throw Error(ErrorKind::hypothesis, "split needs H(0) = 0");
  if (!h.nondecreasing()) throw Error(ErrorKind::hypothesis, "split needs a nondecreasing H");
  return {h.half_line(+1), h.half_line(-1, -1.0)};
}

/// a star (-b) for the two part-integrals; both must be finite.
inline SignedExtReal join_parts(const MixedOpSpec& star, const ExtReal& pos, const ExtReal& neg) {
  if (pos.is_inf() || neg.is_inf()) throw Error(ErrorKind::domain, "part-integral is infinite");
  return star(SignedExtReal(pos), -SignedExtReal(neg));
}

/// Su(f+) star (-Su(f-)).
inline SignedExtReal symmetric_integral(const MixedOpSpec& star, const MonotoneMeasure& mu, Subset a,
                                        const SignedFunction& f) {
  const SignedParts parts = split_parts(f);
  return join_parts(star, sugeno(mu, a, parts.pos).value, sugeno(mu, a, parts.neg).value);
}

/// Integral of g+ under (op, mu) joined with the integral of g- under
/// (op, nu).
inline SignedExtReal asymmetric_integral(const BinaryOpSpec& op, const MixedOpSpec& star, const MonotoneMeasure& mu,
                                         const MonotoneMeasure& nu, Subset a, const SignedFunction& g) {
  const SignedParts parts = split_parts(g);
  return join_parts(star, generalized_integral(op, mu, a, parts.pos).value,
                    generalized_integral(op, nu, a, parts.neg).value);
}

/// [(H(p1) v p1) ^ mu(A)] star [H(-p2) v (-p2)] for H on the real line.
inline SignedExtReal upper_bound_001(const PiecewiseMap& h, const ExtReal& p1, const ExtReal& p2, const ExtReal& mu_a,
                                     const MixedOpSpec& star) {
  if (p1.is_inf() || p2.is_inf()) throw Error(ErrorKind::domain, "p not finite");
  const double a = p1.value(), b = p2.value();
  const ExtReal first = min(ExtReal::from_double(std::max(h(a), a)), mu_a);
  const SignedExtReal second(std::max(h(-b), -b));
  return star(SignedExtReal(first), second);
}

struct MixedBounds {
  ExtReal lower;  // Su(H(f+)) v Su(H~(f-))
  ExtReal upper;  // Su(H(f+)) + Su(H~(f-)), valid for subadditive mu
};

/// Two-sided bounds on Su(H(f)) for H on the real line that decreases to
/// H(0) = 0 and increases afterwards; H~(x) = H(-x).
inline MixedBounds mixed_monotone_bounds(const PiecewiseMap& h, const MonotoneMeasure& mu, Subset a,
                                         const SignedFunction& f) {
  const SignedParts parts = split_parts(f);
  const PiecewiseMap pos = h.half_line(+1), neg = h.half_line(-1);
  const ExtReal u = sugeno(mu, a, parts.pos.map([&](const ExtReal& x) { return pos.eval(x); })).value;
  const ExtReal v = sugeno(mu, a, parts.neg.map([&](const ExtReal& x) { return neg.eval(x); })).value;
  return {max(u, v), u + v};
}

}  // namespace sugeno
