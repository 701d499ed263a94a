#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sugeno/binops.hpp"
#include "sugeno/error.hpp"
#include "sugeno/ext_real.hpp"
#include "sugeno/integrals.hpp"
#include "sugeno/measure.hpp"
#include "sugeno/piecewise.hpp"
#include "sugeno/profile.hpp"
#include "sugeno/symmetric.hpp"
#include "sugeno/verify/predicates.hpp"

namespace sugeno {

enum class Direction { lower, upper };

inline const char* to_string(Direction d) { return d == Direction::lower ? "lower" : "upper"; }

struct Hypothesis {
  std::string name;
  bool holds = true;
  std::string detail;
};

struct BoundReport {
  std::string id;
  SignedExtReal lhs;
  SignedExtReal rhs;
  Direction direction = Direction::lower;
  std::vector<Hypothesis> hypotheses;
  bool holds = true;
  double slack = 0.0;  // lhs - rhs for lower bounds, rhs - lhs for upper bounds
  std::vector<std::pair<std::string, double>> details;
  /// False when a failed hypothesis left a side undefined (for example an
  /// infinite p or support slope); lhs, rhs and slack are then meaningless.
  bool evaluated = true;
  std::string note;

  bool hypotheses_hold() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
  }
  std::optional<double> detail(std::string_view key) const {
    for (const auto& [k, v] : details)
      if (k == key) return v;
    return std::nullopt;
  }
};

/// Inputs shared by the closed-form evaluators. `p` is the inner integral
/// the particular bound is phrased in.
struct BoundInputs {
  ExtReal p;
  ExtReal mu_a;
  PiecewiseMap h = PiecewiseMap::identity();
  BinaryOpSpec op = ops::min_op();
};

namespace detail {

inline ExtReal hval(double v) {
  if (v != v) throw Error(ErrorKind::domain, "transform value is NaN");
  if (v < 0) throw Error(ErrorKind::domain, "transform takes a negative value");
  return ExtReal::from_double(v);
}

inline double finite_p(const ExtReal& p) {
  if (p.is_inf()) throw Error(ErrorKind::domain, "p not finite");
  return p.value();
}

inline double inf_h(const PiecewiseMap& h, double lo, double hi) { return h.extrema(lo, hi).inf; }
inline double sup_h(const PiecewiseMap& h, double lo, double hi) { return h.extrema(lo, hi).sup; }

}  // namespace detail

/// [(H(p_-) ^ inf H([p,inf])) o p] v [inf H o mu(A)]
inline ExtReal lower_tw1_i(const BoundInputs& in) {
  const double p = detail::finite_p(in.p);
  const double a = std::min(in.h.limits(p).lower_left, detail::inf_h(in.h, p, kInf));
  return max(in.op(detail::hval(a), in.p), in.op(detail::hval(in.h.inf_all()), in.mu_a));
}

/// [(H(p_+) ^ inf H([0,p])) o (mu(A) - p)] v [inf H o mu(A)]
inline ExtReal lower_tw1_ii(const BoundInputs& in) {
  const double p = detail::finite_p(in.p);
  const double a = std::min(in.h.limits(p).lower_right, detail::inf_h(in.h, 0.0, p));
  return max(in.op(detail::hval(a), in.mu_a - in.p), in.op(detail::hval(in.h.inf_all()), in.mu_a));
}

/// [(H(p^+) v sup H([0,p])) o mu(A)] v [sup H o p]
inline ExtReal upper_tw2_i(const BoundInputs& in) {
  const double p = detail::finite_p(in.p);
  const double a = std::max(in.h.limits(p).upper_right, detail::sup_h(in.h, 0.0, p));
  return max(in.op(detail::hval(a), in.mu_a), in.op(detail::hval(in.h.sup_all()), in.p));
}

/// [(H(p^-) v sup H([p,inf])) o mu(A)] v [sup H o (mu(A) - p)]
inline ExtReal upper_tw2_ii(const BoundInputs& in) {
  const double p = detail::finite_p(in.p);
  const double a = std::max(in.h.limits(p).upper_left, detail::sup_h(in.h, p, kInf));
  return max(in.op(detail::hval(a), in.mu_a), in.op(detail::hval(in.h.sup_all()), in.mu_a - in.p));
}

/// Bounds that need no continuity of the operation: which = 1..4.
inline ExtReal bounds_tw3(const BoundInputs& in, int which) {
  const double p = detail::finite_p(in.p);
  const auto& h = in.h;
  const auto& op = in.op;
  using detail::hval;
  switch (which) {
    case 1: return max(op(hval(detail::inf_h(h, p, kInf)), in.p), op(hval(h.inf_all()), in.mu_a));
    case 2: return max(op(hval(detail::sup_h(h, 0.0, p)), in.mu_a), op(hval(h.sup_all()), in.p));
    case 3: return max(op(hval(detail::inf_h(h, 0.0, p)), in.mu_a - in.p), op(hval(h.inf_all()), in.mu_a));
    case 4: return max(op(hval(detail::sup_h(h, p, kInf)), in.mu_a), op(hval(h.sup_all()), in.mu_a - in.p));
    default: throw Error(ErrorKind::invalid_input, "bound variant must be 1..4");
  }
}

/// Combined lower bound for subadditive measures and continuous H.
inline ExtReal remark_noo1(const BoundInputs& in) {
  const double p = detail::finite_p(in.p);
  using detail::hval;
  return max(max(in.op(hval(detail::inf_h(in.h, p, kInf)), in.p), in.op(hval(detail::inf_h(in.h, 0.0, p)), in.mu_a - in.p)),
             in.op(hval(in.h.inf_all()), in.mu_a));
}

/// Combined upper bound for superadditive measures and continuous
/// quasiconcave H.
inline ExtReal remark_in3a(const BoundInputs& in) {
  const double p = detail::finite_p(in.p);
  using detail::hval;
  const ExtReal top = hval(in.h.sup_all());
  return max(max(in.op(hval(detail::sup_h(in.h, 0.0, p)), in.mu_a), in.op(hval(detail::sup_h(in.h, p, kInf)), in.mu_a)),
             max(in.op(top, in.p), in.op(top, in.mu_a - in.p)));
}

/// H(p) ^ p.
inline ExtReal lower_sugeno_monotone(const PiecewiseMap& h, const ExtReal& p) {
  const double x = detail::finite_p(p);
  return min(detail::hval(h(x)), p);
}

/// H(p) ^ p for convex H minimized at a, valid for p >= a.
inline ExtReal lower_sugeno_convex(const PiecewiseMap& h, const ExtReal& p, double a) {
  if (detail::finite_p(p) < a) throw Error(ErrorKind::hypothesis, "p lies left of the minimizer");
  return lower_sugeno_monotone(h, p);
}

/// H(p) p.
inline ExtReal lower_shilkret(const PiecewiseMap& h, const ExtReal& p) {
  return detail::hval(h(detail::finite_p(p))) * p;
}

/// p (x) H(p_-).
inline ExtReal lower_q_integral(const BinaryOpSpec& conj, const PiecewiseMap& h, const ExtReal& p, double a0 = 0.0) {
  const double x = detail::finite_p(p);
  if (x < a0) throw Error(ErrorKind::hypothesis, "p lies left of the minimizer");
  return conj(p, detail::hval(h.limits(x).lower_left));
}

/// S(H(p_S), p_S).
inline ExtReal lower_seminormed(const BinaryOpSpec& s, const PiecewiseMap& h, const ExtReal& p_s, double a0 = 0.0) {
  const double x = detail::finite_p(p_s);
  if (x < a0) throw Error(ErrorKind::hypothesis, "p lies left of a0");
  return s(detail::hval(h(x)), p_s);
}

/// Sugeno upper bound for H increasing on [0,c] and decreasing after c.
inline ExtReal upper_sugeno_unimodal(const PiecewiseMap& h, const ExtReal& p, double c, const ExtReal& mu_a,
                                     bool weak_superadditive) {
  const double x = detail::finite_p(p);
  const ExtReal hp = detail::hval(h(x));
  const ExtReal hc = detail::hval(h(c));
  if (x <= c) return min(min(max(hp, p), hc), mu_a);
  if (!weak_superadditive) throw Error(ErrorKind::hypothesis, "p > c needs weak superadditivity");
  return min(min(max(hp, mu_a - p), hc), mu_a);
}

/// First term of the Liapunov-type bound: (H(p) + m (c - p))^+ o mu(A).
inline ExtReal liapunov_head(const BinaryOpSpec& op, double hp, double p, double m, double c, const ExtReal& mu_a) {
  const double v = hp + m * (c - p);
  return op(ExtReal::from_double(v > 0 ? v : 0.0), mu_a);
}

enum class ConcaveVariant { in99, l1, comonotone };

/// Sugeno upper bounds for concave H given the inner Sugeno integral
/// `tail`: Su((m(f-p))^+) for in99, Su(m^+ f) for l1 (unused for the
/// comonotone variant).
inline ExtReal upper_concave_sugeno(const PiecewiseMap& h, const ExtReal& p, const ExtReal& mu_a, double m,
                                    const ExtReal& tail, ConcaveVariant v) {
  const double x = detail::finite_p(p);
  const double hp = h(x);
  if (v == ConcaveVariant::in99) return min(detail::hval(hp), mu_a) + tail;
  const double head = std::max(0.0, hp - x * m);
  if (v == ConcaveVariant::l1) return min(ExtReal(head), mu_a) + tail;
  return min(ExtReal(head), mu_a) + min(ExtReal::from_double(std::max(m, 0.0)), p);
}

/// H(p) mu(A) + ((H'(p))^+ - H'(p) mu(A)) p, arranged to stay in [0, inf].
inline ExtReal upper_shilkret_concave(const PiecewiseMap& h, const ExtReal& p, const ExtReal& mu_a, double dh) {
  const double x = detail::finite_p(p);
  const double base = std::max(0.0, h(x) - dh * x);
  return mu_a * ExtReal(base) + ExtReal(std::max(dh, 0.0) * x);
}

/// Right side of the refuted upper bound m/(m+1) (b - p) + H(p)/(m+1).
inline double refuted_nn1_rhs(const PiecewiseMap& h, double p, double m, double b) {
  return m / (m + 1) * (b - p) + h(p) / (m + 1);
}

// ---------------------------------------------------------------------------
// Instance-level checking

/// A bound-checking instance: either a discrete (measure, A, f) or an
/// interval instance, plus the transform and operations.
struct BoundInstance {
  std::optional<MonotoneMeasure> mu;
  Subset a;
  SignedFunction f;
  std::optional<IntervalInstance> interval;

  PiecewiseMap h = PiecewiseMap::identity();
  BinaryOpSpec op = ops::min_op();
  std::optional<BinaryOpSpec> companion;  // the op defining p in tw4
  std::optional<BinaryOpSpec> aux;        // fuzzy conjunction (qint) or semicopula (seminormed)
  MixedOpSpec star = ops::plus();
  std::optional<double> slope;    // support slope override
  std::optional<double> c_pivot;  // peak of a unimodal H
  std::optional<double> a0;       // minimizer of a quasiconvex H / start of monotone range
  std::optional<std::vector<double>> c_grid;
  double profile_tol = 1e-10;

  bool discrete() const { return mu.has_value(); }
};

struct CheckOptions {
  double tol = 1e-9;
};

/// Canonical bound ids; aliases map to these.
inline const std::vector<std::string>& bound_ids() {
  static const std::vector<std::string> ids{
      "tw1i", "tw1ii", "flo",  "convex", "shilkret", "qint", "seminormed", "tw2i",        "tw2ii",
      "co2",  "ss1",   "ss2",  "ss3",    "ss4",      "noo1", "in3a",       "tw4",         "in99",
      "l1",   "comono", "in80", "001",   "mixed_lower", "mixed_upper", "jensen_claim", "nn1"};
  return ids;
}

inline std::string canonical_bound_id(std::string_view id) {
  static const std::array<std::pair<std::string_view, std::string_view>, 10> aliases{{{"in1", "tw1i"},
                                                                                      {"in2", "tw1ii"},
                                                                                      {"in2a", "convex"},
                                                                                      {"pp1", "shilkret"},
                                                                                      {"in3", "tw2i"},
                                                                                      {"in4", "tw2ii"},
                                                                                      {"in8", "tw4"},
                                                                                      {"comonotone", "comono"},
                                                                                      {"mixed", "mixed_lower"},
                                                                                      {"jensen", "jensen_claim"}}};
  for (const auto& [a, c] : aliases)
    if (id == a) return std::string(c);
  for (const auto& c : bound_ids())
    if (id == c) return c;
  throw Error(ErrorKind::invalid_input, "unknown bound id '" + std::string(id) + "'");
}

namespace detail {

/// Integration and measure facts over either kind of instance.
class Setting {
public:
  explicit Setting(const BoundInstance& in) : in_(in) {
    if (in.discrete() == in.interval.has_value()) {
      throw Error(ErrorKind::invalid_input, "instance needs exactly one of a discrete measure or an interval setup");
    }
    if (in.discrete()) {
      check_function(*in.mu, in.f.size());
      in.mu->space().check(in.a);
    }
  }

  bool discrete() const { return in_.discrete(); }

  ExtReal mu_a() const { return discrete() ? (*in_.mu)(in_.a) : in_.interval->measure_of_a(); }

  bool nonnegative_f() const {
    if (discrete()) {
      for (std::size_t i = 0; i < in_.f.size(); ++i)
        if (in_.f[i].sign() < 0) return false;
      return true;
    }
    return in_.interval->f_range().inf >= 0;
  }

  /// Integral of k(f) for f >= 0.
  ExtReal integral(const BinaryOpSpec& op, const PiecewiseMap& k) const {
    if (discrete()) {
      if (!nonnegative_f()) throw Error(ErrorKind::domain, "f takes negative values; use a signed bound");
      const DiscreteFunction g = parts().pos.map([&](const ExtReal& x) { return k.eval(x); });
      return generalized_integral(op, *in_.mu, in_.a, g).value;
    }
    return integrate_profile(op, profile_of(*in_.interval, k), in_.profile_tol).value;
  }
  ExtReal integral_pos(const BinaryOpSpec& op, const PiecewiseMap& k) const {
    if (discrete()) {
      return generalized_integral(op, *in_.mu, in_.a, parts().pos.map([&](const ExtReal& x) { return k.eval(x); }))
          .value;
    }
    return integrate_profile(op, positive_part_profile(*in_.interval, k), in_.profile_tol).value;
  }
  ExtReal integral_neg(const BinaryOpSpec& op, const PiecewiseMap& k) const {
    if (discrete()) {
      return generalized_integral(op, *in_.mu, in_.a, parts().neg.map([&](const ExtReal& x) { return k.eval(x); }))
          .value;
    }
    return integrate_profile(op, negative_part_profile(*in_.interval, k), in_.profile_tol).value;
  }
  /// Integral of k(f) for a nonnegative k on the real line.
  ExtReal integral_real(const BinaryOpSpec& op, const PiecewiseMap& k) const {
    if (discrete()) {
      std::vector<ExtReal> v;
      for (const auto& x : in_.f.values()) v.push_back(hval(k(x.to_double())));
      return generalized_integral(op, *in_.mu, in_.a, DiscreteFunction(std::move(v))).value;
    }
    return integrate_profile(op, profile_of(*in_.interval, k), in_.profile_tol).value;
  }

  double f_max() const {
    if (!discrete()) return in_.interval->f_range().sup;
    double r = -kInf;
    for (std::size_t i = 0; i < in_.f.size(); ++i)
      if (in_.a.contains(static_cast<int>(i))) r = std::max(r, in_.f[i].to_double());
    return r;
  }

  Hypothesis weakly_subadditive() const {
    if (!discrete()) return family_fact("weakly_subadditive", verify::properties(in_.interval->family).subadditive);
    const auto r = verify::is_weakly_subadditive(*in_.mu, in_.a);
    return {"weakly_subadditive", r.holds, r.holds ? "" : "violated at B=" + std::to_string(r.b->bits)};
  }
  Hypothesis weakly_superadditive() const {
    if (!discrete()) return family_fact("weakly_superadditive", verify::properties(in_.interval->family).superadditive);
    const auto r = verify::is_weakly_superadditive(*in_.mu, in_.a);
    return {"weakly_superadditive", r.holds, r.holds ? "" : "violated at B=" + std::to_string(r.b->bits)};
  }
  Hypothesis subadditive() const {
    if (!discrete()) return family_fact("subadditive", verify::properties(in_.interval->family).subadditive);
    const auto r = verify::is_subadditive(*in_.mu);
    return {"subadditive", r.holds, r.holds ? "" : pair_detail(r)};
  }
  Hypothesis superadditive() const {
    if (!discrete()) return family_fact("superadditive", verify::properties(in_.interval->family).superadditive);
    const auto r = verify::is_superadditive(*in_.mu);
    return {"superadditive", r.holds, r.holds ? "" : pair_detail(r)};
  }
  Hypothesis continuous_measure() const {
    if (discrete()) return {"measure_continuous", true, "finite space"};
    return family_fact("measure_continuous", verify::properties(in_.interval->family).continuous);
  }

private:
  static Hypothesis family_fact(std::string name, bool holds) {
    return {std::move(name), holds, holds ? "closed-form family" : "fails for this family"};
  }
  static std::string pair_detail(const verify::PredicateResult& r) {
    return "violated at B=" + std::to_string(r.b->bits) + ", C=" + std::to_string(r.c->bits);
  }
  const SignedParts& parts() const {
    if (!parts_) parts_ = split_parts(in_.f);
    return *parts_;
  }

  const BoundInstance& in_;
  mutable std::optional<SignedParts> parts_;
};

inline Hypothesis flag_hyp(const BinaryOpSpec& op, const char* name, bool value) {
  return {std::string("op_") + name, value, value ? "" : "'" + op.name + "' does not declare " + name};
}

inline void add_op_hyps(std::vector<Hypothesis>& hs, const BinaryOpSpec& op, bool left, bool right) {
  hs.push_back(flag_hyp(op, "nondecreasing", op.flags.nondecreasing));
  hs.push_back(flag_hyp(op, "zero_absorbing", op.flags.zero_absorbing));
  if (left) hs.push_back(flag_hyp(op, "left_cont_first", op.flags.left_cont_first));
  if (right) hs.push_back(flag_hyp(op, "right_cont_first", op.flags.right_cont_first));
}

inline Hypothesis finite_hyp(const char* name, const ExtReal& v) {
  return {std::string(name) + "_finite", v.is_finite(), v.is_finite() ? "" : "value is infinite"};
}

inline Hypothesis nonneg_h(const PiecewiseMap& h) {
  const double lo = h.inf_all();
  return {"h_nonneg", lo >= 0, lo >= 0 ? "" : "inf H = " + std::to_string(lo)};
}

/// Sampled convexity (sign=+1) or concavity (sign=-1) on [lo, hi], with
/// continuity at interior segment boundaries.
inline bool shape_on(const PiecewiseMap& h, double lo, double hi, int sign) {
  std::vector<double> xs;
  const int n = 512;
  for (int i = 0; i <= n; ++i) xs.push_back(lo + (hi - lo) * i / n);
  for (double b : h.boundaries())
    if (b > lo && b < hi) {
      if (!h.left_continuous_at(b, 1e-9) || !h.right_continuous_at(b, 1e-9)) return false;
      xs.push_back(b);
    }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (std::size_t i = 0; i + 2 < xs.size(); ++i) {
    const double s1 = (h(xs[i + 1]) - h(xs[i])) / (xs[i + 1] - xs[i]);
    const double s2 = (h(xs[i + 2]) - h(xs[i + 1])) / (xs[i + 2] - xs[i + 1]);
    if (sign * (s2 - s1) < -1e-7 * (1 + std::fabs(s1) + std::fabs(s2))) return false;
  }
  return true;
}

inline double sample_range(const PiecewiseMap& h, double p, double fmax) {
  double r = std::max({4 * p + 4, 1.5 * h.last_finite_point(), 1.0});
  if (std::isfinite(fmax)) r = std::max(r, fmax);
  return r;
}

struct Slope {
  double m = 0.0;
  bool valid = false;
  std::string detail;
};

/// Slope of a support line of H at p, validated as H(y) <= H(p) + m (y - p)
/// on a grid of [0, hi] plus H's boundaries.
inline Slope support_at(const PiecewiseMap& h, double p, std::optional<double> slope, double hi) {
  Slope s;
  if (slope) {
    s.m = *slope;
  } else if (p > 0) {
    s.m = (h.left_derivative(p) + h.right_derivative(p)) / 2;
  } else {
    s.m = h.right_derivative(p);
  }
  if (!std::isfinite(s.m)) {
    s.detail = "no finite support slope at p";
    return s;
  }
  const double hp = h(p);
  std::vector<double> ys;
  for (int i = 0; i <= 1000; ++i) ys.push_back(hi * i / 1000);
  for (double b : h.boundaries()) ys.push_back(b);
  for (double y : ys) {
    if (y < 0) continue;
    const double line = hp + s.m * (y - p);
    if (h(y) > line + 1e-9 * (1 + std::fabs(line))) {
      s.detail = "support line fails at y=" + std::to_string(y);
      return s;
    }
  }
  s.valid = true;
  return s;
}

inline double diff(const SignedExtReal& a, const SignedExtReal& b) {
  const double x = a.to_double(), y = b.to_double();
  if (std::isinf(x) && x == y) return 0.0;
  return x - y;
}

}  // namespace detail

/// Evaluates one bound on one instance: lhs, rhs, hypotheses and slack.
/// Hypothesis failures never stop evaluation, unless a side becomes
/// undefined; the report is then marked as not evaluated.
inline BoundReport check_bound(const BoundInstance& in, std::string_view raw_id, const CheckOptions& opt = {}) {
  using detail::hval;
  const std::string id = canonical_bound_id(raw_id);
  const detail::Setting s(in);
  const BinaryOpSpec su = ops::min_op();
  const PiecewiseMap ident = PiecewiseMap::identity();
  const PiecewiseMap& h = in.h;

  BoundReport r;
  r.id = id;
  auto& hs = r.hypotheses;
  const ExtReal mu_a = s.mu_a();
  r.details.emplace_back("mu_a", mu_a.to_double());

  const bool signed_bound = id == "001" || id == "mixed_lower" || id == "mixed_upper";
  if (!signed_bound && h.domain() != Domain::nonneg) {
    throw Error(ErrorKind::invalid_input, "bound '" + id + "' needs a transform on [0, inf]");
  }
  if (signed_bound && h.domain() != Domain::real) {
    throw Error(ErrorKind::invalid_input, "bound '" + id + "' needs a transform on the real line");
  }

  auto sugeno_p = [&] {
    const ExtReal p = s.integral(su, ident);
    r.details.emplace_back("p", p.to_double());
    hs.push_back(detail::finite_hyp("p", p));
    return p;
  };
  auto theorem_setup = [&](Direction d) {
    r.direction = d;
    hs.push_back(detail::nonneg_h(h));
    const ExtReal p = sugeno_p();
    r.lhs = s.integral(in.op, h);
    return BoundInputs{p, mu_a, h, in.op};
  };

  try {
    if (id == "tw1i" || id == "tw1ii" || id == "tw2i" || id == "tw2ii") {
      const bool lower = id[2] == '1';
      const BoundInputs b = theorem_setup(lower ? Direction::lower : Direction::upper);
      detail::add_op_hyps(hs, in.op, lower, !lower);
      if (id == "tw1ii") hs.push_back(s.weakly_subadditive());
      if (id == "tw2ii") hs.push_back(s.weakly_superadditive());
      r.rhs = id == "tw1i" ? lower_tw1_i(b) : id == "tw1ii" ? lower_tw1_ii(b) : id == "tw2i" ? upper_tw2_i(b) : upper_tw2_ii(b);
    } else if (id == "ss1" || id == "ss2" || id == "ss3" || id == "ss4") {
      const int which = id[2] - '0';
      const BoundInputs b = theorem_setup(which % 2 == 1 ? Direction::lower : Direction::upper);
      detail::add_op_hyps(hs, in.op, false, false);
      hs.push_back(s.continuous_measure());
      if (which == 3) hs.push_back(s.weakly_subadditive());
      if (which == 4) hs.push_back(s.weakly_superadditive());
      r.rhs = bounds_tw3(b, which);
    } else if (id == "noo1" || id == "in3a") {
      const bool lower = id == "noo1";
      const BoundInputs b = theorem_setup(lower ? Direction::lower : Direction::upper);
      detail::add_op_hyps(hs, in.op, lower, !lower);
      hs.push_back(lower ? s.subadditive() : s.superadditive());
      const bool cont = h.continuous(1e-9);
      hs.push_back({"h_continuous", cont, ""});
      if (!lower) {
        const bool qc = h.quasiconcave_pivot().has_value();
        hs.push_back({"h_quasiconcave", qc, ""});
      }
      r.rhs = lower ? remark_noo1(b) : remark_in3a(b);
    } else if (id == "flo" || id == "convex" || id == "jensen_claim") {
      r.direction = Direction::lower;
      hs.push_back(detail::nonneg_h(h));
      const ExtReal p = sugeno_p();
      r.lhs = s.integral(su, h);
      const double px = detail::finite_p(p);
      if (id == "flo") {
        hs.push_back({"h_nondecreasing", h.nondecreasing(), ""});
        hs.push_back({"h_left_continuous_at_p", h.left_continuous_at(px, 1e-9), ""});
        r.rhs = lower_sugeno_monotone(h, p);
      } else {
        const bool convex = detail::shape_on(h, 0.0, detail::sample_range(h, px, s.f_max()), +1);
        hs.push_back({"h_convex", convex, convex ? "" : "sampled convexity fails"});
        if (id == "convex") {
          const std::optional<double> a = in.a0 ? in.a0 : h.quasiconvex_pivot(1e-12);
          hs.push_back({"h_attains_infimum", a.has_value(), a ? "a=" + std::to_string(*a) : "no minimizer found"});
          const bool right = a && px >= *a;
          hs.push_back({"p_at_least_minimizer", right, ""});
          if (a) r.details.emplace_back("a", *a);
          r.rhs = lower_sugeno_monotone(h, p);
        } else {
          r.rhs = hval(h(px));
        }
      }
    } else if (id == "shilkret") {
      r.direction = Direction::lower;
      hs.push_back(detail::nonneg_h(h));
      const ExtReal p = sugeno_p();
      r.lhs = s.integral(ops::product(), h);
      const double px = detail::finite_p(p);
      hs.push_back({"h_nondecreasing", h.nondecreasing(), ""});
      hs.push_back({"h_left_continuous_at_p", h.left_continuous_at(px, 1e-9), ""});
      hs.push_back(detail::finite_hyp("mu_a", mu_a));
      r.rhs = lower_shilkret(h, p);
    } else if (id == "qint" || id == "seminormed") {
      r.direction = Direction::lower;
      const bool q = id == "qint";
      const BinaryOpSpec base = in.aux ? *in.aux : ops::unit_min();
      const BinaryOpSpec circ = q ? fuzzy_conjunction_to_circ(base) : semicopula_to_circ(base);
      const ExtReal p = s.integral(circ, ident);
      r.details.emplace_back("p", p.to_double());
      r.lhs = s.integral(circ, h);
      const double px = detail::finite_p(p);
      hs.push_back({"measure_unit_range", mu_a <= ExtReal(1.0), ""});
      hs.push_back({"f_unit_range", s.f_max() <= 1.0, ""});
      const Extrema hr = h.extrema(0.0, 1.0);
      hs.push_back({"h_unit_range", hr.inf >= 0 && hr.sup <= 1.0, ""});
      if (q) {
        if (s.discrete()) {
          const bool whole = in.a == in.mu->space().full();
          hs.push_back({"a_is_whole_space", whole, ""});
        }
        hs.push_back(detail::flag_hyp(base, "left_cont_second", base.flags.left_cont_second));
        const std::optional<double> a = in.a0 ? in.a0 : h.quasiconvex_pivot(1e-12);
        hs.push_back({"h_quasiconvex", a.has_value(), ""});
        const double a_val = a.value_or(0.0);
        hs.push_back({"p_at_least_minimizer", px >= a_val, ""});
        r.details.emplace_back("a0", a_val);
        // The underlying lower bound uses H(p_-) ^ inf H([p, 1]); past a0 that
        // is H(p_-), but at p = a0 a downward jump makes H(p_-) > H(p).
        const double left = h.limits(px).lower_left;
        hs.push_back({"h_left_limit_at_most_h_p", left <= h(px) || (std::isfinite(left) && left <= h(px) + 1e-12 * (1 + std::fabs(left))),
                      "H(p_-) = " + std::to_string(left) + ", H(p) = " + std::to_string(h(px))});
        r.rhs = base(p, hval(left));
      } else {
        hs.push_back(detail::flag_hyp(base, "left_cont_first", base.flags.left_cont_first));
        const double a_val = in.a0.value_or(0.0);
        const Interval range{a_val, 1.0, true, true};
        bool lc = true;
        for (double b : h.boundaries())
          if (b > a_val && b <= 1.0 && !h.left_continuous_at(b, 1e-9)) lc = false;
        hs.push_back({"h_nondecreasing_on_range", h.nondecreasing_on(range), ""});
        hs.push_back({"h_left_continuous_on_range", lc, ""});
        hs.push_back({"p_at_least_a0", px >= a_val, ""});
        r.details.emplace_back("a0", a_val);
        r.rhs = base(hval(h(px)), p);
      }
    } else if (id == "co2") {
      r.direction = Direction::upper;
      hs.push_back(detail::nonneg_h(h));
      const ExtReal p = sugeno_p();
      r.lhs = s.integral(su, h);
      const double px = detail::finite_p(p);
      hs.push_back({"h_continuous", h.continuous(1e-9), ""});
      const std::optional<double> c = in.c_pivot ? in.c_pivot : h.quasiconcave_pivot(1e-12);
      bool unimodal = c.has_value();
      if (c && in.c_pivot) {
        unimodal = h.nondecreasing_on({0.0, *c, true, true}) && h.nonincreasing_on({*c, kInf, true, true});
      }
      hs.push_back({"h_unimodal", unimodal, c ? "c=" + std::to_string(*c) : "no peak found"});
      const double cv = c.value_or(0.0);
      r.details.emplace_back("c", cv);
      if (px > cv) hs.push_back(s.weakly_superadditive());
      const ExtReal hp = hval(h(px)), hc = hval(h(cv));
      r.rhs = px <= cv ? min(min(max(hp, p), hc), mu_a) : min(min(max(hp, mu_a - p), hc), mu_a);
    } else if (id == "tw4") {
      r.direction = Direction::upper;
      hs.push_back(detail::nonneg_h(h));
      const BinaryOpSpec comp = in.companion ? *in.companion : in.op;
      detail::add_op_hyps(hs, in.op, false, false);
      hs.push_back(detail::flag_hyp(in.op, "subdistributive_add", in.op.flags.subdistributive_add));
      hs.push_back(detail::flag_hyp(comp, "nondecreasing", comp.flags.nondecreasing));
      const ExtReal p = s.integral(comp, ident);
      r.details.emplace_back("p", p.to_double());
      hs.push_back(detail::finite_hyp("p", p));
      const double px = detail::finite_p(p);
      r.lhs = s.integral(in.op, h);
      const double fmax = s.f_max();
      const detail::Slope sl = detail::support_at(h, px, in.slope, detail::sample_range(h, px, fmax));
      hs.push_back({"support_line", sl.valid, sl.detail});
      r.details.emplace_back("m_p", sl.m);
      const double m = sl.m, hp = h(px);
      auto g = [&](double c) {
        return liapunov_head(in.op, hp, px, m, c, mu_a) + s.integral(in.op, PiecewiseMap::positive_affine(m, c));
      };
      std::vector<double> grid;
      if (in.c_grid) {
        grid = *in.c_grid;
      } else {
        const double scale = std::max(1.0, std::fabs(m));
        const double lo = -2 * (mu_a.is_finite() ? mu_a.value() : std::max(1.0, std::isfinite(fmax) ? fmax : px)) * scale;
        const double hi = std::isfinite(fmax) ? std::max(fmax, lo + 1) : 2 * px + 1;
        for (int i = 0; i <= 256; ++i) grid.push_back(lo + (hi - lo) * i / 256);
      }
      if (grid.empty()) throw Error(ErrorKind::invalid_input, "empty c grid");
      std::vector<ExtReal> vals;
      for (double c : grid) vals.push_back(g(c));
      std::size_t best = 0;
      for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] < vals[best]) best = i;
      double c_best = grid[best];
      ExtReal v_best = vals[best];
      if (!in.c_grid && grid.size() >= 3 && v_best.is_finite()) {
        // golden-section refinement inside the neighbouring grid cells
        double a = grid[best == 0 ? 0 : best - 1], b = grid[std::min(best + 1, grid.size() - 1)];
        const double ratio = (std::sqrt(5.0) - 1) / 2;
        double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
        ExtReal g1 = g(x1), g2 = g(x2);
        for (int it = 0; it < 20; ++it) {
          if (g1 <= g2) {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - ratio * (b - a);
            g1 = g(x1);
          } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + ratio * (b - a);
            g2 = g(x2);
          }
          if (g1 < v_best) {
            v_best = g1;
            c_best = x1;
          }
          if (g2 < v_best) {
            v_best = g2;
            c_best = x2;
          }
        }
      }
      r.details.emplace_back("c_min", c_best);
      r.rhs = v_best;
    } else if (id == "in99" || id == "l1" || id == "comono" || id == "nn1") {
      r.direction = Direction::upper;
      hs.push_back(detail::nonneg_h(h));
      const ExtReal p = sugeno_p();
      const double px = detail::finite_p(p);
      r.lhs = s.integral(su, h);
      const double fmax = s.f_max();
      const detail::Slope sl = detail::support_at(h, px, in.slope, detail::sample_range(h, px, fmax));
      hs.push_back({"support_line", sl.valid, sl.detail});
      const double m = sl.m;
      r.details.emplace_back("m_p", m);
      if (id == "in99") {
        r.rhs = upper_concave_sugeno(h, p, mu_a, m, s.integral(su, PiecewiseMap::positive_affine(m, px)),
                                     ConcaveVariant::in99);
      } else if (id == "l1") {
        r.rhs = upper_concave_sugeno(h, p, mu_a, m, s.integral(su, PiecewiseMap::positive_affine(std::max(m, 0.0), 0.0)),
                                     ConcaveVariant::l1);
      } else if (id == "comono") {
        hs.push_back({"slope_in_unit_interval", m > 0 && m <= 1, ""});
        hs.push_back({"f_unit_range", fmax <= 1.0, ""});
        r.rhs = upper_concave_sugeno(h, p, mu_a, m, ExtReal(), ConcaveVariant::comonotone);
      } else {
        hs.push_back({"slope_positive", m > 0, ""});
        r.details.emplace_back("b", fmax);
        r.rhs = SignedExtReal(refuted_nn1_rhs(h, px, m, fmax));
      }
    } else if (id == "in80") {
      r.direction = Direction::upper;
      hs.push_back(detail::nonneg_h(h));
      const ExtReal p = s.integral(ops::product(), ident);
      r.details.emplace_back("p", p.to_double());
      hs.push_back(detail::finite_hyp("p", p));
      const double px = detail::finite_p(p);
      r.lhs = s.integral(ops::product(), h);
      const detail::Slope sl = detail::support_at(h, px, in.slope, detail::sample_range(h, px, s.f_max()));
      hs.push_back({"support_line", sl.valid, sl.detail});
      bool diff = true;
      if (!in.slope && px > 0) diff = std::fabs(h.left_derivative(px) - h.right_derivative(px)) <= 1e-9;
      hs.push_back({"h_differentiable_at_p", diff, ""});
      r.details.emplace_back("dh", sl.m);
      r.rhs = upper_shilkret_concave(h, p, mu_a, sl.m);
    } else if (id == "001") {
      r.direction = Direction::upper;
      const ExtReal p1 = s.integral_pos(su, ident), p2 = s.integral_neg(su, ident);
      r.details.emplace_back("p1", p1.to_double());
      r.details.emplace_back("p2", p2.to_double());
      hs.push_back(detail::finite_hyp("p1", p1));
      hs.push_back(detail::finite_hyp("p2", p2));
      const bool zero = h(0.0) == 0.0;
      const bool nd = h.nondecreasing();
      hs.push_back({"h_zero_at_zero", zero, ""});
      hs.push_back({"h_nondecreasing", nd, ""});
      hs.push_back({"p1_at_most_sup_h", p1.to_double() <= h.sup_all(), ""});
      hs.push_back(s.continuous_measure());
      hs.push_back({"star_nondecreasing", in.star.nondecreasing, ""});
      const PiecewiseMap h1 = h.half_line(+1), h2 = h.half_line(-1, -1.0);
      const ExtReal i1 = s.integral_pos(su, h1), i2 = s.integral_neg(su, h2);
      r.details.emplace_back("integral_h1", i1.to_double());
      r.details.emplace_back("integral_h2", i2.to_double());
      r.lhs = join_parts(in.star, i1, i2);
      r.rhs = upper_bound_001(h, p1, p2, mu_a, in.star);
    } else if (id == "mixed_lower" || id == "mixed_upper") {
      const bool lower = id == "mixed_lower";
      r.direction = lower ? Direction::lower : Direction::upper;
      const bool zero = h(0.0) == 0.0;
      const bool shape = h.nonincreasing_on({-kInf, 0.0, true, true}) && h.nondecreasing_on({0.0, kInf, true, true});
      hs.push_back({"h_zero_at_zero", zero, ""});
      hs.push_back({"h_valley_at_zero", shape, ""});
      if (!lower) hs.push_back(s.subadditive());
      r.lhs = s.integral_real(su, h);
      const ExtReal u = s.integral_pos(su, h.half_line(+1)), v = s.integral_neg(su, h.half_line(-1));
      r.details.emplace_back("integral_pos", u.to_double());
      r.details.emplace_back("integral_neg", v.to_double());
      r.rhs = lower ? max(u, v) : u + v;
    } else {
      throw Error(ErrorKind::invalid_input, "unhandled bound id '" + id + "'");
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::domain || r.hypotheses_hold()) throw;
    r.evaluated = false;
    r.note = e.what();
    r.holds = false;
    r.slack = std::numeric_limits<double>::quiet_NaN();
    return r;
  }

  r.slack = r.direction == Direction::lower ? detail::diff(r.lhs, r.rhs) : detail::diff(r.rhs, r.lhs);
  r.holds = r.slack >= -opt.tol;
  return r;
}

}  // namespace sugeno
