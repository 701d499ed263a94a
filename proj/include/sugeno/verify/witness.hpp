#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sugeno/bounds.hpp"
#include "sugeno/measure.hpp"
#include "sugeno/piecewise.hpp"

namespace sugeno::verify {

/// Outcome of a witness construction: an instance on which the bound
/// should hold with equality, or the side condition that failed.
struct Witness {
  bool ok = false;
  std::string reason;
  std::optional<BoundInstance> instance;
};

inline const std::vector<std::string>& witness_ids() {
  static const std::vector<std::string> ids{"tw1i", "tw1ii", "tw2i", "tw2ii", "ss1", "ss2", "ss3", "ss4", "001"};
  return ids;
}

namespace detail {

inline bool same(double x, double y) {
  if (x == y) return true;
  if (!std::isfinite(x) || !std::isfinite(y)) return false;
  return std::fabs(x - y) <= 1e-12 * (1 + std::fabs(x) + std::fabs(y));
}

/// Points where a piecewise-monotone H can attain an extremum: 0 and the
/// segment boundaries.
inline std::vector<double> extremum_candidates(const PiecewiseMap& h) {
  std::vector<double> c{0.0};
  for (double b : h.boundaries())
    if (std::isfinite(b) && b > 0) c.push_back(b);
  return c;
}

inline Witness fail(std::string why) { return {false, std::move(why), std::nullopt}; }

inline BoundInstance indicator_instance(const MonotoneMeasure& mu, Subset a, const PiecewiseMap& h,
                                        const BinaryOpSpec& op, double level) {
  std::vector<SignedExtReal> v;
  for (int i = 0; i < mu.space().size(); ++i) v.emplace_back(a.contains(i) ? level : 0.0);
  BoundInstance in;
  in.mu = mu;
  in.a = a;
  in.f = SignedFunction(std::move(v));
  in.h = h;
  in.op = op;
  return in;
}

}  // namespace detail

/// Builds the equality witness of bound `id` for (mu, A, H, op):
///  - tw1i, ss1, tw2ii, ss4: f = mu(A) 1_A, with H(p) = inf H([p, inf])
///    (lower bounds) or H(p) = sup H([p, inf]) (upper bounds), p = mu(A);
///    tw1i and tw2ii also need H left-continuous at p.
///  - tw1ii, ss3, tw2i, ss2: f = y0 1_A with H(y0) = inf H (lower) or
///    sup H (upper), and H(p) = inf / sup of H on [0, p], p = y0 ^ mu(A);
///    tw1ii also needs H right-continuous at p. y0 is searched over H's
///    segment boundaries.
///  - 001: f = mu(B) 1_B - mu(A \ B) 1_{A \ B} with H(mu(B)) = mu(B); a
///    nonempty B is preferred, B = {} always qualifies.
inline Witness attainability_witness(std::string_view raw_id, const MonotoneMeasure& mu, Subset a,
                                     const PiecewiseMap& h, const BinaryOpSpec& op = ops::min_op(),
                                     const MixedOpSpec& star = ops::plus()) {
  using detail::same;
  const std::string id = canonical_bound_id(raw_id);
  const ExtReal mu_a = mu(a);
  if (mu_a.is_inf()) return detail::fail("mu(A) is infinite");
  const double m = mu_a.value();

  if (id == "tw1i" || id == "ss1" || id == "tw2ii" || id == "ss4") {
    if (h.domain() != Domain::nonneg) return detail::fail("H must act on [0, inf]");
    const bool lower = id == "tw1i" || id == "ss1";
    const Extrema tail = h.extrema(m, kInf);
    const double hp = h(m);
    if (lower && !same(hp, tail.inf)) return detail::fail("H(p) != inf H([p, inf])");
    if (!lower && !same(hp, tail.sup)) return detail::fail("H(p) != sup H([p, inf])");
    if ((id == "tw1i" || id == "tw2ii") && !h.left_continuous_at(m, 1e-12)) {
      return detail::fail("H not left-continuous at p");
    }
    return {true, "", detail::indicator_instance(mu, a, h, op, m)};
  }

  if (id == "tw1ii" || id == "ss3" || id == "tw2i" || id == "ss2") {
    if (h.domain() != Domain::nonneg) return detail::fail("H must act on [0, inf]");
    const bool lower = id == "tw1ii" || id == "ss3";
    const double target = lower ? h.inf_all() : h.sup_all();
    if (!std::isfinite(target)) return detail::fail("extremum of H is infinite");
    std::string last = "H does not attain its extremum";
    for (double y0 : detail::extremum_candidates(h)) {
      if (!same(h(y0), target)) continue;
      const double p = std::min(y0, m);
      const Extrema head = h.extrema(0.0, p);
      if (!same(h(p), lower ? head.inf : head.sup)) {
        last = "H(p) is not the extremum of H on [0, p]";
        continue;
      }
      if (id == "tw1ii" && !h.right_continuous_at(p, 1e-12)) {
        last = "H not right-continuous at p";
        continue;
      }
      return {true, "", detail::indicator_instance(mu, a, h, op, y0)};
    }
    return detail::fail(last);
  }

  if (id == "001") {
    if (h.domain() != Domain::real) return detail::fail("H must act on the real line");
    std::optional<Subset> chosen;
    for (std::uint32_t s = a.bits;; s = (s - 1) & a.bits) {
      const Subset b{s};
      const ExtReal mb = mu(b);
      if (mb.is_finite() && same(h(mb.value()), mb.value())) {
        chosen = b;
        break;  // submasks descend, so the first hit is the largest mask
      }
      if (s == 0) break;
    }
    if (!chosen) return detail::fail("no B with H(mu(B)) = mu(B)");
    const Subset b = *chosen;
    const Subset rest{a.bits & ~b.bits};
    const ExtReal mr = mu(rest);
    if (mr.is_inf()) return detail::fail("mu(A \\ B) is infinite");
    std::vector<SignedExtReal> v;
    for (int i = 0; i < mu.space().size(); ++i) {
      if (b.contains(i)) v.emplace_back(mu(b).value());
      else if (rest.contains(i)) v.emplace_back(-mr.value());
      else v.emplace_back(0.0);
    }
    BoundInstance in;
    in.mu = mu;
    in.a = a;
    in.f = SignedFunction(std::move(v));
    in.h = h;
    in.op = op;
    in.star = star;
    return {true, "", in};
  }
  return detail::fail("bound '" + id + "' has no equality clause");
}

}  // namespace sugeno::verify
