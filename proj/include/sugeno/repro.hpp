#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sugeno/bounds.hpp"
#include "sugeno/io/json.hpp"

namespace sugeno::repro {

using nlohmann::json;

/// One expected value. Boolean expectations use 1 / 0 with tol 0.
struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tol = 0.0;
  std::string reference;  // the value as displayed in the source, or how it was derived
  bool passed = false;
};

struct FixtureResult {
  std::string id;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::vector<json> instances;
  double seconds = 0.0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline const std::vector<std::string>& fixture_ids() {
  static const std::vector<std::string> ids{"ex2_4", "cex2_6", "ex2_9", "ex2_10", "sec3", "sec4_1", "sec4_2", "remark_nn1"};
  return ids;
}

namespace detail {

class Recorder {
public:
  explicit Recorder(FixtureResult& r) : r_(r) {}

  void near(std::string name, double actual, double expected, double tol, std::string ref) {
    const bool ok = (actual == expected) || std::fabs(actual - expected) <= tol;
    r_.checks.push_back({std::move(name), expected, actual, tol, std::move(ref), ok});
  }
  void exact(std::string name, double actual, double expected, std::string ref) {
    near(std::move(name), actual, expected, 0.0, std::move(ref));
  }
  void truth(std::string name, bool actual, bool expected, std::string ref) {
    r_.checks.push_back({std::move(name), expected ? 1.0 : 0.0, actual ? 1.0 : 0.0, 0.0, std::move(ref), actual == expected});
  }
  void within(std::string name, double actual, double lo, double hi, std::string ref) {
    const bool ok = actual >= lo && actual <= hi;
    r_.checks.push_back({std::move(name), (lo + hi) / 2, actual, (hi - lo) / 2, std::move(ref), ok});
  }

private:
  FixtureResult& r_;
};

inline double d(const BoundReport& r, const char* key) { return r.detail(key).value_or(std::nan("")); }

inline BoundInstance interval_case(IntervalFamily fam, Interval a, PiecewiseMap f, PiecewiseMap h) {
  BoundInstance in;
  in.interval = IntervalInstance{fam, a, std::move(f)};
  in.h = std::move(h);
  return in;
}

/// x^k on the real line.
inline PiecewiseMap real_power(double k) {
  return PiecewiseMap({{{-kInf, kInf, true, true}, Expr::power(1.0, k), Mono::inc}}, Domain::real);
}

}  // namespace detail

/// Counting measure on five points, f = i, H = x^2/3.
inline BoundInstance ex2_4_instance() {
  BoundInstance in;
  in.mu = MonotoneMeasure::counting(FiniteSpace(5));
  in.a = FiniteSpace(5).full();
  in.f = SignedFunction{1, 2, 3, 4, 5};
  in.h = PiecewiseMap::quadratic(0.0, 0.0, 1.0 / 3);
  return in;
}

/// Lebesgue measure on [0,5], f = x, phi = (x - 0.5)^2.
inline BoundInstance cex2_6_instance() {
  return detail::interval_case(IntervalFamily::lebesgue(), Interval::closed(0, 5), PiecewiseMap::identity(Domain::real),
                               PiecewiseMap::quadratic(0.25, -1.0, 1.0));
}

/// lambda^q on [0,1], f = x^q, H = x^(1/q).
inline BoundInstance ex2_9_instance(double q) {
  return detail::interval_case(IntervalFamily::power(q), Interval::closed(0, 1), PiecewiseMap::power(1.0, q),
                               PiecewiseMap::power(1.0, 1.0 / q));
}

/// Lebesgue on [0,1], f = x, H = x: the Shilkret bound is tight for a
/// continuous f.
inline BoundInstance ex2_10_instance() {
  return detail::interval_case(IntervalFamily::lebesgue(), Interval::closed(0, 1), PiecewiseMap::identity(Domain::real),
                               PiecewiseMap::identity());
}

/// Lebesgue on [0,5], f = x, H = sqrt(x).
inline BoundInstance sec3_instance() {
  return detail::interval_case(IntervalFamily::lebesgue(), Interval::closed(0, 5), PiecewiseMap::identity(Domain::real),
                               PiecewiseMap::power(1.0, 0.5));
}

/// Three-point measure, f = (-1, 0.3, 1), H = x^3.
inline BoundInstance sec4_1_instance(const MixedOpSpec& star) {
  const FiniteSpace sp(3);
  BoundInstance in;
  in.mu = MonotoneMeasure::dense(sp, {ExtReal(0.0), ExtReal(0.1), ExtReal(0.25), ExtReal(0.4), ExtReal(0.2),
                                      ExtReal(0.3), ExtReal(0.6), ExtReal(1.0)});
  in.a = sp.full();
  in.f = SignedFunction{-1.0, 0.3, 1.0};
  in.h = detail::real_power(3.0);
  in.star = star;
  return in;
}

/// sqrt(lambda) on [-3,1], f = x, H = x for x >= 0 and 2x below.
inline BoundInstance sec4_2_instance(const MixedOpSpec& star) {
  BoundInstance in = detail::interval_case(
      IntervalFamily::power(0.5), Interval::closed(-3, 1), PiecewiseMap::identity(Domain::real),
      PiecewiseMap::from_halves(PiecewiseMap::identity(), PiecewiseMap::affine(0.0, 2.0), -1.0));
  in.star = star;
  return in;
}

/// Lebesgue on [0,1], f = 0.5 x, H = sqrt(x).
inline BoundInstance remark_nn1_instance() {
  return detail::interval_case(IntervalFamily::lebesgue(), Interval::closed(0, 1), PiecewiseMap::affine(0.0, 0.5, Domain::real),
                               PiecewiseMap::power(1.0, 0.5));
}

/// Runs one fixture. ex2_9 runs q in {0.5, 1, 2} unless `q` is given.
inline FixtureResult run_fixture(const std::string& id, std::optional<double> q = std::nullopt) {
  using detail::d;
  FixtureResult res;
  res.id = id;
  detail::Recorder rec(res);
  const auto start = std::chrono::steady_clock::now();

  if (id == "ex2_4") {
    const BoundInstance in = ex2_4_instance();
    res.instances.push_back(io::instance_to_json(in));
    const BoundReport r = check_bound(in, "flo");
    rec.exact("sugeno(f)", d(r, "p"), 3.0, "max_i i ^ (6 - i) = 3");
    rec.exact("sugeno(H(f))", r.lhs.to_double(), 3.0, "max_i (i^2/3) ^ (6 - i) = 3");
    rec.exact("flo slack", r.slack, 0.0, "bound reached by the nonconstant f = x");
    rec.truth("flo hypotheses", r.hypotheses_hold(), true, "H nondecreasing and continuous");
    res.notes.push_back("equality in the monotone lower bound is attained by a nonconstant f");
  } else if (id == "cex2_6") {
    const BoundInstance in = cex2_6_instance();
    res.instances.push_back(io::instance_to_json(in));
    const BoundReport conv = check_bound(in, "convex");
    const BoundReport claim = check_bound(in, "jensen_claim");
    rec.exact("sugeno(f)", d(conv, "p"), 2.5, "sup t ^ (5 - t) = 2.5");
    rec.near("sugeno(phi(f))", conv.lhs.to_double(), (10 - std::sqrt(19.0)) / 2, 1e-9, "(10 - sqrt 19)/2");
    rec.exact("phi(p)", claim.rhs.to_double(), 4.0, "phi(2.5) = 4");
    rec.truth("refuted claim phi(p) <= sugeno(phi(f)) holds", claim.holds, false, "4 > (10 - sqrt 19)/2");
    rec.exact("convex bound rhs", conv.rhs.to_double(), 2.5, "phi(p) ^ p = 2.5");
    rec.truth("convex bound holds", conv.holds && conv.hypotheses_hold(), true, "holds under its hypotheses");
  } else if (id == "ex2_9") {
    std::vector<double> qs = q ? std::vector<double>{*q} : std::vector<double>{0.5, 1.0, 2.0};
    for (double qq : qs) {
      const BoundInstance in = ex2_9_instance(qq);
      res.instances.push_back(io::instance_to_json(in));
      const BoundReport r = check_bound(in, "shilkret");
      const std::string tag = "[q=" + io::rounded(qq).dump() + "] ";
      rec.near(tag + "sugeno(f)", d(r, "p"), std::pow(0.5, qq), 1e-9, "0.5^q");
      rec.near(tag + "shilkret(H(f))", r.lhs.to_double(), std::pow(qq / (1 + qq), qq + 1) / qq, 1e-9,
               "(1/q) (q/(1+q))^(q+1)");
      rec.near(tag + "shilkret bound rhs", r.rhs.to_double(), std::pow(0.5, qq + 1), 1e-9, "0.5^(q+1)");
      rec.truth(tag + "shilkret bound holds", r.holds && r.hypotheses_hold(), true, "holds under its hypotheses");
    }
  } else if (id == "ex2_10") {
    const BoundInstance in = ex2_10_instance();
    res.instances.push_back(io::instance_to_json(in));
    const BoundReport r = check_bound(in, "shilkret");
    rec.near("sugeno(f)", d(r, "p"), 0.5, 1e-9, "sup t ^ (1 - t)");
    rec.near("shilkret(f)", r.lhs.to_double(), 0.25, 1e-9, "sup t (1 - t)");
    rec.near("shilkret(f) - sugeno(f)^2", r.slack, 0.0, 1e-9, "equality for the continuous f = x");
    rec.truth("bound holds", r.holds && r.hypotheses_hold(), true, "shilkret(f) >= sugeno(f)^2");
  } else if (id == "sec3") {
    const BoundInstance in = sec3_instance();
    res.instances.push_back(io::instance_to_json(in));
    const BoundReport r = check_bound(in, "tw4");
    const double lhs = r.lhs.to_double(), rhs = r.rhs.to_double();
    rec.near("sugeno(sqrt f)", lhs, (-1 + std::sqrt(21.0)) / 2, 1e-9, "(-1 + sqrt 21)/2");
    const double mp = 1 / std::sqrt(10.0);
    rec.near("minimized bound", rhs, mp / (mp + 1) * 7.5, 1e-6, "g(-2.5) = 7.5 m_p / (m_p + 1) ~ 1.8019");
    rec.near("bound gap", rhs - lhs, 0.0106, 5e-5, "about 0.0106");
    rec.within("minimized bound window", rhs, lhs, 1.8020, "between the integral and g(-2.5) ~ 1.8019");
    rec.near("minimizer c", d(r, "c_min"), -2.5, 0.05, "infimum at c = -2.5");
    rec.near("m_p", d(r, "m_p"), 1 / std::sqrt(10.0), 1e-9, "H'(p) = 1/sqrt 10");
    rec.truth("bound holds", r.holds && r.hypotheses_hold(), true, "holds under its hypotheses");
  } else if (id == "sec4_1") {
    const BoundInstance plus = sec4_1_instance(ops::plus()), ovee = sec4_1_instance(ops::ovee_op());
    res.instances.push_back(io::instance_to_json(plus));
    const BoundReport a = check_bound(plus, "001"), b = check_bound(ovee, "001");
    rec.exact("p1", d(a, "p1"), 0.3, "p1 = 0.3");
    rec.exact("p2", d(a, "p2"), 0.1, "p2 = 0.1");
    rec.exact("sugeno(H1(f+))", d(a, "integral_h1"), 0.2, "0.2");
    rec.exact("sugeno(H2(f-))", d(a, "integral_h2"), 0.1, "0.1");
    rec.exact("symmetric integral (plus)", a.lhs.to_double(), 0.1, "0.1 = 0.2 + (-0.1)");
    rec.exact("symmetric integral (ovee)", b.lhs.to_double(), 0.2, "0.2 = 0.2 ovee (-0.1)");
    rec.truth("upper bound holds (plus)", a.holds && a.hypotheses_hold(), true, "holds under its hypotheses");
    rec.truth("upper bound holds (ovee)", b.holds && b.hypotheses_hold(), true, "holds under its hypotheses");
    const double lit_plus = a.rhs.to_double(), lit_ovee = b.rhs.to_double();
    rec.near("literal rhs (plus)", lit_plus, 0.299, 1e-12, "[(H(p1) v p1) ^ mu(A)] + [H(-p2) v (-p2)]");
    rec.near("literal rhs (ovee)", lit_ovee, 0.3, 1e-12, "p1 ovee (-p2) = 0.3");
    res.notes.push_back("discrepancy: the displayed right side for plus is p1 + (-p2) = 0.2, while the literal bound gives "
                        "0.3 + max(H(-0.1), -0.1) = 0.3 - 0.001 = " + io::rounded(lit_plus).dump() +
                        "; both exceed the integral 0.1, so the bound holds either way");
  } else if (id == "sec4_2") {
    const BoundInstance plus = sec4_2_instance(ops::plus()), ovee = sec4_2_instance(ops::ovee_op());
    res.instances.push_back(io::instance_to_json(ovee));
    const BoundReport a = check_bound(plus, "001"), b = check_bound(ovee, "001");
    const double s5 = std::sqrt(5.0), s13 = std::sqrt(13.0);
    rec.near("p1", d(b, "p1"), (s5 - 1) / 2, 1e-9, "(sqrt 5 - 1)/2");
    rec.near("p2", d(b, "p2"), (s13 - 1) / 2, 1e-9, "(sqrt 13 - 1)/2");
    rec.near("sugeno(H1(f+))", d(b, "integral_h1"), (s5 - 1) / 2, 1e-9, "(sqrt 5 - 1)/2");
    rec.near("sugeno(H2(f-))", d(b, "integral_h2"), 1.5, 1e-9, "1.5");
    rec.near("symmetric integral (plus)", a.lhs.to_double(), (s5 - 4) / 2, 1e-9, "(sqrt 5 - 4)/2");
    rec.near("symmetric integral (ovee)", b.lhs.to_double(), -1.5, 1e-9, "-1.5");
    rec.near("upper bound rhs (ovee)", b.rhs.to_double(), (1 - s13) / 2, 1e-9, "(1 - sqrt 13)/2 ~ -1.3");
    rec.truth("upper bound holds (ovee)", b.holds && b.hypotheses_hold(), true, "holds under its hypotheses");
    rec.truth("upper bound holds (plus)", a.holds && a.hypotheses_hold(), true, "holds under its hypotheses");
  } else if (id == "remark_nn1") {
    const BoundInstance in = remark_nn1_instance();
    res.instances.push_back(io::instance_to_json(in));
    const BoundReport r = check_bound(in, "nn1");
    rec.near("p", d(r, "p"), 1.0 / 3, 1e-9, "p = 1/3");
    rec.near("sugeno(phi(f))", r.lhs.to_double(), 0.5, 1e-9, "0.5");
    const double m = std::sqrt(3.0) / 2;
    const double rhs = m / (m + 1) * (0.5 - 1.0 / 3) + std::sqrt(1.0 / 3) / (m + 1);
    rec.near("refuted rhs", r.rhs.to_double(), rhs, 1e-9, "m/(m+1) (0.5 - p) + phi(p)/(m+1), m = sqrt 3 / 2");
    rec.within("refuted rhs window", r.rhs.to_double(), 0.38, 0.40, "approximately 0.39");
    rec.truth("refuted bound holds", r.holds, false, "0.5 > 0.39: the claimed bound fails");
  } else {
    throw Error(ErrorKind::invalid_input, "unknown fixture '" + id + "'");
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

inline json to_json(const FixtureResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"expected", io::rounded(c.expected)},
                      {"actual", io::rounded(c.actual)},
                      {"tol", c.tol},
                      {"reference", c.reference},
                      {"passed", c.passed}});
  }
  return {{"id", r.id}, {"passed", r.passed()}, {"checks", std::move(checks)}, {"notes", r.notes},
          {"seconds", io::rounded(r.seconds)}};
}

}  // namespace sugeno::repro
