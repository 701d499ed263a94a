#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "sugeno.hpp"

using namespace sugeno;

namespace {

const ExtReal kInfR = ExtReal::infinity();

// Singletons 0.5, pairs 1, the whole three-point space 2.
MonotoneMeasure three_point() {
  return MonotoneMeasure::dense(FiniteSpace(3), {0.0, 0.5, 0.5, 1.0, 0.5, 1.0, 1.0, 2.0});
}

// 0 on [0,1), 0.5 at 1, x^2 after 1.
PiecewiseMap jump_map() {
  return PiecewiseMap({{{0, 1, true, false}, Expr::constant(0), Mono::constant},
                       {{1, 1, true, true}, Expr::constant(0.5), Mono::constant},
                       {{1, kInf, false, true}, Expr::quad(0, 0, 1), Mono::inc}},
                      Domain::nonneg);
}

}  // namespace

// ---------------------------------------------------------------- ExtReal

TEST(ExtReal, InfinityTimesZeroIsZero) {
  EXPECT_EQ(kInfR * ExtReal(0.0), ExtReal(0.0));
  EXPECT_EQ(ExtReal(0.0) * kInfR, ExtReal(0.0));
  EXPECT_EQ(kInfR * ExtReal(0.5), kInfR);
}

TEST(ExtReal, ConventionsOnSmallGrid) {
  const ExtReal g[] = {0.0, 0.5, 1.0, kInfR};
  for (const auto& a : g) {
    for (const auto& b : g) {
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a + b).is_inf(), a.is_inf() || b.is_inf());
      if (a.is_zero() || b.is_zero()) EXPECT_TRUE((a * b).is_zero());
      EXPECT_EQ(min(a, b) <= max(a, b), true);
    }
  }
  EXPECT_EQ(kInfR - ExtReal(3.0), kInfR);
}

TEST(ExtReal, RejectsNegativeAndNaN) {
  EXPECT_THROW(ExtReal(-1.0), Error);
  EXPECT_THROW(ExtReal(std::nan("")), Error);
  EXPECT_THROW(kInfR.value(), Error);
  EXPECT_EQ(ExtReal::from_double(std::numeric_limits<double>::infinity()), kInfR);
}

TEST(SignedExtReal, SignAbsAndParts) {
  EXPECT_EQ(SignedExtReal(0.0).sign(), 0);
  EXPECT_EQ(SignedExtReal(-2.0).abs(), ExtReal(2.0));
  EXPECT_EQ(SignedExtReal(-2.0).negative_part(), ExtReal(2.0));
  EXPECT_EQ(SignedExtReal(-2.0).positive_part(), ExtReal(0.0));
  EXPECT_EQ(SignedExtReal(0.0) + SignedExtReal(-1.5), SignedExtReal(-1.5));
  EXPECT_EQ(SignedExtReal::neg_infinity().abs(), kInfR);
}

// ---------------------------------------------------------------- measures

TEST(Measure, EmptySetIsZero) {
  EXPECT_EQ(three_point()(Subset{}), ExtReal(0.0));
}

TEST(Measure, ThreePointPairValue) {
  EXPECT_EQ(measure_eval(three_point(), Subset::of({0, 1})), ExtReal(1.0));
}

TEST(Measure, CountingMeasure) {
  const auto mu = MonotoneMeasure::counting(FiniteSpace(5));
  EXPECT_EQ(mu(Subset::of({1, 2, 3})), ExtReal(3.0));
}

TEST(Measure, ValidateMonotone) {
  EXPECT_TRUE(validate_monotone(MonotoneMeasure::counting(FiniteSpace(3))).valid());
  EXPECT_TRUE(validate_monotone(three_point()).valid());
  // {1}:2 but {1,2}:1
  const auto bad = MonotoneMeasure::dense(FiniteSpace(2), {0.0, 2.0, 0.0, 1.0});
  const ValidationReport rep = validate_monotone(bad);
  ASSERT_FALSE(rep.valid());
  bool found = false;
  for (const auto& v : rep.violations) found |= v.smaller == Subset::of({0}) && v.larger == Subset::of({0, 1});
  EXPECT_TRUE(found);
}

TEST(Measure, SparseStrictAndClosure) {
  const FiniteSpace sp(3);
  std::map<Subset, ExtReal> vals{{Subset::of({0}), 0.4}, {Subset::of({1, 2}), 0.7}, {sp.full(), 1.0}};
  const auto closure = MonotoneMeasure::sparse(sp, vals, StorageMode::closure);
  EXPECT_EQ(closure(Subset::of({0, 1})), ExtReal(0.4));
  EXPECT_EQ(closure(Subset::of({1, 2})), ExtReal(0.7));
  EXPECT_EQ(closure(Subset::of({2})), ExtReal(0.0));
  const auto strict = MonotoneMeasure::sparse(sp, vals, StorageMode::strict);
  EXPECT_THROW(strict(Subset::of({0, 1})), Error);
}

TEST(Measure, IntervalModeIsNotEnumerable) {
  const auto lam = MonotoneMeasure::interval(IntervalFamily::lebesgue());
  EXPECT_THROW(validate_monotone(lam), Error);
  EXPECT_THROW(verify::is_subadditive(lam), Error);
  EXPECT_EQ(lam(IntervalSet(Interval::closed(0, 5))), ExtReal(5.0));
}

TEST(Measure, SpaceSizeLimits) {
  EXPECT_THROW(FiniteSpace(0), Error);
  EXPECT_THROW(FiniteSpace(25), Error);
  EXPECT_NO_THROW(FiniteSpace(24));
}

TEST(Measure, SurvivalOnCountingExample) {
  const auto mu = MonotoneMeasure::counting(FiniteSpace(5));
  const DiscreteFunction f{1, 2, 3, 4, 5};
  const Subset a = FiniteSpace(5).full();
  EXPECT_EQ(survival(mu, a, f, 3.0), ExtReal(3.0));
  EXPECT_EQ(survival(mu, a, f, 0.0), mu(a));
  EXPECT_EQ(survival(mu, a, f, 5.5), ExtReal(0.0));
  // nonincreasing on values and midpoints
  ExtReal prev = kInfR;
  for (double t = 0; t <= 6; t += 0.5) {
    const ExtReal s = survival(mu, a, f, t);
    EXPECT_LE(s, prev);
    prev = s;
  }
}

// ---------------------------------------------------------------- binops

TEST(Binops, BuiltinValues) {
  EXPECT_EQ(ops::min_op()(2.0, 3.0), ExtReal(2.0));
  EXPECT_EQ(ops::product()(kInfR, 0.0), ExtReal(0.0));
  EXPECT_EQ(ops::ovee(0.2, -0.1), SignedExtReal(0.2));
  EXPECT_EQ(ops::ovee(0.3, -0.3), SignedExtReal(0.0));
  EXPECT_EQ(ops::plus()(0.2, -0.1).to_double(), 0.2 + -0.1);
}

TEST(Binops, FuzzyConjunctionConstruction) {
  const BinaryOpSpec qmin = fuzzy_conjunction_to_circ(tnorm("min"));
  EXPECT_EQ(qmin(0.7, 0.4), ExtReal(0.4));
  const BinaryOpSpec qprod = fuzzy_conjunction_to_circ(tnorm("product"));
  EXPECT_EQ(qprod(2.0, 0.5), ExtReal(0.5));
  for (const char* t : {"min", "product", "lukasiewicz"}) {
    const BinaryOpSpec q = fuzzy_conjunction_to_circ(tnorm(t));
    for (double a : {0.0, 0.3, 1.0, 7.0}) EXPECT_TRUE(q(a, 0.0).is_zero()) << t;
  }
}

TEST(Binops, SemicopulaNeutralAndBelowMin) {
  const double grid[] = {0.0, 0.1, 0.5, 1.0};
  for (const char* t : {"min", "product", "lukasiewicz"}) {
    const BinaryOpSpec s = semicopula_to_circ(tnorm(t));
    for (double a : grid) {
      EXPECT_EQ(s(a, 1.0), ExtReal(a)) << t;
      EXPECT_EQ(s(1.0, a), ExtReal(a)) << t;
      for (double b : grid) EXPECT_LE(s(a, b), min(ExtReal(a), ExtReal(b))) << t;
    }
  }
}

TEST(Binops, BuiltinsPassDeclaredFlags) {
  const auto grid = default_flag_grid();
  for (const char* name : {"min", "product", "ceilmin", "floormin"}) {
    const FlagReport rep = check_flags(builtin_binary(name), grid);
    EXPECT_TRUE(rep.all_passed()) << name;
  }
  const std::vector<ExtReal> unit{0.0, 0.1, 0.5, 1.0};
  for (const char* name : {"qconj:min", "qconj:product", "qconj:lukasiewicz", "semicopula:product"}) {
    EXPECT_TRUE(check_flags(builtin_binary(name), unit).all_passed()) << name;
  }
  for (const char* name : {"plus", "ovee"}) EXPECT_TRUE(check_flags(builtin_mixed(name), grid).all_passed()) << name;
}

TEST(Binops, ProductIsSubdistributive) {
  const FlagReport rep = check_flags(ops::product(), default_flag_grid());
  const FlagCheck* c = rep.find("subdistributive_add");
  ASSERT_NE(c, nullptr);
  EXPECT_TRUE(c->passed);
}

TEST(Binops, SquaredFirstArgumentIsNotSubdistributive) {
  // a o b = a^2 b: (1 + 1) o 1 = 4 > 1 o 1 + 1 o 1 = 2.
  BinaryOpSpec op{"sq", [](const ExtReal& a, const ExtReal& b) { return a * a * b; }, {}};
  op.flags.nondecreasing = true;
  op.flags.zero_absorbing = true;
  op.flags.subdistributive_add = true;
  const FlagReport rep = check_flags(op, default_flag_grid());
  const FlagCheck* c = rep.find("subdistributive_add");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
  EXPECT_FALSE(c->witness.empty());
}

TEST(Binops, SquaredSecondArgumentIsSubdistributive) {
  // a o b = a b^2: (a + b) c^2 = a c^2 + b c^2, equality on every triple.
  BinaryOpSpec op{"ab2", [](const ExtReal& a, const ExtReal& b) { return a * b * b; }, {}};
  op.flags.nondecreasing = true;
  op.flags.zero_absorbing = true;
  op.flags.subdistributive_add = true;
  EXPECT_TRUE(check_flags(op, default_flag_grid()).find("subdistributive_add")->passed);
}

TEST(Binops, FalseFlagIsFalsified) {
  BinaryOpSpec op = ops::floor_min();
  op.flags.left_cont_first = true;  // floor jumps at integers
  const FlagReport rep = check_flags(op, default_flag_grid());
  EXPECT_FALSE(rep.find("left_cont_first")->passed);
}

TEST(Binops, UnknownNames) {
  EXPECT_THROW(builtin("nope"), Error);
  EXPECT_THROW(builtin_binary("ovee"), Error);
  EXPECT_THROW(builtin_mixed("min"), Error);
  EXPECT_THROW(tnorm("hamacher"), Error);
}

// ---------------------------------------------------------------- transforms

TEST(Piecewise, EvaluateBuiltins) {
  EXPECT_DOUBLE_EQ(PiecewiseMap::quadratic(0, 0, 1.0 / 3)(3.0), 3.0);
  EXPECT_EQ(PiecewiseMap::quadratic(0.25, -1, 1)(0.5), 0.0);
  EXPECT_EQ(PiecewiseMap::identity().eval(kInfR), kInfR);
}

TEST(Piecewise, OneSidedLimitsAtJump) {
  const OneSidedLimits l = jump_map().limits(1.0);
  EXPECT_EQ(l.lower_left, 0.0);
  EXPECT_EQ(l.lower_right, 1.0);
  EXPECT_EQ(l.upper_left, 0.0);
  EXPECT_EQ(l.upper_right, 1.0);
  EXPECT_FALSE(jump_map().left_continuous_at(1.0));
  EXPECT_FALSE(jump_map().right_continuous_at(1.0));
}

TEST(Piecewise, ContinuousMapsHaveEqualLimits) {
  const PiecewiseMap maps[] = {PiecewiseMap::quadratic(0.25, -1, 1), PiecewiseMap::power(1, 0.5),
                               PiecewiseMap::identity()};
  for (const auto& h : maps) {
    EXPECT_TRUE(h.continuous());
    for (double p : {0.1, 0.5, 1.0, 2.5, 7.0}) {
      const OneSidedLimits l = h.limits(p);
      EXPECT_NEAR(l.lower_left, h(p), 1e-12);
      EXPECT_NEAR(l.lower_right, h(p), 1e-12);
      EXPECT_NEAR(l.upper_left, h(p), 1e-12);
      EXPECT_NEAR(l.upper_right, h(p), 1e-12);
    }
  }
}

TEST(Piecewise, IntervalExtrema) {
  EXPECT_EQ(PiecewiseMap::quadratic(0.25, -1, 1).extrema(2.5, kInf).inf, 4.0);
  EXPECT_DOUBLE_EQ(PiecewiseMap::quadratic(0, 0, 1.0 / 3).extrema(0, 3).sup, 3.0);
  const auto h = PiecewiseMap::power(2, 0.5);
  const Extrema e = h.extrema(1, 4);
  EXPECT_EQ(e.inf, h(1));
  EXPECT_EQ(e.sup, h(4));
  const Extrema pt = jump_map().extrema(1, 1);
  EXPECT_EQ(pt.inf, 0.5);
  EXPECT_EQ(pt.sup, 0.5);
  // open ends exclude the jump value
  EXPECT_EQ(jump_map().extrema(0, 1, true, false).sup, 0.0);
}

TEST(Piecewise, TailInfimumMonotoneInP) {
  const auto inc = PiecewiseMap::quadratic(0, 0, 1.0 / 3);
  const auto dec = PiecewiseMap::affine(2, -1);
  double prev = kInf;
  for (double p = 0; p <= 5; p += 0.25) {
    EXPECT_EQ(inc.extrema(p, kInf).inf, inc(p));
    const double v = dec.extrema(p, kInf).inf;
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(Piecewise, MonotonicityAndPivots) {
  const auto valley = PiecewiseMap::quadratic(0.25, -1, 1);
  EXPECT_FALSE(valley.nondecreasing());
  ASSERT_TRUE(valley.quasiconvex_pivot().has_value());
  EXPECT_EQ(*valley.quasiconvex_pivot(), 0.5);
  const auto hill = PiecewiseMap::quadratic(0, 2, -1);
  ASSERT_TRUE(hill.quasiconcave_pivot().has_value());
  EXPECT_EQ(*hill.quasiconcave_pivot(), 1.0);
  EXPECT_TRUE(PiecewiseMap::power(1, 0.5).nondecreasing());
}

TEST(Piecewise, RejectsGapsAndWrongMonotonicity) {
  EXPECT_THROW(PiecewiseMap({{{0, 1, true, false}, Expr::affine(0, 1), Mono::inc}}, Domain::nonneg), Error);
  EXPECT_THROW(PiecewiseMap({{{0, kInf, true, true}, Expr::affine(0, 1), Mono::dec}}, Domain::nonneg), Error);
}

TEST(Piecewise, SupportSlope) {
  const auto root = PiecewiseMap::power(1, 0.5);
  EXPECT_NEAR(support_slope(root, 2.5).slope, 1 / std::sqrt(10.0), 1e-12);
  EXPECT_NEAR(support_slope(root, 1.0 / 3).slope, 0.5 * std::sqrt(3.0), 1e-12);
  EXPECT_DOUBLE_EQ(support_slope(PiecewiseMap::affine(0, 1.7), 3.0).slope, 1.7);
  EXPECT_THROW(support_slope(PiecewiseMap::quadratic(0, 0, 1), 1.0), Error);
  // the line dominates on a 1000-point grid
  const SupportLine line = support_slope(root, 2.5);
  for (int i = 0; i < 1000; ++i) {
    const double y = 10.0 * i / 999;
    EXPECT_LE(root(y), line(y) + 1e-12);
  }
}

TEST(Piecewise, SuperlevelAndPreimageOnTheRealLine) {
  // x -> x on the real line: {x >= t} is [t, inf], including negative t.
  const auto id = PiecewiseMap::identity(Domain::real);
  const IntervalSet s = id.superlevel(-2.0);
  ASSERT_EQ(s.parts().size(), 1u);
  EXPECT_EQ(s.parts()[0].lo, -2.0);
  EXPECT_EQ(s.parts()[0].hi, kInf);
  const IntervalSet pre = id.preimage(IntervalSet(Interval::closed(-1, 3)));
  EXPECT_EQ(pre.total_length(), 4.0);
  const auto sq = PiecewiseMap::quadratic(0.25, -1, 1);
  EXPECT_NEAR(sq.superlevel(4.0).parts()[0].lo, 2.5, 1e-12);
}

TEST(Piecewise, InfiniteEndpointsInMonotoneChecks) {
  // a map reaching inf at inf is still nondecreasing, and inf is never
  // treated as close to a finite value
  EXPECT_TRUE(PiecewiseMap::power(1, 2).nondecreasing());
  EXPECT_TRUE(PiecewiseMap::affine(3, -0.5).nonincreasing());
  EXPECT_EQ(PiecewiseMap::power(1, 2).extrema(1, kInf).sup, kInf);
}

TEST(Piecewise, PositiveAffineNeedsFiniteArguments) {
  EXPECT_THROW(PiecewiseMap::positive_affine(kInf, 0), Error);
  const auto g = PiecewiseMap::positive_affine(2, 1);
  EXPECT_EQ(g(0.5), 0.0);
  EXPECT_EQ(g(3.0), 4.0);
}
