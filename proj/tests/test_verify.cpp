#include <gtest/gtest.h>

#include <cmath>

#include "sugeno.hpp"

using namespace sugeno;
using namespace sugeno::verify;

namespace {

MonotoneMeasure three_point() {
  return MonotoneMeasure::dense(FiniteSpace(3), {0.0, 0.5, 0.5, 1.0, 0.5, 1.0, 1.0, 2.0});
}

const MeasureKind kKinds[] = {MeasureKind::general,     MeasureKind::subadditive,  MeasureKind::superadditive,
                              MeasureKind::weakly_sub, MeasureKind::weakly_super, MeasureKind::additive};

}  // namespace

// ---------------------------------------------------------------- predicates

TEST(Predicates, ThreePointMeasure) {
  const auto mu = three_point();
  EXPECT_TRUE(is_weakly_subadditive(mu, Subset::of({0, 1})).holds);
  const PredicateResult sub = is_subadditive(mu);
  ASSERT_FALSE(sub.holds);
  ASSERT_TRUE(sub.b && sub.c);
  EXPECT_EQ(sub.b->bits & sub.c->bits, 0u);
  EXPECT_GT(mu(*sub.b | *sub.c), mu(*sub.b) + mu(*sub.c));
}

TEST(Predicates, AdditiveMeasurePassesAll) {
  const double w[] = {0.2, 1.5, 0.7, 0.1};
  const auto mu = MonotoneMeasure::additive(w);
  EXPECT_TRUE(is_subadditive(mu).holds);
  EXPECT_TRUE(is_superadditive(mu).holds);
  for (std::uint32_t a = 0; a < 16; ++a) {
    EXPECT_TRUE(is_weakly_subadditive(mu, Subset{a}).holds);
    EXPECT_TRUE(is_weakly_superadditive(mu, Subset{a}).holds);
  }
  const auto counting = MonotoneMeasure::counting(FiniteSpace(4));
  EXPECT_TRUE(is_subadditive(counting).holds);
  EXPECT_TRUE(is_superadditive(counting).holds);
}

TEST(Predicates, SquaredCounting) {
  const auto mu = MonotoneMeasure::dense(FiniteSpace(2), {0.0, 1.0, 1.0, 4.0});
  EXPECT_TRUE(is_superadditive(mu).holds);
  const PredicateResult sub = is_subadditive(mu);
  EXPECT_FALSE(sub.holds);
}

TEST(Predicates, WeakSuperadditivityWitness) {
  // the three-point measure is additive below X, so it holds there
  EXPECT_TRUE(is_weakly_superadditive(three_point(), Subset::of({0, 1})).holds);
  const auto mu = MonotoneMeasure::dense(FiniteSpace(2), {0.0, 0.5, 0.5, 0.6});
  const PredicateResult r = is_weakly_superadditive(mu, Subset::of({0, 1}));
  ASSERT_FALSE(r.holds);  // 0.6 < 0.5 + 0.5
  ASSERT_TRUE(r.b.has_value());
}

TEST(Predicates, SubadditiveImpliesWeaklySubadditive) {
  Rng r(19);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < 40; ++k) {
      const MeasureKind kind = k % 2 ? MeasureKind::subadditive : MeasureKind::general;
      const MonotoneMeasure mu = random_measure(r, n, kind, FiniteSpace(n).full());
      const bool sub = is_subadditive(mu).holds;
      const bool super = is_superadditive(mu).holds;
      for (std::uint32_t a = 0; a < (1u << n); ++a) {
        if (sub) EXPECT_TRUE(is_weakly_subadditive(mu, Subset{a}).holds);
        if (super) EXPECT_TRUE(is_weakly_superadditive(mu, Subset{a}).holds);
      }
    }
  }
}

TEST(Predicates, IntervalFamilies) {
  EXPECT_TRUE(properties(IntervalFamily::lebesgue()).subadditive);
  EXPECT_TRUE(properties(IntervalFamily::power(0.5)).subadditive);
  EXPECT_FALSE(properties(IntervalFamily::power(0.5)).superadditive);
  EXPECT_TRUE(properties(IntervalFamily::power(2)).superadditive);
  EXPECT_FALSE(properties(IntervalFamily::counting()).continuous);
}

// ---------------------------------------------------------------- generators

TEST(Generators, MeasuresAreMonotoneAndOfTheirKind) {
  Rng r(23);
  for (const MeasureKind kind : kKinds) {
    for (int k = 0; k < 60; ++k) {
      const int n = r.range(1, 6);
      const Subset a = random_subset(r, n);
      const MonotoneMeasure mu = random_measure(r, n, kind, a, k % 3 == 0);
      ASSERT_TRUE(validate_monotone(mu).valid()) << to_string(kind);
      switch (kind) {
        case MeasureKind::general: break;
        case MeasureKind::subadditive: EXPECT_TRUE(is_subadditive(mu).holds); break;
        case MeasureKind::superadditive: EXPECT_TRUE(is_superadditive(mu).holds); break;
        case MeasureKind::weakly_sub: EXPECT_TRUE(is_weakly_subadditive(mu, a).holds); break;
        case MeasureKind::weakly_super: EXPECT_TRUE(is_weakly_superadditive(mu, a).holds); break;
        case MeasureKind::additive:
          EXPECT_TRUE(is_subadditive(mu).holds && is_superadditive(mu).holds);
          break;
      }
      if (k % 3 == 0) EXPECT_LE(mu(FiniteSpace(n).full()), ExtReal(1.0));
    }
  }
}

TEST(Generators, KindNames) {
  for (const MeasureKind kind : kKinds) EXPECT_EQ(parse_measure_kind(to_string(kind)), kind);
  EXPECT_THROW(parse_measure_kind("bogus"), Error);
}

TEST(Generators, TransformShapes) {
  Rng r(29);
  for (int k = 0; k < 100; ++k) {
    EXPECT_TRUE(random_transform(r, Shape::nondecreasing).nondecreasing());
    EXPECT_TRUE(random_transform(r, Shape::continuous).continuous());
    EXPECT_TRUE(random_transform(r, Shape::quasiconvex).quasiconvex_pivot().has_value());
    EXPECT_TRUE(random_transform(r, Shape::quasiconcave).quasiconcave_pivot().has_value());
    const PiecewiseMap c = random_transform(r, Shape::concave);
    EXPECT_TRUE(c.nondecreasing() && c.sampled_convex(0, 6, -1));
    EXPECT_TRUE(random_transform(r, Shape::convex).sampled_convex(0, 6, +1));
    const PiecewiseMap s = random_transform(r, Shape::real_nondecreasing);
    EXPECT_EQ(s(0.0), 0.0);
    EXPECT_TRUE(s.nondecreasing());
  }
}

TEST(Generators, SeededInstancesAreIdentical) {
  FuzzConfig cfg;
  cfg.seed = 1234;
  for (const auto& id : {"tw1i", "qint", "001", "tw4"}) {
    const json a = io::instance_to_json(random_instance(cfg, 17, id));
    const json b = io::instance_to_json(random_instance(cfg, 17, id));
    EXPECT_EQ(a.dump(), b.dump()) << id;
  }
}

// ---------------------------------------------------------------- oracle

TEST(Oracle, CountingExample) {
  const auto mu = MonotoneMeasure::counting(FiniteSpace(5));
  EXPECT_EQ(oracle_integral(ops::min_op(), mu, FiniteSpace(5).full(), DiscreteFunction{1, 2, 3, 4, 5}), ExtReal(3.0));
  EXPECT_EQ(oracle_integral(ops::product(), mu, FiniteSpace(5).full(), DiscreteFunction{0, 0, 0, 0, 0}), ExtReal(0.0));
}

TEST(Oracle, MatchesEngine) {
  Rng r(31);
  const char* names[] = {"min", "product", "ceilmin", "floormin"};
  for (int k = 0; k < 400; ++k) {
    const int n = r.range(1, 6);
    const Subset a = random_subset(r, n);
    const MonotoneMeasure mu = random_measure(r, n, MeasureKind::general, a);
    std::vector<ExtReal> f;
    const auto raw = random_function(r, n, 3.0);
    for (const auto& v : raw.values()) f.push_back(v.positive_part());
    const BinaryOpSpec op = builtin_binary(names[k % 4]);
    EXPECT_EQ(generalized_integral(op, mu, a, DiscreteFunction(f)).value, oracle_integral(op, mu, a, DiscreteFunction(f)))
        << op.name;
  }
}

// ---------------------------------------------------------------- witnesses

TEST(Witness, Tw1iWithNondecreasingContinuousH) {
  const auto mu = three_point();
  const Subset a = Subset::of({0, 2});
  const Witness w = attainability_witness("tw1i", mu, a, PiecewiseMap::power(1, 0.5));
  ASSERT_TRUE(w.ok) << w.reason;
  const BoundReport r = check_bound(*w.instance, "tw1i");
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_LE(std::fabs(r.slack), 1e-12);
}

TEST(Witness, Tw2iiWithNonincreasingLeftContinuousH) {
  const double w8[] = {0.3, 0.5, 0.9};
  const auto mu = MonotoneMeasure::additive(w8);
  const Subset a = FiniteSpace(3).full();
  const Witness w = attainability_witness("tw2ii", mu, a, PiecewiseMap::positive_affine(-1, 2));
  ASSERT_TRUE(w.ok) << w.reason;
  const BoundReport r = check_bound(*w.instance, "tw2ii");
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_LE(std::fabs(r.slack), 1e-12);
}

TEST(Witness, NonconstantFunctionAlsoAttains) {
  // f = x on five points is not a scaled indicator, yet the bound is sharp
  const BoundReport r = check_bound(repro::ex2_4_instance(), "flo");
  EXPECT_EQ(r.slack, 0.0);
}

TEST(Witness, UnmetConditionsAreReported) {
  const auto mu = three_point();
  // x^2 on [0,1) then 0; with p = mu({0}) = 0.5, inf H([p, inf]) = 0 < H(p)
  const PiecewiseMap drop({{{0, 1, true, false}, Expr::quad(0, 0, 1), Mono::inc},
                           {{1, kInf, true, true}, Expr::constant(0), Mono::constant}},
                          Domain::nonneg);
  const Witness w = attainability_witness("tw1i", mu, Subset::of({0}), drop);
  EXPECT_FALSE(w.ok);
  EXPECT_FALSE(w.reason.empty());
  EXPECT_FALSE(attainability_witness("flo", mu, Subset::of({0}), drop).ok);
  EXPECT_FALSE(attainability_witness("001", mu, Subset::of({0}), drop).ok);
}

TEST(Witness, SymmetricBound) {
  const auto mu = MonotoneMeasure::dense(FiniteSpace(3), {0.0, 0.1, 0.25, 0.4, 0.2, 0.3, 0.6, 1.0});
  const PiecewiseMap h = PiecewiseMap::identity(Domain::real);
  for (const MixedOpSpec& star : {ops::plus(), ops::ovee_op()}) {
    const Witness w = attainability_witness("001", mu, FiniteSpace(3).full(), h, ops::min_op(), star);
    ASSERT_TRUE(w.ok) << w.reason;
    const BoundReport r = check_bound(*w.instance, "001");
    EXPECT_LE(std::fabs(r.lhs.to_double() - r.rhs.to_double()), 1e-12) << star.name;
  }
}

TEST(Witness, SweepsAreTight) {
  for (const auto& id : witness_ids()) {
    const WitnessSweep s = witness_sweep(id, 3, 60);
    EXPECT_GT(s.built, 0) << id;
    EXPECT_EQ(s.equal, s.built) << id << " worst " << s.worst;
  }
}

// ---------------------------------------------------------------- fuzzer

TEST(Fuzz, SoundBoundsHaveNoViolations) {
  FuzzConfig cfg;
  cfg.trials = 150;
  cfg.seed = 5;
  const FuzzReport rep = fuzz(cfg);
  EXPECT_EQ(rep.total_violations(), 0) << rep.to_json().dump(2);
  for (const auto& [id, s] : rep.stats) EXPECT_GT(s.checked, 0) << id;
}

TEST(Fuzz, DeterministicDigest) {
  FuzzConfig cfg;
  cfg.trials = 60;
  cfg.seed = 77;
  cfg.bounds = {"ss1", "tw2i", "jensen_claim"};
  cfg.threads = 1;
  const std::string a = fuzz(cfg).to_json()["digest"];
  cfg.threads = 4;
  const std::string b = fuzz(cfg).to_json()["digest"];
  EXPECT_EQ(a, b);
  cfg.seed = 78;
  EXPECT_NE(fuzz(cfg).to_json()["digest"].get<std::string>(), a);
}

TEST(Fuzz, RefutedClaimsAreFoundAndShrunk) {
  for (const char* id : {"jensen_claim", "nn1"}) {
    FuzzConfig cfg;
    cfg.trials = 200;
    cfg.bounds = {id};
    cfg.max_counterexamples = 3;
    const FuzzReport rep = fuzz(cfg);
    EXPECT_GT(rep.total_violations(), 0) << id;
    ASSERT_FALSE(rep.counterexamples.empty()) << id;
    for (const auto& c : rep.counterexamples) {
      // the serialized instance reproduces the violation
      const BoundReport again = check_bound(io::instance_from_json(c.instance), c.bound);
      EXPECT_FALSE(again.holds) << id;
      EXPECT_TRUE(again.hypotheses_hold()) << id;
      EXPECT_NEAR(again.slack, c.slack, 1e-9) << id;
    }
  }
}

TEST(Fuzz, ShrinkKeepsTheViolation) {
  FuzzConfig cfg;
  cfg.trials = 100;
  cfg.bounds = {"jensen_claim"};
  cfg.shrink = false;
  const FuzzReport raw = fuzz(cfg);
  ASSERT_FALSE(raw.counterexamples.empty());
  BoundInstance in = io::instance_from_json(raw.counterexamples.front().instance);
  const int before = in.mu->space().size();
  const int steps = shrink(in, "jensen_claim", 1e-9);
  EXPECT_GE(steps, 0);
  EXPECT_LE(in.mu->space().size(), before);
  const BoundReport r = check_bound(in, "jensen_claim");
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(r.hypotheses_hold());
}

TEST(Fuzz, ConfigValidation) {
  FuzzConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(fuzz(cfg), Error);
  cfg.trials = 1;
  cfg.n_max = 13;
  EXPECT_THROW(fuzz(cfg), Error);
  cfg.n_max = 6;
  cfg.bounds = {"nope"};
  EXPECT_THROW(fuzz(cfg), Error);
}
