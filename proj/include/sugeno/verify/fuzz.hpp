#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "sugeno/bounds.hpp"
#include "sugeno/io/json.hpp"
#include "sugeno/verify/random.hpp"
#include "sugeno/verify/witness.hpp"

namespace sugeno::verify {

using nlohmann::json;

struct FuzzConfig {
  std::uint64_t seed = 1;
  int trials = 1000;
  int n_min = 2;
  int n_max = 6;
  std::optional<MeasureKind> kind;  // overrides each bound's preferred measure kind
  std::vector<std::string> bounds;  // empty: default_fuzz_bounds()
  double tol = 1e-9;
  int budget = 100;  // resamples per trial and bound before skipping
  bool shrink = true;
  int max_counterexamples = 10;  // kept per bound, smallest digests first
  int threads = 0;               // 0: hardware concurrency

  void validate() const {
    if (trials < 1) throw Error(ErrorKind::invalid_input, "trials must be >= 1");
    if (n_min < 1 || n_max > 12 || n_min > n_max) throw Error(ErrorKind::invalid_input, "need 1 <= n_min <= n_max <= 12");
    if (budget < 1) throw Error(ErrorKind::invalid_input, "budget must be >= 1");
  }
};

/// Every sound bound; the refuted claims (jensen_claim, nn1) must be
/// requested explicitly.
inline std::vector<std::string> default_fuzz_bounds() {
  std::vector<std::string> out;
  for (const auto& id : bound_ids())
    if (id != "jensen_claim" && id != "nn1") out.push_back(id);
  return out;
}

/// How instances are drawn for one bound.
struct Recipe {
  Shape shape = Shape::any;
  MeasureKind kind = MeasureKind::general;
  bool alternate_general = false;  // every other draw uses a general measure
  bool unit_measure = false;
  bool unit_f = false;
  bool signed_f = false;
  bool whole_a = false;
  enum class Ops { min, pool, subdistributive } ops = Ops::min;
  bool aux = false;
  bool star = false;
};

inline Recipe recipe_for(const std::string& id) {
  using O = Recipe::Ops;
  Recipe r;
  if (id == "tw1i" || id == "tw2i" || id == "ss1" || id == "ss2") return {Shape::any, MeasureKind::general, false, false, false, false, false, O::pool};
  if (id == "tw1ii" || id == "ss3") return {Shape::any, MeasureKind::weakly_sub, false, false, false, false, false, O::pool};
  if (id == "tw2ii" || id == "ss4") return {Shape::any, MeasureKind::weakly_super, false, false, false, false, false, O::pool};
  if (id == "noo1") return {Shape::continuous, MeasureKind::subadditive, false, false, false, false, false, O::pool};
  if (id == "in3a") return {Shape::quasiconcave, MeasureKind::superadditive, false, false, false, false, false, O::pool};
  if (id == "flo" || id == "shilkret") return {Shape::nondecreasing};
  if (id == "convex" || id == "jensen_claim") return {Shape::convex};
  if (id == "qint") {
    r = {Shape::unit_quasiconvex, MeasureKind::general, false, true, true, false, true};
    r.aux = true;
    return r;
  }
  if (id == "seminormed") {
    r = {Shape::unit_nondecreasing, MeasureKind::general, false, true, true};
    r.aux = true;
    return r;
  }
  if (id == "co2") return {Shape::quasiconcave, MeasureKind::weakly_super, true};
  if (id == "tw4") return {Shape::concave, MeasureKind::general, false, false, false, false, false, O::subdistributive};
  if (id == "in99" || id == "l1" || id == "in80" || id == "nn1") return {Shape::concave};
  if (id == "comono") return {Shape::concave, MeasureKind::general, false, false, true};
  if (id == "001") {
    r = {Shape::real_nondecreasing, MeasureKind::general, false, false, false, true};
    r.star = true;
    return r;
  }
  if (id == "mixed_lower") return {Shape::real_valley, MeasureKind::general, false, false, false, true};
  if (id == "mixed_upper") return {Shape::real_valley, MeasureKind::subadditive, false, false, false, true};
  throw Error(ErrorKind::invalid_input, "no generator recipe for bound '" + id + "'");
}

/// One random instance for a bound's recipe.
inline BoundInstance random_instance(Rng& r, const Recipe& rc, const FuzzConfig& cfg, int attempt = 0) {
  const int n = r.range(cfg.n_min, cfg.n_max);
  BoundInstance in;
  in.a = rc.whole_a ? FiniteSpace(n).full() : random_subset(r, n);
  MeasureKind kind = cfg.kind.value_or(rc.kind);
  if (!cfg.kind && rc.alternate_general && attempt % 2 == 1) kind = MeasureKind::general;
  in.mu = random_measure(r, n, kind, in.a, rc.unit_measure);
  const double hi = (rc.unit_measure || rc.unit_f) ? 1.0 : 0.5 * r.range(1, 6);
  in.f = random_function(r, n, hi, rc.signed_f);
  in.h = random_transform(r, rc.shape);
  switch (rc.ops) {
    case Recipe::Ops::min: break;
    case Recipe::Ops::pool: in.op = random_op(r); break;
    case Recipe::Ops::subdistributive: in.op = r.coin(0.5) ? ops::min_op() : ops::product(); break;
  }
  if (rc.aux) in.aux = random_tnorm(r);
  if (rc.star) in.star = r.coin(0.5) ? ops::plus() : ops::ovee_op();
  return in;
}

// ---------------------------------------------------------------------------
// Digests

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string digest(const json& j) { return hex64(fnv1a(j.dump())); }

/// Instance for (trial, bound) under the config; the same inputs give the
/// same instance.
inline BoundInstance random_instance(const FuzzConfig& cfg, int trial, const std::string& bound, int attempt = 0) {
  const std::string id = canonical_bound_id(bound);
  Rng r(stream_seed(cfg.seed, static_cast<std::uint64_t>(trial), fnv1a(id)));
  BoundInstance in;
  for (int k = 0; k <= attempt; ++k) in = random_instance(r, recipe_for(id), cfg, k);
  return in;
}

// ---------------------------------------------------------------------------
// Shrinking

/// The instance with element i removed from the ground space.
inline std::optional<BoundInstance> remove_element(const BoundInstance& in, int i) {
  const MonotoneMeasure dense = in.mu->to_dense();
  const int n = dense.space().size();
  if (n <= 1) return std::nullopt;
  auto compress = [&](std::uint32_t bits) {
    const std::uint32_t low = bits & ((1u << i) - 1);
    return low | ((bits >> (i + 1)) << i);
  };
  const FiniteSpace sp(n - 1);
  std::vector<ExtReal> v(sp.subset_count());
  for (std::uint32_t b = 0; b < v.size(); ++b) {
    const std::uint32_t low = b & ((1u << i) - 1);
    const std::uint32_t high = (b >> i) << (i + 1);
    v[b] = dense(Subset{low | high});
  }
  BoundInstance out = in;
  out.mu = MonotoneMeasure::dense(sp, std::move(v));
  out.a = Subset{compress(in.a.bits)};
  if (out.a.empty()) return std::nullopt;
  std::vector<SignedExtReal> f;
  for (int k = 0; k < n; ++k)
    if (k != i) f.push_back(in.f[static_cast<std::size_t>(k)]);
  out.f = SignedFunction(std::move(f));
  return out;
}

inline double quantize64(double x) { return std::round(x * 64.0) / 64.0; }

inline std::optional<BoundInstance> quantize_measure(const BoundInstance& in) {
  const MonotoneMeasure dense = in.mu->to_dense();
  std::vector<ExtReal> v;
  bool changed = false;
  for (std::uint64_t b = 0; b < dense.space().subset_count(); ++b) {
    const ExtReal x = dense(Subset{static_cast<std::uint32_t>(b)});
    if (x.is_inf()) {
      v.push_back(x);
      continue;
    }
    const double q = quantize64(x.value());
    changed = changed || q != x.value();
    v.push_back(ExtReal(q));
  }
  if (!changed) return std::nullopt;
  BoundInstance out = in;
  out.mu = MonotoneMeasure::dense(dense.space(), std::move(v));
  return out;
}

inline std::optional<BoundInstance> quantize_function(const BoundInstance& in) {
  std::vector<SignedExtReal> v;
  bool changed = false;
  for (const auto& x : in.f.values()) {
    if (!x.is_finite()) {
      v.push_back(x);
      continue;
    }
    const double q = quantize64(x.to_double());
    changed = changed || q != x.to_double();
    v.emplace_back(q);
  }
  if (!changed) return std::nullopt;
  BoundInstance out = in;
  out.f = SignedFunction(std::move(v));
  return out;
}

inline std::optional<BoundInstance> zero_entry(const BoundInstance& in, std::size_t i) {
  if (in.f[i].is_finite() && in.f[i].to_double() == 0.0) return std::nullopt;
  std::vector<SignedExtReal> v = in.f.values();
  v[i] = SignedExtReal(0.0);
  BoundInstance out = in;
  out.f = SignedFunction(std::move(v));
  return out;
}

/// Report when the instance still violates the bound with every hypothesis
/// holding.
inline std::optional<BoundReport> still_violates(const BoundInstance& in, const std::string& id, double tol) {
  try {
    BoundReport rep = check_bound(in, id, {tol});
    if (rep.hypotheses_hold() && !rep.holds) return rep;
  } catch (const Error&) {
  }
  return std::nullopt;
}

/// Greedy shrinking: drop elements, zero f entries, round f and mu to
/// multiples of 1/64, accepting a step only while the violation persists
/// under satisfied hypotheses. Returns the number of accepted steps.
inline int shrink(BoundInstance& in, const std::string& id, double tol, int max_steps = 200) {
  int steps = 0;
  bool changed = true;
  auto attempt = [&](const std::optional<BoundInstance>& cand) {
    if (!cand || steps >= max_steps || !still_violates(*cand, id, tol)) return false;
    in = *cand;
    ++steps;
    changed = true;
    return true;
  };
  while (changed && steps < max_steps) {
    changed = false;
    for (int i = in.mu->space().size() - 1; i >= 0; --i) attempt(remove_element(in, i));
    for (std::size_t i = 0; i < in.f.size(); ++i) attempt(zero_entry(in, i));
    attempt(quantize_function(in));
    attempt(quantize_measure(in));
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Fuzzing

struct Counterexample {
  std::string bound;
  json instance;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  json hypotheses;
  int shrink_steps = 0;
  std::string digest;
};

struct BoundStats {
  int checked = 0;     // trials whose instance met every hypothesis
  int skipped = 0;     // budget exhausted without a valid instance
  int violations = 0;
  int errors = 0;      // draws whose evaluation raised an error
};

struct FuzzReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::map<std::string, BoundStats> stats;
  std::vector<Counterexample> counterexamples;  // sorted by digest

  int total_violations() const {
    int v = 0;
    for (const auto& [id, s] : stats) v += s.violations;
    return v;
  }

  json to_json() const {
    json b = json::object();
    for (const auto& [id, s] : stats) {
      b[id] = {{"checked", s.checked}, {"skipped", s.skipped}, {"violations", s.violations}, {"errors", s.errors}};
    }
    json ces = json::array();
    for (const auto& c : counterexamples) {
      ces.push_back({{"bound", c.bound},
                     {"instance", c.instance},
                     {"lhs", io::rounded(c.lhs)},
                     {"rhs", io::rounded(c.rhs)},
                     {"slack", io::rounded(c.slack)},
                     {"hypotheses", c.hypotheses},
                     {"shrink_steps", c.shrink_steps},
                     {"digest", c.digest}});
    }
    json j{{"seed", seed}, {"trials", trials}, {"bounds", std::move(b)}, {"violations", total_violations()},
           {"counterexamples", std::move(ces)}};
    j["digest"] = digest(j);
    return j;
  }
};

namespace detail {

struct Outcome {
  std::string bound;
  enum class Kind { checked, skipped, violation } kind = Kind::skipped;
  int errors = 0;
  std::optional<BoundInstance> instance;
  std::string digest;
};

inline Outcome run_one(const FuzzConfig& cfg, int trial, const std::string& id) {
  Outcome out;
  out.bound = id;
  Rng r(stream_seed(cfg.seed, static_cast<std::uint64_t>(trial), fnv1a(id)));
  const Recipe rc = recipe_for(id);
  for (int attempt = 0; attempt < cfg.budget; ++attempt) {
    BoundInstance in;
    BoundReport rep;
    try {
      in = random_instance(r, rc, cfg, attempt);
      rep = check_bound(in, id, {cfg.tol});
    } catch (const Error&) {
      ++out.errors;
      continue;
    }
    if (!rep.hypotheses_hold()) continue;
    if (rep.holds) {
      out.kind = Outcome::Kind::checked;
    } else {
      out.kind = Outcome::Kind::violation;
      out.digest = digest(io::instance_to_json(in));
      out.instance = std::move(in);
    }
    return out;
  }
  return out;
}

}  // namespace detail

/// Runs every configured bound on `trials` independent draws. Trials run
/// in parallel; aggregation does not depend on their order.
inline FuzzReport fuzz(const FuzzConfig& cfg) {
  cfg.validate();
  std::vector<std::string> ids;
  for (const auto& b : cfg.bounds.empty() ? default_fuzz_bounds() : cfg.bounds) ids.push_back(canonical_bound_id(b));

  const int workers = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  auto work = [&](int lo, int hi) {
    std::vector<detail::Outcome> out;
    for (int t = lo; t < hi; ++t)
      for (const auto& id : ids) out.push_back(detail::run_one(cfg, t, id));
    return out;
  };
  std::vector<std::future<std::vector<detail::Outcome>>> jobs;
  const int chunk = (cfg.trials + workers - 1) / workers;
  for (int lo = 0; lo < cfg.trials; lo += chunk) {
    jobs.push_back(std::async(std::launch::async, work, lo, std::min(cfg.trials, lo + chunk)));
  }

  FuzzReport rep;
  rep.seed = cfg.seed;
  rep.trials = cfg.trials;
  for (const auto& id : ids) rep.stats[id];
  std::map<std::string, std::vector<detail::Outcome>> violations;
  for (auto& j : jobs)
    for (auto& o : j.get()) {
      BoundStats& s = rep.stats[o.bound];
      s.errors += o.errors;
      switch (o.kind) {
        case detail::Outcome::Kind::checked: ++s.checked; break;
        case detail::Outcome::Kind::skipped: ++s.skipped; break;
        case detail::Outcome::Kind::violation:
          ++s.checked;
          ++s.violations;
          violations[o.bound].push_back(std::move(o));
          break;
      }
    }

  for (auto& [id, list] : violations) {
    std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) { return x.digest < y.digest; });
    list.erase(std::unique(list.begin(), list.end(), [](const auto& x, const auto& y) { return x.digest == y.digest; }),
               list.end());
    if (static_cast<int>(list.size()) > cfg.max_counterexamples) list.resize(static_cast<std::size_t>(cfg.max_counterexamples));
    for (auto& o : list) {
      BoundInstance in = *o.instance;
      Counterexample c;
      c.bound = id;
      c.shrink_steps = cfg.shrink ? shrink(in, id, cfg.tol) : 0;
      const BoundReport br = check_bound(in, id, {cfg.tol});
      c.instance = io::instance_to_json(in);
      c.lhs = br.lhs.to_double();
      c.rhs = br.rhs.to_double();
      c.slack = br.slack;
      c.hypotheses = io::to_json(br)["hypotheses"];
      c.digest = digest(c.instance);
      rep.counterexamples.push_back(std::move(c));
    }
  }
  std::sort(rep.counterexamples.begin(), rep.counterexamples.end(),
            [](const Counterexample& x, const Counterexample& y) { return std::tie(x.digest, x.bound) < std::tie(y.digest, y.bound); });
  return rep;
}

// ---------------------------------------------------------------------------
// Witness sweeps

struct WitnessSweep {
  std::string bound;
  int pairs = 0;
  int built = 0;   // witness constructed and every hypothesis verified
  int equal = 0;   // of those, |slack| <= tol
  double worst = 0.0;
  std::vector<std::string> failures;  // digests of witnesses with a gap
};

/// Draws `pairs` (measure, A, H, op) tuples for bound `id`, builds the
/// equality witness where its side conditions hold, and checks |slack| on
/// every witness whose bound hypotheses verify.
inline WitnessSweep witness_sweep(const std::string& raw_id, std::uint64_t seed, int pairs, double tol = 1e-12) {
  static const Shape shapes[] = {Shape::nondecreasing, Shape::any,     Shape::continuous,
                                 Shape::quasiconvex,   Shape::quasiconcave, Shape::concave};
  const std::string id = canonical_bound_id(raw_id);
  const Recipe rc = recipe_for(id);
  WitnessSweep out;
  out.bound = id;
  out.pairs = pairs;
  for (int k = 0; k < pairs; ++k) {
    Rng r(stream_seed(seed, static_cast<std::uint64_t>(k), fnv1a("witness:" + id)));
    const int n = r.range(2, 6);
    const Subset a = random_subset(r, n);
    const MonotoneMeasure mu = random_measure(r, n, rc.kind, a);
    const PiecewiseMap h = id == "001" ? random_transform(r, Shape::real_nondecreasing) : random_transform(r, shapes[r.range(0, 5)]);
    const BinaryOpSpec op = id == "001" ? ops::min_op() : random_op(r);
    const MixedOpSpec star = r.coin(0.5) ? ops::plus() : ops::ovee_op();
    const Witness w = attainability_witness(id, mu, a, h, op, star);
    if (!w.ok) continue;
    const BoundReport rep = check_bound(*w.instance, id);
    if (!rep.evaluated || !rep.hypotheses_hold()) continue;
    ++out.built;
    const double gap = rep.lhs == rep.rhs ? 0.0 : std::fabs(rep.lhs.to_double() - rep.rhs.to_double());
    out.worst = std::max(out.worst, gap);
    if (gap <= tol) ++out.equal;
    else out.failures.push_back(digest(io::instance_to_json(*w.instance)));
  }
  return out;
}

}  // namespace sugeno::verify
