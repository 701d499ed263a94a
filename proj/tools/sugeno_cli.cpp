// Command-line front end: integrate, bound, fuzz, verify, reproduce.
//
// Exit codes: 0 success, 1 malformed input, 2 hypothesis or domain error
// (including a bound whose hypotheses fail), 3 violation or failed check.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sugeno.hpp"

namespace {

using nlohmann::json;
using namespace sugeno;

enum ExitCode : int { kOk = 0, kMalformed = 1, kHypothesis = 2, kViolation = 3 };

struct Global {
  double tol = 1e-9;
  std::uint64_t seed = 1;
  bool pretty = false;
  std::string json_out;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

void emit(const Global& g, const json& j, const std::string& table) {
  if (g.pretty) {
    std::cout << table;
  } else {
    std::cout << j.dump() << "\n";
  }
  if (!g.json_out.empty()) {
    std::ofstream out(g.json_out);
    if (!out) throw Error(ErrorKind::invalid_input, g.json_out + ": cannot write file");
    out << j.dump(2) << "\n";
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------------------
// integrate

struct IntegrateArgs {
  std::string op = "min";
  std::string instance;
  std::string profile;
  bool symmetric = false;
  std::string star = "plus";
  std::string nu;
};

DiscreteFunction nonnegative(const SignedFunction& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].sign() < 0) throw Error(ErrorKind::domain, "f takes negative values; use --symmetric");
  return split_parts(f).pos;
}

int cmd_integrate(const Global& g, const IntegrateArgs& a) {
  const BinaryOpSpec op = builtin_binary(a.op);
  json out;
  std::string table;
  if (!a.profile.empty()) {
    const SurvivalProfile prof = io::profile_from_json(io::load_json_file(a.profile));
    out = io::to_json(integrate_profile(op, prof, g.tol));
  } else {
    if (a.instance.empty()) throw Error(ErrorKind::invalid_input, "integrate needs --instance or --profile");
    const json j = io::load_json_file(a.instance);
    const BoundInstance in = io::instance_from_json(j);
    if (a.symmetric) {
      const MixedOpSpec star = builtin_mixed(a.star);
      ExtReal pos, neg;
      if (in.interval) {
        if (!a.nu.empty()) throw Error(ErrorKind::invalid_input, "--nu needs a discrete instance");
        const PiecewiseMap id = PiecewiseMap::identity();
        pos = integrate_profile(op, positive_part_profile(*in.interval, id), g.tol).value;
        neg = integrate_profile(op, negative_part_profile(*in.interval, id), g.tol).value;
      } else {
        const SignedParts parts = split_parts(in.f);
        std::optional<MonotoneMeasure> nu;
        if (!a.nu.empty()) {
          nu = io::measure_from_json(io::load_json_file(a.nu));
          if (nu->space().size() != in.mu->space().size()) {
            throw Error(ErrorKind::invalid_input, a.nu + ": nu must live on the same space as mu");
          }
        }
        pos = generalized_integral(op, *in.mu, in.a, parts.pos).value;
        neg = generalized_integral(op, nu ? *nu : *in.mu, in.a, parts.neg).value;
      }
      const SignedExtReal v = join_parts(star, pos, neg);
      out = {{"value", io::rounded(v.to_double())},
             {"star", star.name},
             {"op", op.name},
             {"positive", io::rounded(pos.to_double())},
             {"negative", io::rounded(neg.to_double())}};
    } else if (in.interval) {
      out = io::to_json(integrate_profile(op, profile_of(*in.interval), g.tol));
    } else {
      out = io::to_json(generalized_integral(op, *in.mu, in.a, nonnegative(in.f)));
    }
  }
  std::ostringstream t;
  for (const auto& [k, v] : out.items()) t << pad(k, 14) << (v.is_number() ? num(v.get<double>()) : v.dump()) << "\n";
  emit(g, out, t.str());
  return kOk;
}

// ---------------------------------------------------------------------------
// bound

int cmd_bound(const Global& g, const std::string& id, const std::string& path) {
  const BoundInstance in = io::instance_from_json(io::load_json_file(path));
  const BoundReport r = check_bound(in, id, {g.tol});
  std::ostringstream t;
  t << "bound      " << r.id << " (" << to_string(r.direction) << ")\n";
  if (r.evaluated) {
    t << "lhs        " << num(r.lhs.to_double()) << "\n";
    t << "rhs        " << num(r.rhs.to_double()) << "\n";
    t << "slack      " << num(r.slack) << "\n";
    t << "holds      " << (r.holds ? "yes" : "NO") << "\n";
  } else {
    t << "not evaluated: " << r.note << "\n";
  }
  t << "hypotheses\n";
  for (const auto& h : r.hypotheses) {
    t << "  " << pad(h.name, 28) << (h.holds ? "ok" : "FAILS");
    if (!h.detail.empty()) t << "  " << h.detail;
    t << "\n";
  }
  for (const auto& [k, v] : r.details) t << "  " << pad(k, 28) << num(v) << "\n";
  emit(g, io::to_json(r), t.str());
  if (!r.hypotheses_hold()) return kHypothesis;
  return r.holds ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// fuzz

struct FuzzArgs {
  int trials = 1000;
  std::string bounds;
  std::string kind;
  int n_min = 2;
  int n_max = 6;
  int threads = 0;
  int max_counterexamples = 10;
  bool no_shrink = false;
};

int cmd_fuzz(const Global& g, const FuzzArgs& a) {
  verify::FuzzConfig cfg;
  cfg.seed = g.seed;
  cfg.trials = a.trials;
  cfg.bounds = split_list(a.bounds);
  if (!a.kind.empty()) cfg.kind = verify::parse_measure_kind(a.kind);
  cfg.n_min = a.n_min;
  cfg.n_max = a.n_max;
  cfg.threads = a.threads;
  cfg.max_counterexamples = a.max_counterexamples;
  cfg.shrink = !a.no_shrink;
  cfg.tol = g.tol;
  const verify::FuzzReport rep = verify::fuzz(cfg);
  const json j = rep.to_json();
  std::ostringstream t;
  t << "seed " << rep.seed << ", " << rep.trials << " trials, digest " << j["digest"].get<std::string>() << "\n";
  t << pad("bound", 14) << pad("checked", 10) << pad("skipped", 10) << pad("errors", 10) << "violations\n";
  for (const auto& [id, s] : rep.stats) {
    t << pad(id, 14) << pad(std::to_string(s.checked), 10) << pad(std::to_string(s.skipped), 10)
      << pad(std::to_string(s.errors), 10) << s.violations << "\n";
  }
  for (const auto& c : rep.counterexamples) {
    t << "\ncounterexample for " << c.bound << ": lhs " << num(c.lhs) << ", rhs " << num(c.rhs) << ", "
      << c.shrink_steps << " shrink steps\n  " << c.instance.dump() << "\n";
  }
  emit(g, j, t.str());
  return rep.total_violations() > 0 ? kViolation : kOk;
}

// ---------------------------------------------------------------------------
// verify

json subset_json(std::optional<Subset> s) { return s ? io::subset_list(*s) : json(nullptr); }

int cmd_verify(const Global& g, const std::string& predicate, const std::string& a_list, const std::string& path) {
  const json j = io::load_json_file(path);
  const MonotoneMeasure mu = io::measure_from_json(j);
  const int n = mu.space().size();
  json out{{"predicate", predicate}};
  bool holds = true;
  if (predicate == "monotone") {
    const ValidationReport v = validate_monotone(mu);
    holds = v.valid();
    out["empty_is_zero"] = v.empty_is_zero;
    json viol = json::array();
    for (const auto& m : v.violations) viol.push_back({{"smaller", io::subset_list(m.smaller)}, {"larger", io::subset_list(m.larger)}});
    out["violations"] = std::move(viol);
  } else if (predicate == "subadditive" || predicate == "superadditive") {
    const verify::PredicateResult r = predicate == "subadditive" ? verify::is_subadditive(mu) : verify::is_superadditive(mu);
    holds = r.holds;
    out["witness"] = {{"B", subset_json(r.b)}, {"C", subset_json(r.c)}};
  } else if (predicate == "weakly-subadditive" || predicate == "weakly-superadditive") {
    Subset a = mu.space().full();
    if (!a_list.empty()) {
      json list = json::array();
      for (const auto& s : split_list(a_list)) {
        try {
          list.push_back(std::stoi(s));
        } catch (const std::exception&) {
          throw Error(ErrorKind::invalid_input, "--A: '" + s + "' is not an index");
        }
      }
      a = io::subset_from_list(list, n, "--A");
    } else if (j.contains("A")) {
      a = io::subset_from_list(j.at("A"), n, "instance.A");
    }
    const verify::PredicateResult r = predicate == "weakly-subadditive" ? verify::is_weakly_subadditive(mu, a)
                                                                         : verify::is_weakly_superadditive(mu, a);
    holds = r.holds;
    out["A"] = io::subset_list(a);
    out["witness"] = {{"B", subset_json(r.b)}};
  } else {
    throw Error(ErrorKind::invalid_input, "unknown predicate '" + predicate + "'");
  }
  out["holds"] = holds;
  std::ostringstream t;
  t << predicate << ": " << (holds ? "holds" : "fails");
  if (out.contains("witness") && !holds) t << " (witness " << out["witness"].dump() << ")";
  t << "\n";
  emit(g, out, t.str());
  return kOk;
}

// ---------------------------------------------------------------------------
// reproduce

int cmd_reproduce(const Global& g, const std::string& which, std::optional<double> q) {
  std::vector<std::string> ids;
  if (which == "all") {
    ids = repro::fixture_ids();
  } else {
    ids.push_back(which);
  }
  json arr = json::array();
  std::ostringstream t;
  bool all_pass = true;
  for (const auto& id : ids) {
    const repro::FixtureResult r = repro::run_fixture(id, id == "ex2_9" ? q : std::nullopt);
    all_pass = all_pass && r.passed();
    arr.push_back(repro::to_json(r));
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f s", r.seconds);
    t << pad(r.id, 12) << (r.passed() ? "PASS" : "FAIL") << "  (" << secs << ")\n";
    for (const auto& c : r.checks) {
      t << "  " << (c.passed ? "ok  " : "FAIL") << "  " << pad(c.name, 46) << pad(num(c.actual), 18) << "expected "
        << pad(num(c.expected), 18) << "tol " << num(c.tol) << "   [" << c.reference << "]\n";
    }
    for (const auto& note : r.notes) t << "  note: " << note << "\n";
  }
  t << (all_pass ? "all fixtures pass\n" : "some fixtures FAIL\n");
  json out = ids.size() == 1 ? arr[0] : json{{"fixtures", arr}, {"passed", all_pass}};
  emit(g, out, t.str());
  return all_pass ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Sugeno-type integrals, Jensen-type bounds and their verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--tol", g.tol, "Numeric tolerance for profile searches and bound checks")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized commands")->capture_default_str();
  app.add_flag("--pretty", g.pretty, "Print a human-readable table instead of JSON");
  app.add_option("--json-out", g.json_out, "Also write the JSON report to this file");

  IntegrateArgs ia;
  auto* integrate = app.add_subcommand("integrate", "Generalized integral of an instance or a profile");
  integrate->add_option("--op", ia.op, "min | product | ceilmin | floormin | qconj:<tnorm> | semicopula:<tnorm>")
      ->capture_default_str();
  integrate->add_option("--instance", ia.instance, "Instance JSON file");
  integrate->add_option("--profile", ia.profile, "Profile JSON file {\"G\": map, \"upper\": T}");
  integrate->add_flag("--symmetric", ia.symmetric, "Signed integral: positive part star (-negative part)");
  integrate->add_option("--star", ia.star, "plus | ovee")->capture_default_str();
  integrate->add_option("--nu", ia.nu, "Measure JSON file for the negative part");

  std::string bound_id, bound_instance;
  auto* bound = app.add_subcommand("bound", "Evaluate one bound on an instance");
  bound->add_option("--id", bound_id, "Bound id")->required();
  bound->add_option("--instance", bound_instance, "Instance JSON file")->required();

  FuzzArgs fa;
  auto* fuzz = app.add_subcommand("fuzz", "Randomized search for bound violations");
  fuzz->add_option("--trials", fa.trials, "Trials per bound")->capture_default_str();
  fuzz->add_option("--bounds", fa.bounds, "Comma-separated bound ids (default: every sound bound)");
  fuzz->add_option("--kind", fa.kind, "general | subadditive | superadditive | weakly_sub | weakly_super | additive");
  fuzz->add_option("--n-min", fa.n_min, "Smallest ground set")->capture_default_str();
  fuzz->add_option("--n-max", fa.n_max, "Largest ground set")->capture_default_str();
  fuzz->add_option("--threads", fa.threads, "Worker threads, 0 for all cores")->capture_default_str();
  fuzz->add_option("--max-counterexamples", fa.max_counterexamples, "Kept per bound")->capture_default_str();
  fuzz->add_flag("--no-shrink", fa.no_shrink, "Report counterexamples without shrinking");

  std::string predicate, a_list, verify_instance;
  auto* verify_cmd = app.add_subcommand("verify", "Check a measure predicate");
  verify_cmd->add_option("--predicate", predicate,
                     "monotone | subadditive | superadditive | weakly-subadditive | weakly-superadditive")
      ->required();
  verify_cmd->add_option("--A", a_list, "Comma-separated 0-based indices of A (default: the instance's A or X)");
  verify_cmd->add_option("--instance", verify_instance, "Instance or measure JSON file")->required();

  std::string fixture = "all";
  std::optional<double> q;
  auto* reproduce = app.add_subcommand("reproduce", "Run worked-example fixtures");
  reproduce->add_option("id", fixture, "Fixture id or 'all'")->capture_default_str();
  reproduce->add_option("--q", q, "Exponent for ex2_9 (default: 0.5, 1 and 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*integrate) return cmd_integrate(g, ia);
    if (*bound) return cmd_bound(g, bound_id, bound_instance);
    if (*fuzz) return cmd_fuzz(g, fa);
    if (*verify_cmd) return cmd_verify(g, predicate, a_list, verify_instance);
    if (*reproduce) return cmd_reproduce(g, fixture, q);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::invalid_input ? kMalformed : kHypothesis;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kMalformed;
  }
  return kOk;
}
