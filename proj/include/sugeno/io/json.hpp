#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sugeno/binops.hpp"
#include "sugeno/bounds.hpp"
#include "sugeno/error.hpp"
#include "sugeno/integrals.hpp"
#include "sugeno/measure.hpp"
#include "sugeno/piecewise.hpp"
#include "sugeno/profile.hpp"

namespace sugeno::io {

using nlohmann::json;

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::invalid_input, where + ": " + what);
}

// ---------------------------------------------------------------------------
// Numbers

/// Finite doubles as JSON numbers, infinities as "inf" / "-inf".
inline json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x == 0.0 ? 0.0 : x;  // no -0 in output
}

/// Rounded to 12 significant digits, for reports.
inline json rounded(double x) {
  if (!std::isfinite(x)) return number(x);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline double to_number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
    if (s == "-inf" || s == "-infinity") return -kInf;
  }
  bad(where, "expected a number or \"inf\"");
}

inline ExtReal to_ext(const json& j, const std::string& where) {
  const double v = to_number(j, where);
  if (v < 0) bad(where, "expected a nonnegative value");
  return ExtReal::from_double(v);
}

inline json number(const ExtReal& x) { return number(x.to_double()); }
inline json number(const SignedExtReal& x) { return number(x.to_double()); }

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

// ---------------------------------------------------------------------------
// Subsets (0-based element indices)

inline std::string subset_key(Subset s) {
  std::string out;
  for (int i = 0; i < 32; ++i)
    if (s.contains(i)) {
      if (!out.empty()) out += ",";
      out += std::to_string(i);
    }
  return out;
}

inline Subset parse_subset_key(const std::string& key, int n, const std::string& where) {
  Subset s;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      bad(where, "bad element '" + tok + "' in subset key '" + key + "'");
    }
    if (used != tok.size() || v < 0 || v >= n) bad(where, "element '" + tok + "' out of range in '" + key + "'");
    s.bits |= 1u << v;
    tok.clear();
  };
  for (char c : key) {
    if (c == ',') flush();
    else if (c == '{' || c == '}' || c == ' ') continue;
    else tok += c;
  }
  flush();
  return s;
}

inline Subset subset_from_list(const json& j, int n, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of element indices");
  Subset s;
  for (const auto& e : j) {
    if (!e.is_number_integer()) bad(where, "element indices must be integers");
    const int v = e.get<int>();
    if (v < 0 || v >= n) bad(where, "element " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
    s.bits |= 1u << v;
  }
  return s;
}

inline json subset_list(Subset s) {
  json out = json::array();
  for (int i = 0; i < 32; ++i)
    if (s.contains(i)) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Measures

/// Reads the measure of a discrete instance object: "n" plus either a
/// "measure" table keyed by comma-separated element lists (complete tables
/// become dense, partial ones sparse in "mode"), or "measure": "counting",
/// or "measure": {"additive": [w...]}.
inline MonotoneMeasure measure_from_json(const json& inst) {
  const json& jn = field(inst, "n", "instance");
  if (!jn.is_number_integer()) bad("instance.n", "expected an integer");
  const FiniteSpace sp(jn.get<int>());
  const json& m = field(inst, "measure", "instance");
  if (m.is_string()) {
    if (m.get<std::string>() == "counting") return MonotoneMeasure::counting(sp);
    bad("instance.measure", "unknown measure name");
  }
  if (!m.is_object()) bad("instance.measure", "expected an object");
  if (m.contains("additive")) {
    std::vector<double> w;
    for (const auto& x : m.at("additive")) w.push_back(to_number(x, "instance.measure.additive"));
    if (static_cast<int>(w.size()) != sp.size()) bad("instance.measure.additive", "needs n weights");
    return MonotoneMeasure::additive(w);
  }
  std::map<Subset, ExtReal> vals;
  for (const auto& [k, v] : m.items()) {
    const std::string where = "instance.measure[\"" + k + "\"]";
    const Subset s = parse_subset_key(k, sp.size(), where);
    if (vals.count(s)) bad(where, "duplicate subset");
    vals[s] = to_ext(v, where);
  }
  StorageMode mode = StorageMode::strict;
  if (inst.contains("mode")) {
    const auto s = inst.at("mode").get<std::string>();
    if (s == "closure") mode = StorageMode::closure;
    else if (s != "strict") bad("instance.mode", "expected \"strict\" or \"closure\"");
  }
  if (vals.size() + (vals.count(Subset{}) ? 0 : 1) == sp.subset_count()) {
    std::vector<ExtReal> dense(sp.subset_count());
    for (const auto& [s, v] : vals) dense[s.bits] = v;
    return MonotoneMeasure::dense(sp, std::move(dense));
  }
  return MonotoneMeasure::sparse(sp, std::move(vals), mode);
}

/// Writes "n", "measure" and (for sparse storage) "mode" into `inst`.
inline void measure_to_json(const MonotoneMeasure& mu, json& inst) {
  const FiniteSpace& sp = mu.space();
  inst["n"] = sp.size();
  json m = json::object();
  if (mu.is_dense()) {
    for (std::uint64_t b = 0; b < sp.subset_count(); ++b) {
      const Subset s{static_cast<std::uint32_t>(b)};
      m[subset_key(s)] = number(mu(s));
    }
  } else {
    for (const auto& [s, v] : mu.sparse_values()) m[subset_key(s)] = number(v);
    inst["mode"] = mu.mode() == StorageMode::closure ? "closure" : "strict";
  }
  inst["measure"] = std::move(m);
}

// ---------------------------------------------------------------------------
// Piecewise maps

inline const char* expr_name(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::constant: return "constant";
    case Expr::Kind::affine: return "affine";
    case Expr::Kind::quad: return "quad";
    case Expr::Kind::power: return "power";
  }
  return "constant";
}

inline const char* mono_name(Mono m) {
  return m == Mono::inc ? "inc" : (m == Mono::dec ? "dec" : "constant");
}

inline json interval_to_json(const Interval& iv) {
  return {{"lo", number(iv.lo)}, {"hi", number(iv.hi)}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

/// {"lo", "hi", "lo_closed", "hi_closed"} or [lo, hi] (closed).
inline Interval interval_from_json(const json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 2) bad(where, "interval array needs two endpoints");
    return {to_number(j[0], where), to_number(j[1], where), true, true};
  }
  Interval iv{to_number(field(j, "lo", where), where + ".lo"), to_number(field(j, "hi", where), where + ".hi"), true,
              true};
  if (j.contains("lo_closed")) iv.lo_closed = j.at("lo_closed").get<bool>();
  if (j.contains("hi_closed")) iv.hi_closed = j.at("hi_closed").get<bool>();
  if (std::isinf(iv.lo)) iv.lo_closed = true;
  if (std::isinf(iv.hi)) iv.hi_closed = true;
  return iv;
}

inline Domain domain_from(const json& j, const std::string& where) {
  if (!j.contains("domain")) return Domain::nonneg;
  const auto s = j.at("domain").get<std::string>();
  if (s == "nonneg") return Domain::nonneg;
  if (s == "real") return Domain::real;
  bad(where + ".domain", "expected \"nonneg\" or \"real\"");
}

/// Monotonicity of a segment inferred from its expression.
inline Mono infer_mono(const Expr& e, const Interval& iv, const std::string& where) {
  const double lo = std::isfinite(iv.lo) ? iv.lo : (std::isfinite(iv.hi) ? iv.hi - 1 : 0.0);
  const double hi = std::isfinite(iv.hi) ? iv.hi : lo + 1;
  switch (e.kind) {
    case Expr::Kind::constant: return Mono::constant;
    case Expr::Kind::affine: return e.p[1] > 0 ? Mono::inc : (e.p[1] < 0 ? Mono::dec : Mono::constant);
    case Expr::Kind::power: {
      const double s = e.p[0] * e.p[1];
      return s > 0 ? Mono::inc : (s < 0 ? Mono::dec : Mono::constant);
    }
    case Expr::Kind::quad: {
      if (e.p[2] != 0) {
        const double v = -e.p[1] / (2 * e.p[2]);
        if (v > iv.lo && v < iv.hi) bad(where, "quadratic vertex inside the segment; split it there");
      }
      const double d = e.derivative((lo + hi) / 2);
      return d > 0 ? Mono::inc : (d < 0 ? Mono::dec : Mono::constant);
    }
  }
  return Mono::constant;
}

inline PiecewiseMap map_from_json(const json& j, const std::string& where = "map");

inline PiecewiseMap template_map(const json& j, const std::string& where) {
  const std::string t = j.is_string() ? j.get<std::string>() : field(j, "template", where).get<std::string>();
  const json empty = json::object();
  const json& p = j.is_string() ? empty : j;
  auto num = [&](const char* key) { return to_number(field(p, key, where), where + "." + key); };
  const Domain d = j.is_string() ? Domain::nonneg : domain_from(j, where);
  if (t == "identity") return PiecewiseMap::identity(d);
  if (t == "constant") return PiecewiseMap::constant(num("k"), d);
  if (t == "affine") return PiecewiseMap::affine(num("a"), num("b"), d);
  if (t == "power") return PiecewiseMap::power(num("c"), num("alpha"));
  if (t == "quadratic") return PiecewiseMap::quadratic(num("a"), num("b"), num("c"), d);
  if (t == "positive_affine") return PiecewiseMap::positive_affine(num("m"), num("c"));
  if (t == "halves") {
    return PiecewiseMap::from_halves(map_from_json(field(p, "pos", where), where + ".pos"),
                                     map_from_json(field(p, "neg", where), where + ".neg"),
                                     p.contains("neg_scale") ? num("neg_scale") : -1.0);
  }
  bad(where, "unknown template '" + t + "'");
}

/// A template ({"template": name, params...} or a bare name) or explicit
/// segments {"domain", "segments": [{lo, hi, lo_closed?, hi_closed?,
/// expr|kind, p|params, mono?}]}. Inner segment ends default to open.
inline PiecewiseMap map_from_json(const json& j, const std::string& where) {
  if (j.is_string() || (j.is_object() && j.contains("template"))) return template_map(j, where);
  if (!j.is_object()) bad(where, "expected a map object");
  const Domain d = domain_from(j, where);
  std::vector<Segment> segs;
  const json& arr = field(j, "segments", where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = where + ".segments[" + std::to_string(i) + "]";
    const json& s = arr[i];
    Interval iv = interval_from_json(s, w);
    // segments partition the domain, so an unmarked inner end is open
    if (s.is_object() && !s.contains("hi_closed") && i + 1 < arr.size()) iv.hi_closed = false;
    const char* kind_key = s.contains("kind") ? "kind" : "expr";
    const char* param_key = s.contains("params") ? "params" : "p";
    const std::string kind = field(s, kind_key, w).get<std::string>();
    std::array<double, 4> p{0, 0, 0, 0};
    const json& jp = field(s, param_key, w);
    if (!jp.is_array() || jp.size() > 4) bad(w + "." + param_key, "expected up to four parameters");
    for (std::size_t k = 0; k < jp.size(); ++k) p[k] = to_number(jp[k], w + "." + param_key);
    Expr e;
    if (kind == "constant" || kind == "const") e = Expr::constant(p[0]);
    else if (kind == "affine") e = Expr::affine(p[0], p[1]);
    else if (kind == "quad") e = Expr::quad(p[0], p[1], p[2]);
    else if (kind == "power") e = Expr::power(p[0], p[1], p[2], p[3]);
    else bad(w + "." + kind_key, "unknown expression kind '" + kind + "'");
    Mono m = infer_mono(e, iv, w);
    if (s.contains("mono")) {
      const auto ms = s.at("mono").get<std::string>();
      if (ms == "inc") m = Mono::inc;
      else if (ms == "dec") m = Mono::dec;
      else if (ms == "constant" || ms == "const") m = Mono::constant;
      else bad(w + ".mono", "expected inc, dec or constant");
    }
    segs.push_back({iv, e, m});
  }
  try {
    return PiecewiseMap(std::move(segs), d);
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

inline json map_to_json(const PiecewiseMap& h) {
  json segs = json::array();
  for (const auto& s : h.segments()) {
    json js = interval_to_json(s.iv);
    js["expr"] = expr_name(s.expr.kind);
    js["p"] = {number(s.expr.p[0]), number(s.expr.p[1]), number(s.expr.p[2]), number(s.expr.p[3])};
    js["mono"] = mono_name(s.mono);
    segs.push_back(std::move(js));
  }
  return {{"domain", h.domain() == Domain::real ? "real" : "nonneg"}, {"segments", std::move(segs)}};
}

// ---------------------------------------------------------------------------
// Interval instances and profiles

inline IntervalFamily family_from_json(const json& j, const std::string& where) {
  const auto name = field(j, "family", where).get<std::string>();
  if (name == "lebesgue") return IntervalFamily::lebesgue();
  if (name == "counting") return IntervalFamily::counting();
  if (name == "power") return IntervalFamily::power(to_number(field(j, "q", where), where + ".q"));
  bad(where + ".family", "expected lebesgue, power or counting");
}

inline IntervalInstance interval_instance_from_json(const json& j, const std::string& where = "interval") {
  return {family_from_json(j, where), interval_from_json(field(j, "A", where), where + ".A"),
          j.contains("f") ? map_from_json(j.at("f"), where + ".f") : PiecewiseMap::identity(Domain::real)};
}

inline json interval_instance_to_json(const IntervalInstance& in) {
  json j;
  switch (in.family.kind) {
    case IntervalFamily::Kind::lebesgue: j["family"] = "lebesgue"; break;
    case IntervalFamily::Kind::power:
      j["family"] = "power";
      j["q"] = number(in.family.q);
      break;
    case IntervalFamily::Kind::counting: j["family"] = "counting"; break;
  }
  j["A"] = interval_to_json(in.a);
  j["f"] = map_to_json(in.f);
  return j;
}

/// {"G": map, "upper": T}: the profile t -> G(t) on [0, T].
inline SurvivalProfile profile_from_json(const json& j) {
  return profile_from_map(map_from_json(field(j, "G", "profile"), "profile.G"),
                          to_number(field(j, "upper", "profile"), "profile.upper"));
}

// ---------------------------------------------------------------------------
// Bound instances

inline SignedFunction function_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of values");
  std::vector<SignedExtReal> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double x = to_number(j[i], where + "[" + std::to_string(i) + "]");
    if (std::isinf(x)) v.push_back(x > 0 ? SignedExtReal::pos_infinity() : SignedExtReal::neg_infinity());
    else v.emplace_back(x);
  }
  return SignedFunction(std::move(v));
}

inline json function_to_json(const SignedFunction& f) {
  json out = json::array();
  for (const auto& v : f.values()) out.push_back(number(v));
  return out;
}

inline BinaryOpSpec binary_op(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected an operation name");
  try {
    return builtin_binary(j.get<std::string>());
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

/// Aux operations (t-norms) are stored by their t-norm name.
inline std::string aux_name(const BinaryOpSpec& op) { return op.name; }

/// Parses a discrete instance ({"n", "measure", "A", "f", ...}) or an
/// interval one ({"interval": {...}}), plus the optional transform and
/// operations.
inline BoundInstance instance_from_json(const json& j) {
  if (!j.is_object()) bad("instance", "expected an object");
  BoundInstance in;
  if (j.contains("interval")) {
    in.interval = interval_instance_from_json(j.at("interval"));
  } else {
    in.mu = measure_from_json(j);
    const int n = in.mu->space().size();
    in.a = j.contains("A") ? subset_from_list(j.at("A"), n, "instance.A") : in.mu->space().full();
    in.f = function_from_json(field(j, "f", "instance"), "instance.f");
    if (static_cast<int>(in.f.size()) != n) bad("instance.f", "needs n values");
  }
  if (j.contains("H")) in.h = map_from_json(j.at("H"), "instance.H");
  if (j.contains("op")) in.op = binary_op(j.at("op"), "instance.op");
  if (j.contains("companion")) in.companion = binary_op(j.at("companion"), "instance.companion");
  if (j.contains("aux")) {
    try {
      in.aux = tnorm(j.at("aux").get<std::string>());
    } catch (const Error& e) {
      bad("instance.aux", e.what());
    }
  }
  if (j.contains("star")) {
    try {
      in.star = builtin_mixed(j.at("star").get<std::string>());
    } catch (const Error& e) {
      bad("instance.star", e.what());
    }
  }
  if (j.contains("slope")) in.slope = to_number(j.at("slope"), "instance.slope");
  if (j.contains("c_pivot")) in.c_pivot = to_number(j.at("c_pivot"), "instance.c_pivot");
  if (j.contains("a0")) in.a0 = to_number(j.at("a0"), "instance.a0");
  if (j.contains("c_grid")) {
    std::vector<double> g;
    for (const auto& x : j.at("c_grid")) g.push_back(to_number(x, "instance.c_grid"));
    in.c_grid = std::move(g);
  }
  if (j.contains("profile_tol")) in.profile_tol = to_number(j.at("profile_tol"), "instance.profile_tol");
  return in;
}

inline json instance_to_json(const BoundInstance& in) {
  json j = json::object();
  if (in.interval) {
    j["interval"] = interval_instance_to_json(*in.interval);
  } else {
    measure_to_json(*in.mu, j);
    j["A"] = subset_list(in.a);
    j["f"] = function_to_json(in.f);
  }
  j["H"] = map_to_json(in.h);
  j["op"] = in.op.name;
  if (in.companion) j["companion"] = in.companion->name;
  if (in.aux) j["aux"] = aux_name(*in.aux);
  j["star"] = in.star.name;
  if (in.slope) j["slope"] = number(*in.slope);
  if (in.c_pivot) j["c_pivot"] = number(*in.c_pivot);
  if (in.a0) j["a0"] = number(*in.a0);
  if (in.c_grid) {
    json g = json::array();
    for (double c : *in.c_grid) g.push_back(number(c));
    j["c_grid"] = std::move(g);
  }
  j["profile_tol"] = in.profile_tol;
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path, e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const IntegralResult& r) {
  json j{{"value", rounded(r.value.to_double())}, {"mode", to_string(r.mode)}};
  j["error_bound"] = r.error_bound ? rounded(*r.error_bound) : json(nullptr);
  j["argmax_t"] = rounded(r.argmax_t.to_double());
  return j;
}

inline json to_json(const BoundReport& r) {
  json hyps = json::array();
  for (const auto& h : r.hypotheses) hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"detail", h.detail}});
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = rounded(v);
  return {{"id", r.id},
          {"direction", to_string(r.direction)},
          {"lhs", rounded(r.lhs.to_double())},
          {"rhs", rounded(r.rhs.to_double())},
          {"slack", rounded(r.slack)},
          {"holds", r.holds},
          {"hypotheses_hold", r.hypotheses_hold()},
          {"evaluated", r.evaluated},
          {"note", r.note},
          {"hypotheses", std::move(hyps)},
          {"details", std::move(details)}};
}

}  // namespace sugeno::io
