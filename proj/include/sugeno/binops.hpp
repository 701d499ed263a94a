#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sugeno/error.hpp"
#include "sugeno/ext_real.hpp"

namespace sugeno {

/// Structural properties an operation declares about itself. Continuity is
/// trusted as declared: sampling can only falsify it.
struct OpFlags {
  bool nondecreasing = false;
  bool zero_absorbing = false;    // a o 0 = 0
  bool left_cont_first = false;   // x -> x o y left-continuous
  bool right_cont_first = false;  // x -> x o y right-continuous
  bool left_cont_second = false;  // y -> x o y left-continuous
  bool subdistributive_add = false;  // (a + b) o c <= a o c + b o c
  bool associative = false;
  std::optional<std::vector<double>> idempotent_on;  // a o a = a on these values
};

/// Nondecreasing binary operation on [0, inf]^2.
struct BinaryOpSpec {
  std::string name;
  std::function<ExtReal(const ExtReal&, const ExtReal&)> eval;
  OpFlags flags;

  ExtReal operator()(const ExtReal& a, const ExtReal& b) const { return eval(a, b); }
};

/// Nondecreasing map [0, inf] x [-inf, 0] -> [-inf, inf] that joins the two
/// halves of a symmetric integral.
struct MixedOpSpec {
  std::string name;
  std::function<SignedExtReal(const SignedExtReal&, const SignedExtReal&)> eval;
  bool nondecreasing = true;

  SignedExtReal operator()(const SignedExtReal& a, const SignedExtReal& b) const { return eval(a, b); }
};

namespace ops {

inline ExtReal clamp1(const ExtReal& a) { return a > ExtReal(1.0) ? ExtReal(1.0) : a; }

inline BinaryOpSpec min_op() {
  return {"min", [](const ExtReal& a, const ExtReal& b) { return min(a, b); },
          OpFlags{true, true, true, true, true, true, true, std::nullopt}};
}

/// Product with inf * 0 = 0.
inline BinaryOpSpec product() {
  return {"product", [](const ExtReal& a, const ExtReal& b) { return a * b; },
          OpFlags{true, true, true, true, true, true, true, std::nullopt}};
}

/// Lukasiewicz t-norm (a + b - 1) v 0, inputs clamped at 1.
inline BinaryOpSpec lukasiewicz() {
  return {"lukasiewicz",
          [](const ExtReal& a, const ExtReal& b) {
            const double x = clamp1(a).value(), y = clamp1(b).value();
            // exact at the neutral element, where x + 1 - 1 may round
            if (x == 1.0) return ExtReal(y);
            if (y == 1.0) return ExtReal(x);
            const double s = (x + y) - 1.0;
            return ExtReal(s > 0 ? s : 0.0);
          },
          OpFlags{true, true, true, true, true, false, true, std::nullopt}};
}

/// t-norm/semicopula versions of min and product, clamped to [0, 1].
inline BinaryOpSpec unit_min() {
  return {"min", [](const ExtReal& a, const ExtReal& b) { return min(clamp1(a), clamp1(b)); },
          OpFlags{true, true, true, true, true, false, true, std::nullopt}};
}
inline BinaryOpSpec unit_product() {
  return {"product", [](const ExtReal& a, const ExtReal& b) { return clamp1(a) * clamp1(b); },
          OpFlags{true, true, true, true, true, false, true, std::nullopt}};
}

/// ceil(a) ^ b: nondecreasing and left-continuous in a, not right-continuous.
inline BinaryOpSpec ceil_min() {
  return {"ceilmin",
          [](const ExtReal& a, const ExtReal& b) {
            if (a.is_inf()) return b;
            return min(ExtReal(std::ceil(a.value())), b);
          },
          OpFlags{true, true, true, false, true, false, false, std::nullopt}};
}

/// floor(a) ^ b: nondecreasing and right-continuous in a, not left-continuous.
inline BinaryOpSpec floor_min() {
  return {"floormin",
          [](const ExtReal& a, const ExtReal& b) {
            if (a.is_inf()) return b;
            return min(ExtReal(std::floor(a.value())), b);
          },
          OpFlags{true, true, false, true, true, false, false, std::nullopt}};
}

inline MixedOpSpec plus() {
  return {"plus", [](const SignedExtReal& a, const SignedExtReal& b) { return a + b; }, true};
}

/// Symmetric maximum sign(a + b)(|a| v |b|); 0 when |a| = |b| with opposite signs.
inline SignedExtReal ovee(const SignedExtReal& a, const SignedExtReal& b) {
  const ExtReal aa = a.abs();
  const ExtReal ab = b.abs();
  if (aa == ab) {
    if (a.sign() == b.sign()) return a;
    return SignedExtReal(0.0);
  }
  return aa > ab ? a : b;
}

inline MixedOpSpec ovee_op() { return {"ovee", [](const SignedExtReal& a, const SignedExtReal& b) { return ovee(a, b); }, true}; }

}  // namespace ops

/// a o b = (b ^ 1) (x) (a ^ 1) for a fuzzy conjunction (x) on [0,1]^2.
/// The result is zero-absorbing because 0 <= 0 (x) a <= 0 (x) 1 = 0.
inline BinaryOpSpec fuzzy_conjunction_to_circ(const BinaryOpSpec& conj) {
  const ExtReal zero(0.0), one(1.0);
  auto bad = [&](const char* what) {
    throw Error(ErrorKind::invalid_input, "'" + conj.name + "' is not a fuzzy conjunction: " + what);
  };
  if (conj(one, one) != one) bad("1 (x) 1 != 1");
  if (!conj(zero, one).is_zero() || !conj(one, zero).is_zero() || !conj(zero, zero).is_zero()) {
    bad("boundary values at 0 are not 0");
  }
  const double grid[] = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  for (double a : grid)
    for (double b : grid)
      for (double c : grid)
        if (a <= c && (conj(ExtReal(a), ExtReal(b)) > conj(ExtReal(c), ExtReal(b)) ||
                       conj(ExtReal(b), ExtReal(a)) > conj(ExtReal(b), ExtReal(c)))) {
          bad("not nondecreasing");
        }
  OpFlags f;
  f.nondecreasing = true;
  f.zero_absorbing = true;
  f.left_cont_first = conj.flags.left_cont_second;
  f.left_cont_second = conj.flags.left_cont_first;
  return {"qconj:" + conj.name,
          [conj](const ExtReal& a, const ExtReal& b) { return conj(ops::clamp1(b), ops::clamp1(a)); }, f};
}

/// a o b = S(a ^ 1, b ^ 1) for a semicopula S; used by the seminormed integral.
inline BinaryOpSpec semicopula_to_circ(const BinaryOpSpec& s) {
  const double grid[] = {0.0, 0.1, 0.25, 0.5, 0.75, 1.0};
  for (double a : grid) {
    const ExtReal x(a);
    if (s(x, ExtReal(1.0)) != x || s(ExtReal(1.0), x) != x) {
      throw Error(ErrorKind::invalid_input, "'" + s.name + "' is not a semicopula: 1 is not neutral");
    }
  }
  OpFlags f = s.flags;
  f.subdistributive_add = false;
  f.associative = false;
  return {"semicopula:" + s.name,
          [s](const ExtReal& a, const ExtReal& b) { return s(ops::clamp1(a), ops::clamp1(b)); }, f};
}

/// t-norms usable as fuzzy conjunctions or semicopulas.
inline BinaryOpSpec tnorm(std::string_view name) {
  if (name == "min") return ops::unit_min();
  if (name == "product") return ops::unit_product();
  if (name == "lukasiewicz") return ops::lukasiewicz();
  throw Error(ErrorKind::invalid_input, "unknown t-norm '" + std::string(name) + "'");
}

using AnyOp = std::variant<BinaryOpSpec, MixedOpSpec>;

/// Resolves min | product | ceilmin | floormin | qconj:<tnorm> |
/// semicopula:<name> | plus | ovee.
inline AnyOp builtin(std::string_view name) {
  if (name == "min") return ops::min_op();
  if (name == "product") return ops::product();
  if (name == "ceilmin") return ops::ceil_min();
  if (name == "floormin") return ops::floor_min();
  if (name == "plus") return ops::plus();
  if (name == "ovee") return ops::ovee_op();
  if (name.starts_with("qconj:")) return fuzzy_conjunction_to_circ(tnorm(name.substr(6)));
  if (name.starts_with("semicopula:")) return semicopula_to_circ(tnorm(name.substr(11)));
  throw Error(ErrorKind::invalid_input, "unknown operation '" + std::string(name) + "'");
}

inline BinaryOpSpec builtin_binary(std::string_view name) {
  AnyOp op = builtin(name);
  if (auto* b = std::get_if<BinaryOpSpec>(&op)) return *b;
  throw Error(ErrorKind::invalid_input, "'" + std::string(name) + "' is a mixed-sign operation");
}

inline MixedOpSpec builtin_mixed(std::string_view name) {
  AnyOp op = builtin(name);
  if (auto* m = std::get_if<MixedOpSpec>(&op)) return *m;
  throw Error(ErrorKind::invalid_input, "'" + std::string(name) + "' is not a mixed-sign operation");
}

struct FlagCheck {
  std::string flag;
  bool passed = true;
  std::string witness;  // first falsifying sample, empty when passed
};

struct FlagReport {
  std::vector<FlagCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const FlagCheck* find(std::string_view flag) const {
    for (const auto& c : checks)
      if (c.flag == flag) return &c;
    return nullptr;
  }
};

/// Tests every declared flag on the grid. Monotonicity is checked pairwise,
/// subdistributivity and associativity on triples. Continuity is probed
/// with a small step at finite grid points and can only be falsified.
inline FlagReport check_flags(const BinaryOpSpec& op, const std::vector<ExtReal>& grid) {
  FlagReport rep;
  auto describe = [](std::initializer_list<ExtReal> xs) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const auto& x : xs) {
      if (!first) os << ", ";
      os << x;
      first = false;
    }
    os << ")";
    return os.str();
  };
  auto run = [&](const char* name, bool declared, auto&& body) {
    if (!declared) return;
    FlagCheck c{name, true, {}};
    body(c);
    rep.checks.push_back(std::move(c));
  };
  auto fail = [](FlagCheck& c, std::string w) {
    if (c.passed) c.witness = std::move(w);
    c.passed = false;
  };

  run("nondecreasing", op.flags.nondecreasing, [&](FlagCheck& c) {
    for (const auto& a : grid)
      for (const auto& b : grid)
        for (const auto& x : grid) {
          if (a <= b && op(a, x) > op(b, x)) fail(c, describe({a, b, x}));
          if (a <= b && op(x, a) > op(x, b)) fail(c, describe({x, a, b}));
        }
  });
  run("zero_absorbing", op.flags.zero_absorbing, [&](FlagCheck& c) {
    for (const auto& a : grid)
      if (!op(a, ExtReal()).is_zero()) fail(c, describe({a}));
  });
  run("subdistributive_add", op.flags.subdistributive_add, [&](FlagCheck& c) {
    for (const auto& a : grid)
      for (const auto& b : grid)
        for (const auto& x : grid)
          if (op(a + b, x) > op(a, x) + op(b, x)) fail(c, describe({a, b, x}));
  });
  run("associative", op.flags.associative, [&](FlagCheck& c) {
    for (const auto& a : grid)
      for (const auto& b : grid)
        for (const auto& x : grid) {
          const double l = op(op(a, b), x).to_double();
          const double r = op(a, op(b, x)).to_double();
          if (!(l == r || std::fabs(l - r) <= 1e-12 * (1.0 + std::fabs(l)))) fail(c, describe({a, b, x}));
        }
  });
  auto probe = [&](FlagCheck& c, bool first_arg, double dir) {
    for (const auto& a : grid)
      for (const auto& b : grid) {
        if (a.is_inf() || b.is_inf()) continue;
        const double x = first_arg ? a.value() : b.value();
        const double step = 1e-9 * std::max(1.0, x);
        if (x + dir * step < 0) continue;
        const ExtReal moved(x + dir * step);
        const double at = op(a, b).to_double();
        const double near = (first_arg ? op(moved, b) : op(a, moved)).to_double();
        if (std::fabs(at - near) > 1e-6 * (1.0 + std::fabs(at))) fail(c, describe({a, b}));
      }
  };
  run("left_cont_first", op.flags.left_cont_first, [&](FlagCheck& c) { probe(c, true, -1.0); });
  run("right_cont_first", op.flags.right_cont_first, [&](FlagCheck& c) { probe(c, true, +1.0); });
  run("left_cont_second", op.flags.left_cont_second, [&](FlagCheck& c) { probe(c, false, -1.0); });
  run("idempotent_on", op.flags.idempotent_on.has_value(), [&](FlagCheck& c) {
    for (double v : *op.flags.idempotent_on)
      if (op(ExtReal(v), ExtReal(v)) != ExtReal(v)) fail(c, describe({ExtReal(v)}));
  });
  return rep;
}

/// Monotonicity of a mixed operation on grid(nonneg) x -grid. Pairs where
/// the operation is undefined (inf + -inf for plus) are skipped.
inline FlagReport check_flags(const MixedOpSpec& op, const std::vector<ExtReal>& grid) {
  FlagReport rep;
  FlagCheck c{"nondecreasing", true, {}};
  auto cmp_gt = [&](const SignedExtReal& x1, const SignedExtReal& y1, const SignedExtReal& x2, const SignedExtReal& y2) {
    try {
      return op(x1, y1) > op(x2, y2);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::domain) throw;
      return false;
    }
  };
  for (const auto& a : grid)
    for (const auto& b : grid)
      for (const auto& x : grid) {
        const SignedExtReal sa(a), sb(b), sx(x);
        bool bad = false;
        if (a <= b && cmp_gt(sa, -sx, sb, -sx)) bad = true;
        if (b <= a && cmp_gt(sx, -sa, sx, -sb)) bad = true;  // -a <= -b
        if (bad && c.passed) {
          std::ostringstream os;
          os << "(" << a << ", " << b << ", " << x << ")";
          c.witness = os.str();
          c.passed = false;
        }
      }
  if (op.nondecreasing) rep.checks.push_back(c);
  return rep;
}

inline std::vector<ExtReal> default_flag_grid() {
  return {ExtReal(0.0), ExtReal(0.1), ExtReal(0.5), ExtReal(1.0), ExtReal(2.0), ExtReal::infinity()};
}

}  // namespace sugeno
