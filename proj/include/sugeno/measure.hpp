#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sugeno/error.hpp"
#include "sugeno/ext_real.hpp"
#include "sugeno/interval_set.hpp"

namespace sugeno {

/// Index set over a finite ground space, encoded as a bitmask.
struct Subset {
  std::uint32_t bits = 0;

  static Subset of(std::initializer_list<int> elems) {
    Subset s;
    for (int e : elems) s.bits |= (1u << e);
    return s;
  }
  bool contains(int i) const { return (bits >> i) & 1u; }
  bool is_subset_of(Subset o) const { return (bits & ~o.bits) == 0; }
  int size() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }

  friend Subset operator&(Subset a, Subset b) { return {a.bits & b.bits}; }
  friend Subset operator|(Subset a, Subset b) { return {a.bits | b.bits}; }
  friend bool operator==(Subset a, Subset b) = default;
  friend auto operator<=>(Subset a, Subset b) = default;
};

class FiniteSpace {
public:
  static constexpr int max_size = 24;

  explicit FiniteSpace(int n) : n_(n) {
    if (n < 1 || n > max_size) {
      throw Error(ErrorKind::invalid_input, "ground space size must be in [1, 24], got " + std::to_string(n));
    }
  }
  int size() const { return n_; }
  Subset full() const { return {(1u << n_) - 1u}; }
  std::uint64_t subset_count() const { return std::uint64_t{1} << n_; }
  Subset complement(Subset s) const { return {full().bits & ~s.bits}; }
  void check(Subset s) const {
    if (!s.is_subset_of(full())) throw Error(ErrorKind::invalid_input, "subset outside the ground space");
  }

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

private:
  int n_;
};

/// Closed-form set functions on subsets of the real line: lambda, lambda^q,
/// and counting measure.
struct IntervalFamily {
  enum class Kind { lebesgue, power, counting };
  Kind kind = Kind::lebesgue;
  double q = 1.0;

  static IntervalFamily lebesgue() { return {Kind::lebesgue, 1.0}; }
  static IntervalFamily power(double q) {
    if (!(q > 0)) throw Error(ErrorKind::invalid_input, "power family needs q > 0");
    return {Kind::power, q};
  }
  static IntervalFamily counting() { return {Kind::counting, 1.0}; }

  ExtReal measure(const IntervalSet& s) const {
    switch (kind) {
      case Kind::lebesgue: return ExtReal::from_double(s.total_length());
      case Kind::power: return ExtReal::from_double(std::pow(s.total_length(), q));
      case Kind::counting: {
        if (s.total_length() > 0) return ExtReal::infinity();
        return ExtReal(static_cast<double>(s.point_count()));
      }
    }
    return ExtReal();
  }
};

enum class StorageMode { strict, closure };

class MonotoneMeasure;

struct MonotonicityViolation {
  Subset smaller;
  Subset larger;
};

struct ValidationReport {
  bool empty_is_zero = true;
  std::vector<MonotonicityViolation> violations;
  bool valid() const { return empty_is_zero && violations.empty(); }
};

/// Monotone set function. Discrete measures live on a FiniteSpace and are
/// stored densely (all 2^n values) or sparsely; interval measures are a
/// closed-form family only and cannot be enumerated.
class MonotoneMeasure {
public:
  /// values[mask] for every mask in [0, 2^n).
  static MonotoneMeasure dense(FiniteSpace space, std::vector<ExtReal> values) {
    if (values.size() != space.subset_count()) {
      throw Error(ErrorKind::invalid_input, "dense measure needs 2^n values");
    }
    MonotoneMeasure m(space);
    m.dense_ = std::move(values);
    return m;
  }

  /// Sparse storage. Strict mode rejects lookups of absent subsets (except
  /// the empty set); closure mode answers max over stored C subset of B.
  static MonotoneMeasure sparse(FiniteSpace space, std::map<Subset, ExtReal> values, StorageMode mode) {
    for (const auto& [s, v] : values) space.check(s);
    MonotoneMeasure m(space);
    m.sparse_ = std::move(values);
    m.mode_ = mode;
    return m;
  }

  static MonotoneMeasure counting(FiniteSpace space) {
    std::vector<ExtReal> v(space.subset_count());
    for (std::uint32_t b = 0; b < v.size(); ++b) v[b] = ExtReal(static_cast<double>(std::popcount(b)));
    return dense(space, std::move(v));
  }

  /// mu(B) = sum of weights over B.
  static MonotoneMeasure additive(std::span<const double> weights) {
    FiniteSpace space(static_cast<int>(weights.size()));
    std::vector<ExtReal> v(space.subset_count());
    for (std::uint32_t b = 0; b < v.size(); ++b) {
      double s = 0.0;
      for (int i = 0; i < space.size(); ++i)
        if ((b >> i) & 1u) s += weights[static_cast<std::size_t>(i)];
      v[b] = ExtReal(s);
    }
    return dense(space, std::move(v));
  }

  static MonotoneMeasure interval(IntervalFamily family) {
    MonotoneMeasure m;
    m.family_ = family;
    return m;
  }

  bool is_discrete() const { return space_.has_value(); }
  bool is_dense() const { return is_discrete() && !dense_.empty(); }
  const FiniteSpace& space() const {
    if (!space_) throw Error(ErrorKind::not_enumerable, "interval measure has no finite space");
    return *space_;
  }
  const IntervalFamily& family() const {
    if (!family_) throw Error(ErrorKind::invalid_input, "discrete measure has no interval family");
    return *family_;
  }
  StorageMode mode() const { return mode_; }
  const std::map<Subset, ExtReal>& sparse_values() const { return sparse_; }

  ExtReal operator()(Subset s) const {
    const FiniteSpace& sp = space();
    sp.check(s);
    if (!dense_.empty()) return dense_[s.bits];
    if (auto it = sparse_.find(s); it != sparse_.end()) return it->second;
    if (s.empty()) return ExtReal();
    if (mode_ == StorageMode::strict) {
      throw Error(ErrorKind::invalid_input, "no stored value for subset (strict mode)");
    }
    ExtReal best;
    for (const auto& [c, v] : sparse_)
      if (c.is_subset_of(s)) best = max(best, v);
    return best;
  }

  /// Measure of a union of real intervals (interval mode).
  ExtReal operator()(const IntervalSet& s) const { return family().measure(s); }

  /// Copy with all values materialized. Discrete only.
  MonotoneMeasure to_dense() const {
    if (is_dense()) return *this;
    std::vector<ExtReal> v(space().subset_count());
    for (std::uint32_t b = 0; b < v.size(); ++b) v[b] = (*this)(Subset{b});
    return dense(space(), std::move(v));
  }

private:
  MonotoneMeasure() = default;
  explicit MonotoneMeasure(FiniteSpace s) : space_(s) {}

  std::optional<FiniteSpace> space_;
  std::vector<ExtReal> dense_;
  std::map<Subset, ExtReal> sparse_;
  StorageMode mode_ = StorageMode::strict;
  std::optional<IntervalFamily> family_;
};

inline ExtReal measure_eval(const MonotoneMeasure& mu, Subset s) { return mu(s); }

/// Lists violating pairs (A, B), A a proper subset of B, mu(A) > mu(B).
/// Every pair is enumerated for n <= 12; above that only covering pairs
/// (B minus one element) are listed, which still decides monotonicity.
inline ValidationReport validate_monotone(const MonotoneMeasure& mu) {
  if (!mu.is_discrete()) throw Error(ErrorKind::not_enumerable, "interval measures are not enumerable");
  ValidationReport r;
  const FiniteSpace& sp = mu.space();
  r.empty_is_zero = mu(Subset{}).is_zero();
  const auto count = sp.subset_count();
  const bool all_pairs = sp.size() <= 12;
  for (std::uint64_t b = 1; b < count; ++b) {
    const Subset big{static_cast<std::uint32_t>(b)};
    const ExtReal vb = mu(big);
    if (all_pairs) {
      // proper submasks of big, including the empty set
      for (std::uint32_t s = (big.bits - 1) & big.bits;; s = (s - 1) & big.bits) {
        if (mu(Subset{s}) > vb) r.violations.push_back({Subset{s}, big});
        if (s == 0) break;
      }
    } else {
      for (int i = 0; i < sp.size(); ++i) {
        if (!big.contains(i)) continue;
        const Subset small{big.bits & ~(1u << i)};
        if (mu(small) > vb) r.violations.push_back({small, big});
      }
    }
  }
  return r;
}

/// Nonnegative function on a finite space.
class DiscreteFunction {
public:
  DiscreteFunction() = default;
  explicit DiscreteFunction(std::vector<ExtReal> values) : values_(std::move(values)) {}
  DiscreteFunction(std::initializer_list<double> v) {
    for (double x : v) values_.push_back(ExtReal::from_double(x));
  }

  std::size_t size() const { return values_.size(); }
  const ExtReal& operator[](std::size_t i) const { return values_[i]; }
  ExtReal& operator[](std::size_t i) { return values_[i]; }
  const std::vector<ExtReal>& values() const { return values_; }

  /// Pointwise image under g.
  template <class F>
  DiscreteFunction map(F&& g) const {
    std::vector<ExtReal> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(g(v));
    return DiscreteFunction(std::move(out));
  }

  /// {x : f(x) >= t}
  Subset level_set(const ExtReal& t) const {
    Subset s;
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] >= t) s.bits |= (1u << i);
    return s;
  }

private:
  std::vector<ExtReal> values_;
};

/// Real-valued function on a finite space.
class SignedFunction {
public:
  SignedFunction() = default;
  explicit SignedFunction(std::vector<SignedExtReal> values) : values_(std::move(values)) {}
  SignedFunction(std::initializer_list<double> v) {
    for (double x : v) values_.emplace_back(x);
  }
  std::size_t size() const { return values_.size(); }
  const SignedExtReal& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<SignedExtReal>& values() const { return values_; }

private:
  std::vector<SignedExtReal> values_;
};

inline void check_function(const MonotoneMeasure& mu, std::size_t size) {
  if (static_cast<int>(size) != mu.space().size()) {
    throw Error(ErrorKind::invalid_input, "function length differs from the ground space size");
  }
}

/// mu(A intersect {f >= t}).
inline ExtReal survival(const MonotoneMeasure& mu, Subset a, const DiscreteFunction& f, const ExtReal& t) {
  check_function(mu, f.size());
  return mu(a & f.level_set(t));
}

}  // namespace sugeno
