#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace sugeno {

/// Interval of the extended real line with explicit endpoint closedness.
/// Infinite endpoints are stored as IEEE infinities.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool degenerate() const { return lo == hi && lo_closed && hi_closed; }
  double length() const {
    if (empty()) return 0.0;
    return hi - lo;
  }
  bool contains(double x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }

  static Interval closed(double a, double b) { return {a, b, true, true}; }
  static Interval open(double a, double b) { return {a, b, false, false}; }
};

inline Interval intersect(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

/// Finite union of intervals. Components are kept sorted and disjoint
/// (touching components are merged when the shared point is covered).
class IntervalSet {
public:
  IntervalSet() = default;
  explicit IntervalSet(const Interval& iv) { add(iv); }

  void add(Interval iv) {
    if (iv.empty()) return;
    parts_.push_back(iv);
    normalize();
  }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  double total_length() const {
    double s = 0.0;
    for (const auto& p : parts_) s += p.length();
    return s;
  }
  /// Number of single-point components.
  std::size_t point_count() const {
    return static_cast<std::size_t>(
        std::count_if(parts_.begin(), parts_.end(), [](const Interval& p) { return p.degenerate(); }));
  }

  IntervalSet intersect_with(const Interval& iv) const {
    IntervalSet r;
    for (const auto& p : parts_) {
      Interval q = intersect(p, iv);
      if (!q.empty()) r.parts_.push_back(q);
    }
    r.normalize();
    return r;
  }

  /// Reflection x -> -x.
  IntervalSet negated() const {
    IntervalSet r;
    for (const auto& p : parts_) r.parts_.push_back({-p.hi, -p.lo, p.hi_closed, p.lo_closed});
    r.normalize();
    return r;
  }

  void unite(const IntervalSet& other) {
    parts_.insert(parts_.end(), other.parts_.begin(), other.parts_.end());
    normalize();
  }

private:
  void normalize() {
    std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval> out;
    for (const auto& p : parts_) {
      if (!out.empty()) {
        Interval& last = out.back();
        const bool overlaps = p.lo < last.hi || (p.lo == last.hi && (p.lo_closed || last.hi_closed));
        if (overlaps) {
          if (p.hi > last.hi) {
            last.hi = p.hi;
            last.hi_closed = p.hi_closed;
          } else if (p.hi == last.hi) {
            last.hi_closed = last.hi_closed || p.hi_closed;
          }
          continue;
        }
      }
      out.push_back(p);
    }
    parts_ = std::move(out);
  }

  std::vector<Interval> parts_;
};

}  // namespace sugeno
