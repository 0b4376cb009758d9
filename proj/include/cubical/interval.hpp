#pragma once

// One-dimensional exact intervals with independently open/closed, possibly
// infinite bounds, and finite unions of them in canonical (maximal-part) form.

#include <algorithm>
#include <compare>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace cubical {

enum class BoundKind { negative_infinity = 0, finite = 1, positive_infinity = 2 };

/// A bound of an interval. Infinite bounds carry no value and are never closed.
class Endpoint {
 public:
  static Endpoint neg_inf() { return Endpoint(BoundKind::negative_infinity, Rational(0), false); }
  static Endpoint pos_inf() { return Endpoint(BoundKind::positive_infinity, Rational(0), false); }
  static Endpoint closed(Rational v) { return Endpoint(BoundKind::finite, v, true); }
  static Endpoint open(Rational v) { return Endpoint(BoundKind::finite, v, false); }
  static Endpoint finite(Rational v, bool is_closed) { return Endpoint(BoundKind::finite, v, is_closed); }

  BoundKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == BoundKind::finite; }
  bool is_closed() const { return closed_; }
  const Rational& value() const {
    if (!is_finite()) throw std::logic_error("infinite endpoint has no value");
    return value_;
  }

  /// Flips closedness of a finite bound; used when crossing to the complement.
  Endpoint flipped() const { return is_finite() ? finite(value_, !closed_) : *this; }

  friend bool operator==(const Endpoint&, const Endpoint&) = default;

  /// Canonical total order: kind, then value, then open before closed.
  friend std::strong_ordering operator<=>(const Endpoint& a, const Endpoint& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (int c = compare(a.value_, b.value_); c != 0)
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.closed_ <=> b.closed_;
  }

 private:
  Endpoint(BoundKind k, Rational v, bool c) : kind_(k), value_(v), closed_(c) {}

  BoundKind kind_;
  Rational value_;
  bool closed_;
};

namespace detail {

// Negative when lower bound `a` admits strictly more of the line than `b`.
inline int compare_lower(const Endpoint& a, const Endpoint& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (!a.is_finite()) return 0;
  if (int c = compare(a.value(), b.value()); c != 0) return c;
  if (a.is_closed() == b.is_closed()) return 0;
  return a.is_closed() ? -1 : 1;
}

// Negative when upper bound `a` admits strictly less of the line than `b`.
inline int compare_upper(const Endpoint& a, const Endpoint& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (!a.is_finite()) return 0;
  if (int c = compare(a.value(), b.value()); c != 0) return c;
  if (a.is_closed() == b.is_closed()) return 0;
  return a.is_closed() ? 1 : -1;
}

inline bool bounds_nonempty(const Endpoint& lo, const Endpoint& hi) {
  if (lo.kind() == BoundKind::positive_infinity || hi.kind() == BoundKind::negative_infinity)
    return false;
  if (!lo.is_finite() || !hi.is_finite()) return true;
  const int c = compare(lo.value(), hi.value());
  return c < 0 || (c == 0 && lo.is_closed() && hi.is_closed());
}

}  // namespace detail

/// A nonempty interval of the real line. The empty interval is never
/// represented; operations that may produce it return std::optional.
class Interval {
 public:
  Interval(Endpoint lo, Endpoint hi) : lo_(lo), hi_(hi) {
    if (!detail::bounds_nonempty(lo_, hi_)) throw std::invalid_argument("empty or inverted interval");
  }

  static std::optional<Interval> make(Endpoint lo, Endpoint hi) {
    if (!detail::bounds_nonempty(lo, hi)) return std::nullopt;
    return Interval(lo, hi);
  }

  const Endpoint& lo() const { return lo_; }
  const Endpoint& hi() const { return hi_; }

  bool is_point() const { return lo_.is_finite() && hi_.is_finite() && lo_.value() == hi_.value(); }
  bool is_real_line() const { return !lo_.is_finite() && !hi_.is_finite(); }
  bool is_bounded() const { return lo_.is_finite() && hi_.is_finite(); }

  bool contains(const Rational& q) const {
    if (lo_.is_finite()) {
      const int c = compare(lo_.value(), q);
      if (c > 0 || (c == 0 && !lo_.is_closed())) return false;
    }
    if (hi_.is_finite()) {
      const int c = compare(q, hi_.value());
      if (c > 0 || (c == 0 && !hi_.is_closed())) return false;
    }
    return true;
  }

  bool contains(const Interval& other) const {
    return detail::compare_lower(lo_, other.lo_) <= 0 && detail::compare_upper(other.hi_, hi_) <= 0;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend std::strong_ordering operator<=>(const Interval& a, const Interval& b) {
    if (auto c = a.lo_ <=> b.lo_; c != 0) return c;
    return a.hi_ <=> b.hi_;
  }

 private:
  Endpoint lo_;
  Endpoint hi_;
};

inline Interval closed(Rational a, Rational b) { return {Endpoint::closed(a), Endpoint::closed(b)}; }
inline Interval open(Rational a, Rational b) { return {Endpoint::open(a), Endpoint::open(b)}; }
inline Interval closed_open(Rational a, Rational b) { return {Endpoint::closed(a), Endpoint::open(b)}; }
inline Interval open_closed(Rational a, Rational b) { return {Endpoint::open(a), Endpoint::closed(b)}; }
inline Interval point(Rational a) { return closed(a, a); }
inline Interval real_line() { return {Endpoint::neg_inf(), Endpoint::pos_inf()}; }

inline std::string to_string(const Interval& iv) {
  std::string s;
  s += iv.lo().is_finite() ? (iv.lo().is_closed() ? "[" : "(") + to_string(iv.lo().value()) : "(-inf";
  s += ",";
  s += iv.hi().is_finite() ? to_string(iv.hi().value()) + (iv.hi().is_closed() ? "]" : ")") : "+inf)";
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) { return os << to_string(iv); }

/// Max of lowers, min of uppers; nullopt when the meet is empty.
inline std::optional<Interval> interval_intersect(const Interval& a, const Interval& b) {
  const Endpoint& lo = detail::compare_lower(a.lo(), b.lo()) >= 0 ? a.lo() : b.lo();
  const Endpoint& hi = detail::compare_upper(a.hi(), b.hi()) <= 0 ? a.hi() : b.hi();
  return Interval::make(lo, hi);
}

/// The maximal intervals of the complement; 0, 1 or 2 of them.
inline std::vector<Interval> interval_complement(const Interval& a) {
  std::vector<Interval> out;
  if (a.lo().is_finite()) out.emplace_back(Endpoint::neg_inf(), a.lo().flipped());
  if (a.hi().is_finite()) out.emplace_back(a.hi().flipped(), Endpoint::pos_inf());
  return out;
}

/// a ∪ b when the union is itself an interval, nullopt otherwise.
inline std::optional<Interval> interval_merge(const Interval& a, const Interval& b) {
  const Interval& first = detail::compare_lower(a.lo(), b.lo()) <= 0 ? a : b;
  const Interval& second = &first == &a ? b : a;
  const Endpoint& gap_lo = first.hi();
  const Endpoint& gap_hi = second.lo();
  bool joined = !gap_lo.is_finite() || !gap_hi.is_finite() || gap_hi.value() < gap_lo.value() ||
                (gap_hi.value() == gap_lo.value() && (gap_lo.is_closed() || gap_hi.is_closed()));
  if (!joined) return std::nullopt;
  const Endpoint& hi = detail::compare_upper(first.hi(), second.hi()) >= 0 ? first.hi() : second.hi();
  return Interval(first.lo(), hi);
}

/// A finite union of intervals kept as its sorted list of maximal parts.
class OneDimArea {
 public:
  OneDimArea() = default;
  explicit OneDimArea(Interval iv) : parts_{iv} {}

  std::span<const Interval> parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  bool contains(const Rational& q) const {
    return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& iv) { return iv.contains(q); });
  }

  friend bool operator==(const OneDimArea&, const OneDimArea&) = default;

 private:
  friend OneDimArea area1d_normalize(std::span<const Interval> parts);
  std::vector<Interval> parts_;
};

/// Sorts by lower bound and sweeps, merging whenever the running union stays an interval.
inline OneDimArea area1d_normalize(std::span<const Interval> parts) {
  std::vector<Interval> sorted(parts.begin(), parts.end());
  std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) {
    int c = detail::compare_lower(a.lo(), b.lo());
    return c != 0 ? c < 0 : detail::compare_upper(a.hi(), b.hi()) > 0;
  });
  OneDimArea out;
  for (const Interval& iv : sorted) {
    if (!out.parts_.empty()) {
      if (auto m = interval_merge(out.parts_.back(), iv)) {
        out.parts_.back() = *m;
        continue;
      }
    }
    out.parts_.push_back(iv);
  }
  return out;
}

inline OneDimArea area1d_normalize(std::initializer_list<Interval> parts) {
  return area1d_normalize(std::span<const Interval>(parts.begin(), parts.size()));
}

inline std::string to_string(const OneDimArea& a) {
  if (a.empty()) return "{}";
  std::string s;
  for (const Interval& iv : a.parts()) {
    if (!s.empty()) s += " u ";
    s += to_string(iv);
  }
  return s;
}

}  // namespace cubical
