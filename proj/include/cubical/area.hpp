#pragma once

// Cubes, cube families, and cubical areas in canonical form: the set of ALL
// maximal subcubes of the union. Canonical areas compare equal iff they
// denote the same point set.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "interval.hpp"

namespace cubical {

class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw dimension_error(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
}
inline void require_positive_dim(std::size_t d) {
  if (d == 0) throw dimension_error("dimension must be at least 1");
}
}  // namespace detail

/// Product of n >= 1 nonempty intervals.
class Cube {
 public:
  explicit Cube(std::vector<Interval> factors) : factors_(std::move(factors)) {
    detail::require_positive_dim(factors_.size());
  }
  Cube(std::initializer_list<Interval> factors) : Cube(std::vector<Interval>(factors)) {}

  static Cube full(std::size_t dim) {
    detail::require_positive_dim(dim);
    return Cube(std::vector<Interval>(dim, real_line()));
  }

  std::size_t dim() const { return factors_.size(); }
  const Interval& operator[](std::size_t axis) const { return factors_[axis]; }
  std::span<const Interval> factors() const { return factors_; }

  bool contains(const Cube& other) const {
    for (std::size_t k = 0; k < dim(); ++k)
      if (!factors_[k].contains(other.factors_[k])) return false;
    return true;
  }

  bool contains(std::span<const Rational> p) const {
    for (std::size_t k = 0; k < dim(); ++k)
      if (!factors_[k].contains(p[k])) return false;
    return true;
  }

  /// Replaces one factor, keeping the others.
  Cube with_factor(std::size_t axis, Interval iv) const {
    Cube c = *this;
    c.factors_[axis] = iv;
    return c;
  }

  friend bool operator==(const Cube&, const Cube&) = default;
  friend auto operator<=>(const Cube& a, const Cube& b) {
    return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(),
                                                  b.factors_.begin(), b.factors_.end());
  }

 private:
  std::vector<Interval> factors_;
};

inline std::string to_string(const Cube& c) {
  std::string s;
  for (std::size_t k = 0; k < c.dim(); ++k) {
    if (k) s += " x ";
    s += to_string(c[k]);
  }
  return s;
}

/// An arbitrary finite family of same-dimension cubes (a cubical cover of its union).
struct CubeFamily {
  std::size_t dim = 1;
  std::vector<Cube> cubes;

  CubeFamily() = default;
  CubeFamily(std::size_t d, std::vector<Cube> cs) : dim(d), cubes(std::move(cs)) {
    detail::require_positive_dim(dim);
    for (const Cube& c : cubes) detail::require_same_dim(c.dim(), dim, "CubeFamily");
  }

  bool contains(std::span<const Rational> p) const {
    return std::any_of(cubes.begin(), cubes.end(), [&](const Cube& c) { return c.contains(p); });
  }
};

inline std::optional<Cube> cube_intersect(const Cube& a, const Cube& b) {
  detail::require_same_dim(a.dim(), b.dim(), "cube_intersect");
  std::vector<Interval> out;
  out.reserve(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    auto m = interval_intersect(a[k], b[k]);
    if (!m) return std::nullopt;
    out.push_back(*m);
  }
  return Cube(std::move(out));
}

/// The maximal subcubes of the complement: R x ... x J_k x ... x R for each
/// maximal complement interval J_k of the k-th factor. At most 2n members.
inline CubeFamily cube_complement(const Cube& a) {
  std::vector<Cube> out;
  const Cube full = Cube::full(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k)
    for (const Interval& j : interval_complement(a[k])) out.push_back(full.with_factor(k, j));
  return CubeFamily(a.dim(), std::move(out));
}

/// c ≼ d: every cube of c lies inside some cube of d.
inline bool family_refines(const CubeFamily& c, const CubeFamily& d) {
  if (!c.cubes.empty() && !d.cubes.empty()) detail::require_same_dim(c.dim, d.dim, "family_refines");
  return std::all_of(c.cubes.begin(), c.cubes.end(), [&](const Cube& x) {
    return std::any_of(d.cubes.begin(), d.cubes.end(), [&](const Cube& y) { return y.contains(x); });
  });
}

namespace detail {

inline bool cubes_meet(const Cube& a, const Cube& b) {
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (!interval_intersect(a[k], b[k])) return false;
  return true;
}

// Deduplicated and stripped of members contained in another member. Of
// several equal members the first survives. Order is preserved.
inline std::vector<Cube> maximal_members(std::vector<Cube> cubes) {
  const std::size_t n = cubes.size();
  std::vector<char> dominated(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n && !dominated[i]; ++j) {
      if (i == j || dominated[j] || !cubes[j].contains(cubes[i])) continue;
      if (j < i || !cubes[i].contains(cubes[j])) dominated[i] = 1;
    }
  }
  std::vector<Cube> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!dominated[i]) out.push_back(std::move(cubes[i]));
  return out;
}

inline std::vector<Cube> sorted_maximal(std::vector<Cube> cubes) {
  auto out = maximal_members(std::move(cubes));
  std::sort(out.begin(), out.end());
  return out;
}

// All maximal subcubes of the complement of the union of `cubes`. Each fold
// step intersects the running family with the complement family of one cube;
// both contain all maximal subcubes of their unions, so the pairwise meets do
// too, and filtering leaves exactly the maximal ones.
inline std::vector<Cube> complement_of_union(std::size_t dim, std::span<const Cube> cubes) {
  std::vector<Cube> acc{Cube::full(dim)};
  for (const Cube& c : cubes) {
    require_same_dim(c.dim(), dim, "complement_of_union");
    std::vector<std::vector<Interval>> comp(dim);
    for (std::size_t k = 0; k < dim; ++k) comp[k] = interval_complement(c[k]);
    // Members of acc disjoint from c stay as they are and cannot be dominated
    // by any new piece (each piece lies inside a member of the antichain acc
    // that meets c). Pieces cut from one parent never contain each other.
    std::vector<Cube> kept, pieces;
    std::vector<std::size_t> parent;
    for (std::size_t p = 0; p < acc.size(); ++p) {
      const Cube& a = acc[p];
      if (!cubes_meet(a, c)) {
        kept.push_back(a);
        continue;
      }
      for (std::size_t k = 0; k < dim; ++k)
        for (const Interval& j : comp[k])
          if (auto m = interval_intersect(a[k], j)) {
            pieces.push_back(a.with_factor(k, *m));
            parent.push_back(p);
          }
    }
    std::vector<char> dominated(pieces.size(), 0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      for (const Cube& k : kept)
        if (k.contains(pieces[i])) {
          dominated[i] = 1;
          break;
        }
      for (std::size_t j = 0; j < pieces.size() && !dominated[i]; ++j) {
        if (parent[j] == parent[i] || dominated[j] || !pieces[j].contains(pieces[i])) continue;
        if (j < i || !pieces[i].contains(pieces[j])) dominated[i] = 1;
      }
    }
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (!dominated[i]) kept.push_back(std::move(pieces[i]));
    acc = std::move(kept);
    if (acc.empty()) break;
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

}  // namespace detail

/// A cubical area in canonical form. Only constructible through operations
/// that establish the canonical invariant.
class CubicalArea {
 public:
  static CubicalArea empty(std::size_t dim) {
    detail::require_positive_dim(dim);
    return CubicalArea(dim, {});
  }
  static CubicalArea full(std::size_t dim) { return CubicalArea(dim, {Cube::full(dim)}); }
  static CubicalArea from_cube(Cube c) {
    std::size_t d = c.dim();
    return CubicalArea(d, {std::move(c)});
  }
  static CubicalArea from_1d(const OneDimArea& a) {
    std::vector<Cube> cs;
    for (const Interval& iv : a.parts()) cs.push_back(Cube{iv});
    return CubicalArea(1, std::move(cs));
  }

  std::size_t dim() const { return dim_; }
  std::span<const Cube> cubes() const { return cubes_; }
  std::size_t size() const { return cubes_.size(); }
  bool is_empty() const { return cubes_.empty(); }

  CubeFamily as_family() const { return CubeFamily(dim_, cubes_); }

  friend bool operator==(const CubicalArea&, const CubicalArea&) = default;

 private:
  CubicalArea(std::size_t dim, std::vector<Cube> sorted_maximal) : dim_(dim), cubes_(std::move(sorted_maximal)) {}

  friend CubicalArea normalize(const CubeFamily&);
  friend CubicalArea area_intersect(const CubicalArea&, const CubicalArea&);
  friend CubicalArea area_complement(const CubicalArea&);
  friend CubicalArea product(std::span<const std::pair<std::vector<std::size_t>, CubicalArea>>);

  std::size_t dim_;
  std::vector<Cube> cubes_;
};

/// α(γ(c)) by complementing twice.
inline CubicalArea normalize(const CubeFamily& c) {
  detail::require_positive_dim(c.dim);
  auto outside = detail::complement_of_union(c.dim, c.cubes);
  return CubicalArea(c.dim, detail::complement_of_union(c.dim, outside));
}

inline CubicalArea normalize(std::size_t dim, std::vector<Cube> cubes) {
  return normalize(CubeFamily(dim, std::move(cubes)));
}

/// Pairwise meets of maximal cubes, filtered to the maximal ones.
inline CubicalArea area_intersect(const CubicalArea& a, const CubicalArea& b) {
  detail::require_same_dim(a.dim(), b.dim(), "area_intersect");
  std::vector<Cube> meets;
  for (const Cube& x : a.cubes())
    for (const Cube& y : b.cubes())
      if (auto m = cube_intersect(x, y)) meets.push_back(std::move(*m));
  return CubicalArea(a.dim(), detail::sorted_maximal(std::move(meets)));
}

inline CubicalArea area_complement(const CubicalArea& a) {
  return CubicalArea(a.dim(), detail::complement_of_union(a.dim(), a.cubes()));
}

inline CubicalArea area_union(const CubicalArea& a, const CubicalArea& b) {
  detail::require_same_dim(a.dim(), b.dim(), "area_union");
  std::vector<Cube> all(a.cubes().begin(), a.cubes().end());
  all.insert(all.end(), b.cubes().begin(), b.cubes().end());
  return normalize(CubeFamily(a.dim(), std::move(all)));
}

inline CubicalArea area_difference(const CubicalArea& a, const CubicalArea& b) {
  return area_intersect(a, area_complement(b));
}

inline bool area_equal(const CubicalArea& a, const CubicalArea& b) {
  detail::require_same_dim(a.dim(), b.dim(), "area_equal");
  return a == b;
}

inline bool area_subset(const CubicalArea& a, const CubicalArea& b) {
  return area_equal(area_intersect(a, b), a);
}

inline bool contains_point(const CubicalArea& a, std::span<const Rational> p) {
  detail::require_same_dim(a.dim(), p.size(), "contains_point");
  return std::any_of(a.cubes().begin(), a.cubes().end(), [&](const Cube& c) { return c.contains(p); });
}

inline bool contains_point(const CubicalArea& a, std::initializer_list<Rational> p) {
  return contains_point(a, std::span<const Rational>(p.begin(), p.size()));
}

/// Interleaved product: each factor is placed on its listed (sorted) axes of
/// the result. The axis lists must partition 0..n-1. Products of maximal
/// cubes are exactly the maximal cubes of the product, so no normalization
/// pass is needed.
inline CubicalArea product(std::span<const std::pair<std::vector<std::size_t>, CubicalArea>> factors) {
  if (factors.empty()) throw dimension_error("product of zero factors");
  std::size_t n = 0;
  for (const auto& [axes, area] : factors) {
    detail::require_same_dim(axes.size(), area.dim(), "product axes");
    n += axes.size();
  }
  std::vector<char> seen(n, 0);
  for (const auto& [axes, area] : factors) {
    for (std::size_t ax : axes) {
      if (ax >= n || seen[ax]) throw dimension_error("product axes do not partition the result dimension");
      seen[ax] = 1;
    }
  }
  for (const auto& f : factors)
    if (f.second.is_empty()) return CubicalArea::empty(n);

  std::vector<std::vector<Interval>> partial{std::vector<Interval>(n, real_line())};
  for (const auto& [axes, area] : factors) {
    std::vector<std::vector<Interval>> next;
    next.reserve(partial.size() * area.size());
    for (const auto& row : partial) {
      for (const Cube& c : area.cubes()) {
        auto r = row;
        for (std::size_t k = 0; k < axes.size(); ++k) r[axes[k]] = c[k];
        next.push_back(std::move(r));
      }
    }
    partial = std::move(next);
  }
  std::vector<Cube> cubes;
  cubes.reserve(partial.size());
  for (auto& row : partial) cubes.emplace_back(std::move(row));
  std::sort(cubes.begin(), cubes.end());
  return CubicalArea(n, std::move(cubes));
}

/// Product with the axes of `b` placed after those of `a`.
inline CubicalArea product(const CubicalArea& a, const CubicalArea& b) {
  std::vector<std::size_t> sa(a.dim()), sb(b.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) sa[k] = k;
  for (std::size_t k = 0; k < b.dim(); ++k) sb[k] = a.dim() + k;
  const std::pair<std::vector<std::size_t>, CubicalArea> fs[] = {{sa, a}, {sb, b}};
  return product(fs);
}

inline CubicalArea product(const CubicalArea& a, std::vector<std::size_t> axes_a, const CubicalArea& b,
                           std::vector<std::size_t> axes_b) {
  const std::pair<std::vector<std::size_t>, CubicalArea> fs[] = {{std::move(axes_a), a}, {std::move(axes_b), b}};
  return product(fs);
}

/// Image under the coordinate projection onto `axes` (taken in sorted order).
inline CubicalArea project(const CubicalArea& a, std::vector<std::size_t> axes) {
  std::sort(axes.begin(), axes.end());
  axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
  if (axes.empty()) throw dimension_error("project: empty axis set");
  if (axes.back() >= a.dim()) throw dimension_error("project: axis out of range");
  std::vector<Cube> cubes;
  cubes.reserve(a.size());
  for (const Cube& c : a.cubes()) {
    std::vector<Interval> f;
    f.reserve(axes.size());
    for (std::size_t ax : axes) f.push_back(c[ax]);
    cubes.emplace_back(std::move(f));
  }
  return normalize(CubeFamily(axes.size(), std::move(cubes)));
}

inline std::string to_string(const CubicalArea& a) {
  if (a.is_empty()) return "{}";
  std::string s;
  for (const Cube& c : a.cubes()) {
    if (!s.empty()) s += "\n";
    s += to_string(c);
  }
  return s;
}

}  // namespace cubical
