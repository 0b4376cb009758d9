#pragma once

// Deadlocks, the deadlock attractor, and product factorization of cubical
// areas. Deadlock and attractor analysis run on the cell decomposition
// induced by the critical coordinates of the area: every maximal cube is a
// union of cells, so membership is decided per cell.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "area.hpp"
#include "json.hpp"

namespace cubical::analysis {

using Point = std::vector<Rational>;

/// Elementary cells of the arrangement cut out by the critical coordinates.
/// On each axis with k criticals there are 2k-1 elementary intervals: even
/// indices are the singletons {c_i}, odd indices the open gaps (c_i, c_i+1).
class CellDecomposition {
 public:
  CellDecomposition(const CubicalArea& area, const Cube& ambient) : criticals_(area.dim()) {
    detail::require_same_dim(area.dim(), ambient.dim(), "build_cells");
    for (std::size_t k = 0; k < ambient.dim(); ++k) {
      if (!ambient[k].is_bounded()) throw std::invalid_argument("build_cells: ambient cube must be bounded");
      const Rational lo = ambient[k].lo().value();
      const Rational hi = ambient[k].hi().value();
      auto& cs = criticals_[k];
      cs = {lo, hi};
      for (const Cube& c : area.cubes()) {
        for (const Endpoint* e : {&c[k].lo(), &c[k].hi()})
          if (e->is_finite() && lo <= e->value() && e->value() <= hi) cs.push_back(e->value());
      }
      std::sort(cs.begin(), cs.end());
      cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    }

    extents_.resize(dim());
    std::size_t total = 1;
    for (std::size_t k = 0; k < dim(); ++k) {
      extents_[k] = 2 * criticals_[k].size() - 1;
      total *= extents_[k];
    }
    inside_.assign(total, 0);
    std::vector<std::size_t> idx(dim(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
      unflatten(flat, idx);
      Point rep = representative(idx);
      inside_[flat] = ambient.contains(std::span<const Rational>(rep)) && contains_point(area, rep);
    }
  }

  std::size_t dim() const { return criticals_.size(); }
  std::span<const Rational> criticals(std::size_t axis) const { return criticals_[axis]; }
  std::size_t extent(std::size_t axis) const { return extents_[axis]; }
  std::size_t cell_count() const { return inside_.size(); }
  bool inside(std::size_t flat) const { return inside_[flat] != 0; }

  /// Row-major, last axis fastest: stepping up one axis increases the index.
  std::size_t flatten(std::span<const std::size_t> idx) const {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dim(); ++k) flat = flat * extents_[k] + idx[k];
    return flat;
  }

  void unflatten(std::size_t flat, std::vector<std::size_t>& idx) const {
    for (std::size_t k = dim(); k-- > 0;) {
      idx[k] = flat % extents_[k];
      flat /= extents_[k];
    }
  }

  std::size_t stride(std::size_t axis) const {
    std::size_t s = 1;
    for (std::size_t k = axis + 1; k < dim(); ++k) s *= extents_[k];
    return s;
  }

  Interval elementary(std::size_t axis, std::size_t i) const {
    const auto& cs = criticals_[axis];
    if (i % 2 == 0) return point(cs[i / 2]);
    return open(cs[i / 2], cs[i / 2 + 1]);
  }

  /// Singleton value or gap midpoint on each axis.
  Point representative(std::span<const std::size_t> idx) const {
    Point p(dim());
    for (std::size_t k = 0; k < dim(); ++k) {
      const auto& cs = criticals_[k];
      p[k] = idx[k] % 2 == 0 ? cs[idx[k] / 2] : (cs[idx[k] / 2] + cs[idx[k] / 2 + 1]) / Rational(2);
    }
    return p;
  }

  Cube cell_cube(std::span<const std::size_t> idx) const {
    std::vector<Interval> f;
    for (std::size_t k = 0; k < dim(); ++k) f.push_back(elementary(k, idx[k]));
    return Cube(std::move(f));
  }

  bool is_vertex(std::span<const std::size_t> idx) const {
    return std::all_of(idx.begin(), idx.end(), [](std::size_t i) { return i % 2 == 0; });
  }

  std::size_t final_cell() const { return cell_count() - 1; }

 private:
  std::vector<std::vector<Rational>> criticals_;
  std::vector<std::size_t> extents_;
  std::vector<char> inside_;
};

inline CellDecomposition build_cells(const CubicalArea& a, const Cube& ambient) { return {a, ambient}; }

namespace detail {

// Forward successors of a cell that lie in the area (one step up on one axis).
template <typename Fn>
void for_each_successor(const CellDecomposition& cells, std::size_t flat, std::span<const std::size_t> idx,
                        Fn&& fn) {
  for (std::size_t k = 0; k < cells.dim(); ++k) {
    if (idx[k] + 1 >= cells.extent(k)) continue;
    fn(flat + cells.stride(k));
  }
}

}  // namespace detail

/// Vertex cells of the model, other than the final corner, whose every
/// forward successor leaves the model or the ambient cube.
inline std::vector<Point> find_deadlocks(const CubicalArea& model, const Cube& ambient) {
  const CellDecomposition cells(model, ambient);
  std::vector<Point> out;
  std::vector<std::size_t> idx(cells.dim());
  for (std::size_t flat = 0; flat < cells.cell_count(); ++flat) {
    if (!cells.inside(flat) || flat == cells.final_cell()) continue;
    cells.unflatten(flat, idx);
    if (!cells.is_vertex(idx)) continue;
    bool stuck = true;
    detail::for_each_successor(cells, flat, idx, [&](std::size_t s) {
      if (cells.inside(s)) stuck = false;
    });
    if (stuck) out.push_back(cells.representative(idx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Least fixpoint over cells: doomed iff in the model, not final, and every
/// in-model successor is doomed. Successors have larger flat index, so one
/// descending sweep suffices.
inline CubicalArea doomed_region(const CubicalArea& model, const Cube& ambient) {
  const CellDecomposition cells(model, ambient);
  std::vector<char> doomed(cells.cell_count(), 0);
  std::vector<std::size_t> idx(cells.dim());
  std::vector<Cube> doomed_cells;
  for (std::size_t flat = cells.cell_count(); flat-- > 0;) {
    if (!cells.inside(flat) || flat == cells.final_cell()) continue;
    cells.unflatten(flat, idx);
    bool all_doomed = true;
    detail::for_each_successor(cells, flat, idx, [&](std::size_t s) {
      if (cells.inside(s) && !doomed[s]) all_doomed = false;
    });
    if (all_doomed) {
      doomed[flat] = 1;
      doomed_cells.push_back(cells.cell_cube(idx));
    }
  }
  return normalize(CubeFamily(model.dim(), std::move(doomed_cells)));
}

struct FactorBlock {
  std::vector<std::size_t> axes;  // sorted original axes
  CubicalArea factor;             // in the block's own (sorted) coordinate order
};

using Factorization = std::vector<FactorBlock>;

/// Largest block for which the exhaustive bipartition search is attempted.
inline constexpr std::size_t kMaxFactorBlock = 12;

inline CubicalArea reconstruct(const Factorization& f) {
  std::vector<std::pair<std::vector<std::size_t>, CubicalArea>> parts;
  for (const FactorBlock& b : f) parts.emplace_back(b.axes, b.factor);
  return product(std::span<const std::pair<std::vector<std::size_t>, CubicalArea>>(parts));
}

namespace detail {

// Tests whether `a` equals the product of its projections onto the axes in
// `mask` and the rest; fills the two factors on success.
inline bool splits_as_product(const CubicalArea& a, std::uint64_t mask, CubicalArea& left, CubicalArea& right,
                              std::vector<std::size_t>& left_axes, std::vector<std::size_t>& right_axes) {
  left_axes.clear();
  right_axes.clear();
  for (std::size_t k = 0; k < a.dim(); ++k) ((mask >> k) & 1 ? left_axes : right_axes).push_back(k);
  CubicalArea l = project(a, left_axes);
  CubicalArea r = project(a, right_axes);
  if (!area_equal(product(l, left_axes, r, right_axes), a)) return false;
  left = std::move(l);
  right = std::move(r);
  return true;
}

inline void factorize_block(const CubicalArea& a, const std::vector<std::size_t>& axes, Factorization& out) {
  const std::size_t n = a.dim();
  if (n > 1) {
    if (n > kMaxFactorBlock)
      throw std::length_error("factorize: block of " + std::to_string(n) + " axes exceeds the search cap");
    CubicalArea left = a, right = a;
    std::vector<std::size_t> la, ra;
    // Bipartitions containing axis 0 on the left, smallest left side first.
    std::vector<std::uint64_t> masks;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n) - 1; m += 2) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint64_t x, std::uint64_t y) { return std::popcount(x) < std::popcount(y); });
    for (std::uint64_t m : masks) {
      if (splits_as_product(a, m, left, right, la, ra)) {
        std::vector<std::size_t> orig_l, orig_r;
        for (std::size_t k : la) orig_l.push_back(axes[k]);
        for (std::size_t k : ra) orig_r.push_back(axes[k]);
        factorize_block(left, orig_l, out);
        factorize_block(right, orig_r, out);
        return;
      }
    }
  }
  out.push_back({axes, a});
}

}  // namespace detail

/// Finest partition of the axes into blocks whose projections multiply back
/// to the area. Blocks are sorted by their smallest axis.
inline Factorization factorize(const CubicalArea& a) {
  std::vector<std::size_t> axes(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) axes[k] = k;
  Factorization out;
  detail::factorize_block(a, axes, out);
  std::sort(out.begin(), out.end(), [](const FactorBlock& x, const FactorBlock& y) { return x.axes < y.axes; });
  return out;
}

struct AnalysisReport {
  std::vector<Point> deadlocks;
  CubicalArea doomed = CubicalArea::empty(1);
  Factorization factorization;
};

inline AnalysisReport analyze(const CubicalArea& model, const Cube& ambient) {
  return {find_deadlocks(model, ambient), doomed_region(model, ambient), factorize(model)};
}

inline Json factorization_to_json(const Factorization& f) {
  Json arr = Json::array();
  for (const FactorBlock& b : f) {
    Json j;
    j["axes"] = b.axes;
    j["factor"] = area_to_json(b.factor);
    arr.push_back(std::move(j));
  }
  return arr;
}

inline Json deadlocks_to_json(const std::vector<Point>& pts) {
  Json arr = Json::array();
  for (const Point& p : pts) arr.push_back(rationals_to_json(p));
  return arr;
}

inline Json report_to_json(const AnalysisReport& r) {
  Json j;
  j["deadlocks"] = deadlocks_to_json(r.deadlocks);
  j["doomed"] = area_to_json(r.doomed);
  j["factorization"] = factorization_to_json(r.factorization);
  return j;
}

}  // namespace cubical::analysis
