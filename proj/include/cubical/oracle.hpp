#pragma once

// Brute-force reference semantics on the lattice of step multiples inside the
// ambient box. Uses only the hold intervals of the program and direct point
// tests, never the cubical-area machinery, so it can cross-check it.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "analysis.hpp"
#include "pv.hpp"

namespace cubical::analysis {

class GridOracle {
 public:
  GridOracle(const pv::PvProgram& prog, Rational step) : step_(step), holds_(pv::validate(prog)) {
    if (step <= 0 || step.numerator() != 1)
      throw std::invalid_argument("grid step must be 1/k for a positive integer k");
    for (const std::string& name : prog.main) {
      const auto len = static_cast<std::int64_t>(prog.process(name).body.size());
      upper_.push_back(Rational(len + 1));
      counts_.push_back(static_cast<std::size_t>((len + 1) * step.denominator()) + 1);
    }
    std::size_t total = 1;
    for (std::size_t c : counts_) total *= c;
    in_model_.resize(total);
    doomed_.assign(total, 0);
    deadlock_.assign(total, 0);

    std::vector<std::size_t> idx(dim());
    for (std::size_t flat = 0; flat < total; ++flat) in_model_[flat] = admissible(point_of(unflatten(flat, idx)));

    const std::size_t final_flat = total - 1;
    for (std::size_t flat = total; flat-- > 0;) {
      if (!in_model_[flat] || flat == final_flat) continue;
      unflatten(flat, idx);
      bool any_move = false;
      bool all_doomed = true;
      for (std::size_t k = 0; k < dim(); ++k) {
        if (idx[k] + 1 >= counts_[k]) continue;
        std::size_t s = flat + stride(k);
        if (!in_model_[s]) continue;
        any_move = true;
        if (!doomed_[s]) all_doomed = false;
      }
      deadlock_[flat] = !any_move;
      doomed_[flat] = all_doomed;
    }
  }

  std::size_t dim() const { return counts_.size(); }
  std::size_t point_count() const { return in_model_.size(); }

  /// Inside the ambient box and outside every pair of simultaneous holds.
  bool admissible(std::span<const Rational> p) const {
    for (std::size_t k = 0; k < dim(); ++k)
      if (p[k] < 0 || p[k] > upper_[k]) return false;
    return !forbidden(p);
  }

  bool forbidden(std::span<const Rational> p) const {
    auto holding = [&](const pv::HoldInterval& h) {
      return Rational(static_cast<std::int64_t>(h.p_pos)) < p[h.process] &&
             p[h.process] < Rational(static_cast<std::int64_t>(h.v_pos));
    };
    for (const auto& a : holds_)
      for (const auto& b : holds_)
        if (a.process < b.process && a.resource == b.resource && holding(a) && holding(b)) return true;
    return false;
  }

  /// All lattice points, row-major with the last axis fastest.
  std::vector<std::vector<Rational>> points() const {
    std::vector<std::vector<Rational>> out;
    std::vector<std::size_t> idx(dim());
    for (std::size_t flat = 0; flat < point_count(); ++flat) out.push_back(point_of(unflatten(flat, idx)));
    return out;
  }

  bool member(std::span<const Rational> p) const { return in_model_[flat_of(p)] != 0; }
  bool is_deadlock(std::span<const Rational> p) const { return deadlock_[flat_of(p)] != 0; }
  bool is_doomed(std::span<const Rational> p) const { return doomed_[flat_of(p)] != 0; }

  std::vector<std::vector<Rational>> deadlocks() const {
    std::vector<std::vector<Rational>> out;
    std::vector<std::size_t> idx(dim());
    for (std::size_t flat = 0; flat < point_count(); ++flat)
      if (deadlock_[flat]) out.push_back(point_of(unflatten(flat, idx)));
    return out;
  }

  /// Deadlocks lying on vertices of the cell decomposition, i.e. with every
  /// coordinate a critical value of that axis.
  std::vector<std::vector<Rational>> vertex_deadlocks(const CellDecomposition& cells) const {
    if (cells.dim() != dim()) throw std::invalid_argument("grid oracle: decomposition has the wrong dimension");
    auto all = deadlocks();
    std::erase_if(all, [&](const auto& p) {
      for (std::size_t k = 0; k < dim(); ++k) {
        const auto cs = cells.criticals(k);
        if (!std::binary_search(cs.begin(), cs.end(), p[k])) return true;
      }
      return false;
    });
    return all;
  }

 private:
  std::size_t stride(std::size_t axis) const {
    std::size_t s = 1;
    for (std::size_t k = axis + 1; k < dim(); ++k) s *= counts_[k];
    return s;
  }

  const std::vector<std::size_t>& unflatten(std::size_t flat, std::vector<std::size_t>& idx) const {
    for (std::size_t k = dim(); k-- > 0;) {
      idx[k] = flat % counts_[k];
      flat /= counts_[k];
    }
    return idx;
  }

  std::vector<Rational> point_of(const std::vector<std::size_t>& idx) const {
    std::vector<Rational> p(dim());
    for (std::size_t k = 0; k < dim(); ++k) p[k] = step_ * Rational(static_cast<std::int64_t>(idx[k]));
    return p;
  }

  std::size_t flat_of(std::span<const Rational> p) const {
    if (p.size() != dim()) throw std::invalid_argument("grid oracle: wrong point dimension");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dim(); ++k) {
      Rational i = p[k] / step_;
      if (i.denominator() != 1 || i < 0 || i.numerator() >= static_cast<std::int64_t>(counts_[k]))
        throw std::invalid_argument("grid oracle: point is not on the lattice");
      flat = flat * counts_[k] + static_cast<std::size_t>(i.numerator());
    }
    return flat;
  }

  Rational step_;
  std::vector<pv::HoldInterval> holds_;
  std::vector<Rational> upper_;
  std::vector<std::size_t> counts_;
  std::vector<char> in_model_;
  std::vector<char> doomed_;
  std::vector<char> deadlock_;
};

inline GridOracle grid_oracle(const pv::PvProgram& prog, Rational step) { return GridOracle(prog, step); }

}  // namespace cubical::analysis
