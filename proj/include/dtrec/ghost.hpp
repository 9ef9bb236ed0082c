#pragma once

#include <cstdint>
#include <vector>

#include "dtrec/lattice.hpp"

namespace dtrec {

// Elementary switching function of a direction set: the signed count of ways
// to write a point (relative to the anchor) as a sum of distinct direction
// vectors, even-sized subsets counting +1 and odd-sized -1. Every line in any
// of the directions sums to zero over it.
class GhostFunction {
public:
  GhostFunction(Grid3 box, Point3 anchor, std::vector<long long> coeff);

  // Formal bounding box [0,sum|a|] x [0,sum|b|] x [0,sum|c|] as grid extents.
  const Grid3& box() const { return box_; }
  // Anchor point (0, sum of |b| over b<0, sum of |c| over c<0); value there is 1.
  const Point3& anchor() const { return anchor_; }

  long long value(const Point3& x) const {
    if (!box_.contains(x)) return 0;
    return coeff_[static_cast<size_t>(box_.index(x))];
  }

  // Nonzero points in canonical (r,q,p) order.
  const std::vector<Point3>& support() const { return support_; }

private:
  Grid3 box_;
  Point3 anchor_;
  std::vector<long long> coeff_;
  std::vector<Point3> support_;
};

// Builds the elementary switching function of up to 30 distinct normalized
// directions. Throws std::length_error beyond that cap and
// std::invalid_argument for unnormalized or duplicate input.
GhostFunction elementary_ghost(const std::vector<Dir3>& dirs);

// 2D variant; directions are embedded with c = 0 and the box has depth 1.
GhostFunction elementary_ghost2(const std::vector<Dir2>& dirs);

// Materializes ghost values on a grid, shifted so the box corner sits at
// `shift`. Points outside the shifted box are zero. Throws if the shifted box
// does not fit inside the grid.
std::vector<Rational> ghost_values(const GhostFunction& g, const Grid3& grid,
                                   const Point3& shift);

// Union of the supports of all grid-contained shifts of the elementary ghost.
// Exactly the set of points whose value is not uniquely determined by the
// line sums; empty iff (grid, dirs) is nonvalid.
class SwitchingUnion {
public:
  SwitchingUnion() = default;
  SwitchingUnion(Grid3 grid, Point3 shift_extent, std::vector<uint8_t> mask);

  const Grid3& grid() const { return grid_; }
  bool empty() const { return count_ == 0; }
  long long count() const { return count_; }
  bool contains(const Point3& x) const {
    return grid_.contains(x) && mask_[static_cast<size_t>(grid_.index(x))] != 0;
  }
  // Number of admissible shifts per axis (the box U has this many points).
  const Point3& shift_extent() const { return shift_extent_; }
  long long shift_count() const {
    return static_cast<long long>(shift_extent_.p) * shift_extent_.q * shift_extent_.r;
  }
  // Members in canonical (r,q,p) order.
  std::vector<Point3> points() const;

private:
  Grid3 grid_;
  Point3 shift_extent_;
  std::vector<uint8_t> mask_;
  long long count_ = 0;
};

SwitchingUnion switching_union(const Grid3& grid, const std::vector<Dir3>& dirs);

// (m - sum|a|)(n - sum|b|)(o - sum|c|) for valid pairs, 0 for nonvalid ones.
// Equals the number of free choices any reconstruction must offer.
long long solution_space_dim(const Grid3& grid, const std::vector<Dir3>& dirs);

}  // namespace dtrec
