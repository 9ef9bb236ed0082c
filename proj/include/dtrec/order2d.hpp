#pragma once

#include <cstddef>
#include <vector>

#include "dtrec/hull.hpp"
#include "dtrec/lattice.hpp"
#include "dtrec/opcount.hpp"
#include "dtrec/rational.hpp"

namespace dtrec {

// Index of the fan slot whose triangle contains (p,q): the smallest h with
// q * suf_a(h) <= p * cum_b(h). Points on a ray between two triangles take
// the smaller index, the origin takes slot 0. Throws std::domain_error for
// negative coordinates or an empty fan.
std::size_t triangle_index(const BorderFan& fan, const Point2& pt);

// Exact rational weight (a_H q + bmag_H p) / denom_H with H = triangle_index.
// 0 at the origin, exactly 1 on the border chain, < 1 strictly below it.
Rational weight(const BorderFan& fan, const Point2& pt);

// One scheduled point of a corner sweep. The weight is carried as an exact
// int64 fraction wnum/wden (wden = the slot denominator).
struct OrderEntry {
  Point2 local;   // coordinates in the corner frame
  Point2 global;  // grid coordinates
  int slot = 0;   // index into the frame's fan.slots
  int corner = 0;
  long long wnum = 0;
  long long wden = 1;
};

struct ReconOrder {
  std::vector<OrderEntry> entries;
};

// Corners are numbered 0 (0,0), 1 (m-1,0), 2 (0,n-1), 3 (m-1,n-1).
inline constexpr int kCornerCount = 4;

// A grid corner together with the border fan of the directions that point
// into the grid from it. Local coordinates put the corner at the origin with
// the grid in the first quadrant; the coordinate map is involutive.
struct CornerFrame {
  int corner = 0;
  Grid2 grid{1, 1};
  Point2 origin{0, 0};
  int sx = 1, sy = 1;
  BorderFan fan;                 // may have zero slots (no eligible direction)
  std::vector<int> fan_sources;  // fan input position -> index into the input list

  Point2 to_global(const Point2& local) const {
    return {origin.p + sx * local.p, origin.q + sy * local.q};
  }
  Point2 to_local(const Point2& global) const {
    return {sx * (global.p - origin.p), sy * (global.q - origin.q)};
  }
  // Original direction indices feeding one merged slot.
  std::vector<int> slot_dirs(int slot) const;
};

// Reflects the grid so `corner` becomes the origin, classifies each direction
// by whether its sign-normalized reflection lands in the fan quadrant
// (a > 0, b < 0), and builds the merged border fan of the eligible ones,
// sorted by slope. Directions equal to (0,0) and axis-parallel ones are left
// out; they never participate in a corner ordering.
CornerFrame corner_transform(const Grid2& grid, const std::vector<Dir2>& dirs,
                             int corner);

// All grid points of the corner's fan with weight < 1 (the region outside the
// hull of the switching union), or every grid point when include_ge1 is set.
// Entries are sorted by nondecreasing weight, ties by local y then local x.
// The scan keeps per-slot running numerators so no multiplication is needed;
// weight comparisons count as single compare operations.
ReconOrder corner_order(const Grid2& grid, const CornerFrame& frame,
                        bool include_ge1 = false, OpCounter* ops = nullptr);

}  // namespace dtrec
