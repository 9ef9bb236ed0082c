#include "dtrec/ghost.hpp"

#include <stdexcept>

namespace dtrec {

GhostFunction::GhostFunction(Grid3 box, Point3 anchor, std::vector<long long> coeff)
    : box_(box), anchor_(anchor), coeff_(std::move(coeff)) {
  if (static_cast<long long>(coeff_.size()) != box_.size())
    throw std::invalid_argument("GhostFunction: coefficient array size mismatch");
  for (long long flat = 0; flat < box_.size(); ++flat)
    if (coeff_[static_cast<size_t>(flat)] != 0) support_.push_back(box_.point(flat));
}

GhostFunction elementary_ghost(const std::vector<Dir3>& dirs) {
  check_directions(dirs);
  if (dirs.size() > 30)
    throw std::length_error("elementary_ghost: more than 30 directions");
  ComponentSums s = component_sums(dirs);
  Grid3 box{static_cast<int>(s.sa) + 1, static_cast<int>(s.sb) + 1,
            static_cast<int>(s.sc) + 1};
  if (box.size() > (1LL << 27))
    throw std::length_error("elementary_ghost: bounding box too large");

  int shift_b = 0, shift_c = 0;
  for (const Dir3& d : dirs) {
    if (d.b < 0) shift_b += -d.b;
    if (d.c < 0) shift_c += -d.c;
  }
  Point3 anchor{0, shift_b, shift_c};

  std::vector<long long> coeff(static_cast<size_t>(box.size()), 0);
  coeff[static_cast<size_t>(box.index(anchor))] = 1;
  // Multiply by (1 - X^d) per direction: subtract a copy of the current
  // coefficients shifted by d. Iterating against the step direction keeps the
  // update in place.
  for (const Dir3& d : dirs) {
    bool fwd = d.c > 0 || (d.c == 0 && d.b > 0) || (d.c == 0 && d.b == 0 && d.a > 0);
    long long start = fwd ? box.size() - 1 : 0;
    long long stop = fwd ? -1 : box.size();
    long long step = fwd ? -1 : 1;
    for (long long flat = start; flat != stop; flat += step) {
      Point3 x = box.point(flat);
      Point3 from{x.p - d.a, x.q - d.b, x.r - d.c};
      if (!box.contains(from)) continue;
      coeff[static_cast<size_t>(flat)] -= coeff[static_cast<size_t>(box.index(from))];
    }
  }
  return GhostFunction(box, anchor, std::move(coeff));
}

GhostFunction elementary_ghost2(const std::vector<Dir2>& dirs) {
  std::vector<Dir3> d3;
  d3.reserve(dirs.size());
  for (const Dir2& d : dirs) d3.push_back(embed2(d));
  return elementary_ghost(d3);
}

std::vector<Rational> ghost_values(const GhostFunction& g, const Grid3& grid,
                                   const Point3& shift) {
  check_grid(grid);
  const Grid3& box = g.box();
  if (shift.p < 0 || shift.q < 0 || shift.r < 0 ||
      shift.p + box.m > grid.m || shift.q + box.n > grid.n || shift.r + box.o > grid.o)
    throw std::invalid_argument("ghost_values: shifted box leaves the grid");
  std::vector<Rational> f(static_cast<size_t>(grid.size()));
  for (const Point3& x : g.support()) {
    Point3 y{x.p + shift.p, x.q + shift.q, x.r + shift.r};
    f[static_cast<size_t>(grid.index(y))] = Rational(g.value(x));
  }
  return f;
}

SwitchingUnion::SwitchingUnion(Grid3 grid, Point3 shift_extent, std::vector<uint8_t> mask)
    : grid_(grid), shift_extent_(shift_extent), mask_(std::move(mask)) {
  if (static_cast<long long>(mask_.size()) != grid_.size())
    throw std::invalid_argument("SwitchingUnion: mask size mismatch");
  for (uint8_t b : mask_) count_ += b ? 1 : 0;
}

std::vector<Point3> SwitchingUnion::points() const {
  std::vector<Point3> pts;
  pts.reserve(static_cast<size_t>(count_));
  for (long long flat = 0; flat < grid_.size(); ++flat)
    if (mask_[static_cast<size_t>(flat)]) pts.push_back(grid_.point(flat));
  return pts;
}

SwitchingUnion switching_union(const Grid3& grid, const std::vector<Dir3>& dirs) {
  check_grid(grid);
  std::vector<uint8_t> mask(static_cast<size_t>(grid.size()), 0);
  if (validity(grid, dirs) == Validity::Nonvalid)
    return SwitchingUnion(grid, Point3{0, 0, 0}, std::move(mask));
  GhostFunction g = elementary_ghost(dirs);
  const Grid3& box = g.box();
  Point3 ext{grid.m - box.m + 1, grid.n - box.n + 1, grid.o - box.o + 1};
  for (int ur = 0; ur < ext.r; ++ur)
    for (int uq = 0; uq < ext.q; ++uq)
      for (int up = 0; up < ext.p; ++up)
        for (const Point3& x : g.support()) {
          Point3 y{x.p + up, x.q + uq, x.r + ur};
          mask[static_cast<size_t>(grid.index(y))] = 1;
        }
  return SwitchingUnion(grid, ext, std::move(mask));
}

long long solution_space_dim(const Grid3& grid, const std::vector<Dir3>& dirs) {
  if (validity(grid, dirs) == Validity::Nonvalid) return 0;
  ComponentSums s = component_sums(dirs);
  return (grid.m - s.sa) * (grid.n - s.sb) * (grid.o - s.sc);
}

}  // namespace dtrec
