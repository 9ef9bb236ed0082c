#include "dtrec/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dtrec {

std::ostream& operator<<(std::ostream& os, const Point2& x) {
  return os << "(" << x.p << "," << x.q << ")";
}

std::ostream& operator<<(std::ostream& os, const Point3& x) {
  return os << "(" << x.p << "," << x.q << "," << x.r << ")";
}

std::ostream& operator<<(std::ostream& os, const Dir2& d) {
  return os << "(" << d.a << "," << d.b << ")";
}

std::ostream& operator<<(std::ostream& os, const Dir3& d) {
  return os << "(" << d.a << "," << d.b << "," << d.c << ")";
}

bool lex_qp_less(const Point2& a, const Point2& b) {
  if (a.q != b.q) return a.q < b.q;
  return a.p < b.p;
}

bool lex_rqp_less(const Point3& a, const Point3& b) {
  if (a.r != b.r) return a.r < b.r;
  if (a.q != b.q) return a.q < b.q;
  return a.p < b.p;
}

namespace {

long long gcd3(long long a, long long b, long long c) {
  return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
}

int checked_int(long long v) {
  if (v < -1000000000LL || v > 1000000000LL)
    throw std::invalid_argument("direction component out of range");
  return static_cast<int>(v);
}

}  // namespace

bool is_normalized(const Dir3& d) {
  if (d.a == 0 && d.b == 0 && d.c == 0) return false;
  if (gcd3(d.a, d.b, d.c) != 1) return false;
  if (d.a < 0) return false;
  if (d.a == 0 && d.b < 0) return false;
  if (d.a == 0 && d.b == 0 && d.c != 1) return false;
  return true;
}

Dir3 normalize_direction(long long a, long long b, long long c) {
  if (a == 0 && b == 0 && c == 0)
    throw std::invalid_argument("normalize_direction: zero vector");
  long long g = gcd3(a, b, c);
  a /= g;
  b /= g;
  c /= g;
  bool flip = a < 0 || (a == 0 && b < 0) || (a == 0 && b == 0 && c < 0);
  if (flip) {
    a = -a;
    b = -b;
    c = -c;
  }
  return {checked_int(a), checked_int(b), checked_int(c)};
}

Dir2 normalize_direction2(long long a, long long b) {
  if (a == 0 && b == 0)
    throw std::invalid_argument("normalize_direction2: zero vector");
  long long g = std::gcd(std::abs(a), std::abs(b));
  a /= g;
  b /= g;
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
  }
  return {checked_int(a), checked_int(b), true};
}

Dir2 project_direction(const Dir3& d, Axis axis) {
  switch (axis) {
    case Axis::X: return {d.b, d.c, false};
    case Axis::Y: return {d.a, d.c, false};
    case Axis::Z: return {d.a, d.b, false};
  }
  throw std::invalid_argument("project_direction: bad axis");
}

void check_grid(const Grid3& g) {
  if (g.m < 1 || g.n < 1 || g.o < 1)
    throw std::invalid_argument("grid dimensions must be >= 1");
  if (g.size() > (1LL << 31))
    throw std::invalid_argument("grid too large");
}

void check_directions(const std::vector<Dir3>& dirs) {
  if (dirs.empty()) throw std::invalid_argument("direction set is empty");
  for (size_t i = 0; i < dirs.size(); ++i) {
    if (!is_normalized(dirs[i]))
      throw std::invalid_argument("direction " + std::to_string(i) + " is not normalized");
    for (size_t j = 0; j < i; ++j)
      if (dirs[i] == dirs[j])
        throw std::invalid_argument("duplicate direction at index " + std::to_string(i));
  }
}

namespace {

// Step that decreases (r,q,p) lexicographic order along the line.
Point3 decreasing_step(const Dir3& d) {
  int s;
  if (d.c != 0)
    s = d.c > 0 ? -1 : 1;
  else if (d.b != 0)
    s = d.b > 0 ? -1 : 1;
  else
    s = -1;  // a > 0 for a nonzero normalized direction with b = c = 0
  return {s * d.a, s * d.b, s * d.c};
}

Point3 add(const Point3& x, const Point3& s) {
  return {x.p + s.p, x.q + s.q, x.r + s.r};
}

}  // namespace

LineIndex::LineIndex(const Grid3& grid, const Dir3& dir) : grid_(grid), dir_(dir) {
  check_grid(grid);
  if (!is_normalized(dir))
    throw std::invalid_argument("LineIndex: direction is not normalized");
  Point3 back = decreasing_step(dir);
  fwd_ = {-back.p, -back.q, -back.r};
  line_of_.assign(static_cast<size_t>(grid.size()), -1);
  for (long long flat = 0; flat < grid.size(); ++flat) {
    Point3 x = grid.point(flat);
    if (grid.contains(add(x, back))) continue;  // not a base point
    int id = static_cast<int>(lines_.size());
    int len = 0;
    for (Point3 y = x; grid.contains(y); y = add(y, fwd_)) {
      line_of_[static_cast<size_t>(grid.index(y))] = id;
      ++len;
    }
    lines_.push_back({x, len});
  }
}

std::vector<Line> enumerate_lines(const Grid3& grid, const Dir3& dir) {
  return LineIndex(grid, dir).lines();
}

LineSumTable::LineSumTable(Grid3 grid, std::vector<Dir3> dirs,
                           std::vector<std::vector<Rational>> sums)
    : grid_(grid), dirs_(std::move(dirs)), sums_(std::move(sums)) {
  if (dirs_.size() != sums_.size())
    throw std::invalid_argument("LineSumTable: direction/sum count mismatch");
}

LineSumTable forward_project(const Grid3& grid, const std::vector<Rational>& f,
                             const std::vector<Dir3>& dirs) {
  check_grid(grid);
  check_directions(dirs);
  if (static_cast<long long>(f.size()) != grid.size())
    throw std::invalid_argument("forward_project: value array size mismatch");
  std::vector<std::vector<Rational>> sums(dirs.size());
  for (size_t h = 0; h < dirs.size(); ++h) {
    LineIndex idx(grid, dirs[h]);
    sums[h].assign(idx.lines().size(), Rational());
    for (long long flat = 0; flat < grid.size(); ++flat)
      sums[h][static_cast<size_t>(idx.line_of(flat))] += f[static_cast<size_t>(flat)];
  }
  return LineSumTable(grid, dirs, std::move(sums));
}

ComponentSums component_sums(const std::vector<Dir3>& dirs) {
  ComponentSums s;
  for (const Dir3& d : dirs) {
    s.sa += std::abs(d.a);
    s.sb += std::abs(d.b);
    s.sc += std::abs(d.c);
  }
  return s;
}

Validity validity(const Grid3& grid, const std::vector<Dir3>& dirs) {
  check_grid(grid);
  check_directions(dirs);
  ComponentSums s = component_sums(dirs);
  bool ok = s.sa < grid.m && s.sb < grid.n && s.sc < grid.o;
  return ok ? Validity::Valid : Validity::Nonvalid;
}

}  // namespace dtrec
