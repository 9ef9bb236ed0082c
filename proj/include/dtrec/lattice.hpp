#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "dtrec/rational.hpp"

namespace dtrec {

struct Point2 {
  int p = 0, q = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  int p = 0, q = 0, r = 0;
  friend bool operator==(const Point3&, const Point3&) = default;
};

std::ostream& operator<<(std::ostream&, const Point2&);
std::ostream& operator<<(std::ostream&, const Point3&);

// Lexicographic comparison on (q, p): the canonical 2D point order.
bool lex_qp_less(const Point2& a, const Point2& b);
// Lexicographic comparison on (r, q, p): the canonical 3D point order.
bool lex_rqp_less(const Point3& a, const Point3& b);

// 2D lattice direction. `primitive` records whether the components are known
// to be coprime; projections of 3D directions are not re-normalized and carry
// primitive = false.
struct Dir2 {
  int a = 0, b = 0;
  bool primitive = false;
  friend bool operator==(const Dir2& x, const Dir2& y) {
    return x.a == y.a && x.b == y.b;
  }
};

// Normalized primitive 3D lattice direction: components coprime, a >= 0,
// b >= 0 when a = 0, and c = 1 when a = b = 0.
struct Dir3 {
  int a = 0, b = 0, c = 0;
  friend bool operator==(const Dir3&, const Dir3&) = default;
};

std::ostream& operator<<(std::ostream&, const Dir2&);
std::ostream& operator<<(std::ostream&, const Dir3&);

bool is_normalized(const Dir3& d);

// Scales to primitive and fixes the sign so the invariants of Dir3 hold.
// Throws std::invalid_argument for the zero vector.
Dir3 normalize_direction(long long a, long long b, long long c);

// 2D counterpart: a >= 0, b = 1 when a = 0.
Dir2 normalize_direction2(long long a, long long b);

enum class Axis { X, Y, Z };

// Drops one coordinate: X -> (b,c), Y -> (a,c), Z -> (a,b).
// No re-normalization; the result may be non-primitive or (0,0).
Dir2 project_direction(const Dir3& d, Axis axis);

struct Grid2 {
  int m = 0, n = 0;
  long long size() const { return static_cast<long long>(m) * n; }
  bool contains(const Point2& x) const {
    return x.p >= 0 && x.p < m && x.q >= 0 && x.q < n;
  }
  long long index(const Point2& x) const { return x.p + static_cast<long long>(m) * x.q; }
  friend bool operator==(const Grid2&, const Grid2&) = default;
};

struct Grid3 {
  int m = 0, n = 0, o = 0;
  long long size() const { return static_cast<long long>(m) * n * o; }
  bool contains(const Point3& x) const {
    return x.p >= 0 && x.p < m && x.q >= 0 && x.q < n && x.r >= 0 && x.r < o;
  }
  long long index(const Point3& x) const {
    return x.p + static_cast<long long>(m) * (x.q + static_cast<long long>(n) * x.r);
  }
  Point3 point(long long flat) const {
    int p = static_cast<int>(flat % m);
    int q = static_cast<int>((flat / m) % n);
    int r = static_cast<int>(flat / (static_cast<long long>(m) * n));
    return {p, q, r};
  }
  friend bool operator==(const Grid3&, const Grid3&) = default;
};

// Throws std::invalid_argument unless all dimensions are >= 1 and the total
// cell count stays within addressable bounds.
void check_grid(const Grid3& g);

inline Grid3 embed2(const Grid2& g) { return {g.m, g.n, 1}; }
inline Dir3 embed2(const Dir2& d) { return {d.a, d.b, 0}; }
inline Point3 embed2(const Point2& x) { return {x.p, x.q, 0}; }

// One lattice line clipped to a grid: points base + t*dir for t = 0..len-1,
// where base is the lexicographically (r,q,p)-smallest grid point of the line.
struct Line {
  Point3 base;
  int len = 0;
};

// Identifies a line within a line-sum table.
struct LineKey {
  int direction = 0;  // index into the table's direction list
  Point3 base;
  friend bool operator==(const LineKey&, const LineKey&) = default;
};

// All lines of one direction on a grid, with constant-time point-to-line lookup.
class LineIndex {
public:
  LineIndex(const Grid3& grid, const Dir3& dir);

  const Grid3& grid() const { return grid_; }
  const Dir3& dir() const { return dir_; }
  const std::vector<Line>& lines() const { return lines_; }
  int line_of(long long flat) const { return line_of_[static_cast<size_t>(flat)]; }

  // Step from base toward increasing (r,q,p); either dir or -dir.
  Point3 forward_step() const { return fwd_; }

private:
  Grid3 grid_;
  Dir3 dir_;
  Point3 fwd_;
  std::vector<Line> lines_;
  std::vector<int32_t> line_of_;
};

// Lines of `dir` on `grid` in canonical order (bases ascending in (r,q,p)).
std::vector<Line> enumerate_lines(const Grid3& grid, const Dir3& dir);

// Exact line sums of a grid function for every direction of D.
// Lines are stored per direction in canonical order.
class LineSumTable {
public:
  LineSumTable() = default;
  LineSumTable(Grid3 grid, std::vector<Dir3> dirs,
               std::vector<std::vector<Rational>> sums);

  const Grid3& grid() const { return grid_; }
  const std::vector<Dir3>& directions() const { return dirs_; }
  const std::vector<Rational>& sums(int direction) const { return sums_[direction]; }
  std::vector<Rational>& sums(int direction) { return sums_[direction]; }

private:
  Grid3 grid_;
  std::vector<Dir3> dirs_;
  std::vector<std::vector<Rational>> sums_;
};

// Computes the exact line sums of f (flat-indexed, size grid.size()) for every
// direction. Directions must be normalized and distinct.
LineSumTable forward_project(const Grid3& grid, const std::vector<Rational>& f,
                             const std::vector<Dir3>& dirs);

enum class Validity { Valid, Nonvalid };

struct ComponentSums {
  long long sa = 0, sb = 0, sc = 0;  // sums of |a_h|, |b_h|, |c_h|
};

ComponentSums component_sums(const std::vector<Dir3>& dirs);

// Valid iff sum|a| < m, sum|b| < n and sum|c| < o. A nonvalid pair admits no
// nonzero function with all-zero line sums, so reconstruction is unique.
Validity validity(const Grid3& grid, const std::vector<Dir3>& dirs);

// Throws std::invalid_argument unless dirs are normalized, distinct and nonempty.
void check_directions(const std::vector<Dir3>& dirs);

}  // namespace dtrec
