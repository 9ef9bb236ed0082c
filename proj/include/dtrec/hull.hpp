#pragma once

#include <string>
#include <vector>

#include "dtrec/lattice.hpp"

namespace dtrec {

// One facet of the hull: a closed vertex ring (counterclockwise around the
// outward normal) plus the distinct primitive edge directions occurring on it.
struct HullFace {
  std::vector<Point3> ring;
  std::vector<Dir3> edge_dirs;
};

// Convex hull of the switching union, built directly as a zonotope: one
// segment per direction plus axis-parallel segments for the slack the grid
// leaves around the elementary bounding box.
struct HullPolytope {
  bool empty = true;
  int rank = -1;                 // affine dimension: 0 point, 1 segment, 2 flat, 3 solid
  std::vector<Point3> vertices;  // canonical (r,q,p) order
  std::vector<HullFace> faces;
};

HullPolytope hull3(const Grid3& grid, const std::vector<Dir3>& dirs);

// Convex polygon in a coordinate plane; counterclockwise ring starting at the
// lexicographically (q,p)-smallest vertex. Empty polygon has no vertices.
struct HullPolygon {
  bool empty = true;
  std::vector<Point2> vertices;
};

// Shadow of the hull under projection along an axis.
HullPolygon project_hull(const HullPolytope& hull, Axis axis);

// Exact 2D convex hull of a point set (monotone chain); shared with tests.
HullPolygon convex_hull2(std::vector<Point2> pts);

struct FaceAuditReport {
  bool ok = true;
  int face_count = 0;
  std::vector<std::string> violations;
};

// Checks that every face is a parallelogram whose edge directions lie in +-D
// or are axis-parallel.
FaceAuditReport face_audit(const HullPolytope& hull, const std::vector<Dir3>& dirs);

// One slot of a border fan: a maximal group of input directions sharing a
// slope, merged by vector addition. The merged vector is (a, -bmag).
struct FanSlot {
  int a = 0;
  int bmag = 0;
  std::vector<int> sources;  // indices into the input direction list
  long long cum_b = 0;       // sum of bmag over slots up to and including this one
  long long suf_a = 0;       // sum of a over later slots
  long long denom = 0;       // a*cum_b + bmag*suf_a; weight = (a*y + bmag*x) / denom
};

// Border chain of a corner fan. Directions live in the quadrant x right,
// y down: a > 0, b < 0. Border points run from (sum a, 0) to (0, sum |b|),
// each segment subtracting one merged direction.
struct BorderFan {
  std::vector<Point2> border;  // k+1 chain points
  std::vector<FanSlot> slots;  // k merged slots, slope |b|/a strictly increasing
  long long sum_a = 0;
  long long sum_b = 0;
};

// Input directions must have a > 0, b < 0 and be ordered by nondecreasing
// |b|/a (repeats and non-primitive vectors allowed; equal slopes are merged).
// Throws std::invalid_argument on a misordered or out-of-quadrant list.
BorderFan border_fan(const std::vector<Dir2>& dirs);

}  // namespace dtrec
