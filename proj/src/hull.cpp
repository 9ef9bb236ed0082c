#include "dtrec/hull.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace dtrec {

namespace {

struct Vec3 {
  long long x = 0, y = 0, z = 0;
  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(long long s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

long long dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

bool is_zero(const Vec3& v) { return v.x == 0 && v.y == 0 && v.z == 0; }

Vec3 primitive(Vec3 v) {
  long long g = std::gcd(std::gcd(std::abs(v.x), std::abs(v.y)), std::abs(v.z));
  if (g > 1) {
    v.x /= g;
    v.y /= g;
    v.z /= g;
  }
  return v;
}

// Lexicographic (z, y, x) order, matching the canonical (r,q,p) point order.
bool lex_less(const Vec3& a, const Vec3& b) {
  if (a.z != b.z) return a.z < b.z;
  if (a.y != b.y) return a.y < b.y;
  return a.x < b.x;
}

Point3 to_point(const Vec3& v) {
  return {static_cast<int>(v.x), static_cast<int>(v.y), static_cast<int>(v.z)};
}

Vec3 to_vec(const Dir3& d) { return {d.a, d.b, d.c}; }

struct Gen {
  Vec3 prim;      // normalized primitive vector
  long long len;  // segment [0, len*prim]
};

// Counterclockwise vertex ring of corner + sum of segments [0, len*prim],
// all generators perpendicular to the outward normal nu.
std::vector<Point3> zonogon_ring(const Vec3& corner, const std::vector<Gen>& gens,
                                 const Vec3& nu) {
  std::vector<Vec3> edges;
  edges.reserve(2 * gens.size());
  for (const Gen& g : gens) {
    Vec3 s = g.len * g.prim;
    edges.push_back(s);
    edges.push_back({-s.x, -s.y, -s.z});
  }
  const Vec3 ref = edges.front();
  auto half = [&](const Vec3& u) {
    long long c = dot(cross(ref, u), nu);
    if (c > 0) return 0;
    if (c < 0) return 1;
    return dot(u, ref) > 0 ? 0 : 1;
  };
  std::sort(edges.begin(), edges.end(), [&](const Vec3& u, const Vec3& w) {
    int hu = half(u), hw = half(w);
    if (hu != hw) return hu < hw;
    return dot(cross(u, w), nu) > 0;
  });

  std::vector<Vec3> walk;
  walk.reserve(edges.size());
  Vec3 pos{0, 0, 0};
  for (const Vec3& e : edges) {
    walk.push_back(pos);
    pos = pos + e;
  }
  // Anchor the relative walk: the lex-least vertex of the Minkowski sum is the
  // corner plus every segment vector that is lex-negative.
  Vec3 walk_min = walk.front();
  for (const Vec3& v : walk)
    if (lex_less(v, walk_min)) walk_min = v;
  Vec3 target = corner;
  for (const Gen& g : gens) {
    Vec3 s = g.len * g.prim;
    if (lex_less(s, Vec3{0, 0, 0})) target = target + s;
  }
  Vec3 offset = target - walk_min;

  std::vector<Point3> ring;
  ring.reserve(walk.size());
  size_t start = 0;
  for (size_t i = 1; i < walk.size(); ++i)
    if (lex_less(walk[i], walk[start])) start = i;
  for (size_t i = 0; i < walk.size(); ++i)
    ring.push_back(to_point(walk[(start + i) % walk.size()] + offset));
  return ring;
}

std::vector<Gen> merged_generators(const Grid3& grid, const std::vector<Dir3>& dirs,
                                   const ComponentSums& s) {
  std::vector<Gen> gens;
  auto push = [&](Vec3 prim, long long len) {
    if (len <= 0) return;
    for (Gen& g : gens)
      if (g.prim == prim) {
        g.len += len;
        return;
      }
    gens.push_back({prim, len});
  };
  for (const Dir3& d : dirs) push(to_vec(d), 1);
  push({1, 0, 0}, grid.m - 1 - s.sa);
  push({0, 1, 0}, grid.n - 1 - s.sb);
  push({0, 0, 1}, grid.o - 1 - s.sc);
  return gens;
}

}  // namespace

HullPolytope hull3(const Grid3& grid, const std::vector<Dir3>& dirs) {
  HullPolytope hull;
  if (validity(grid, dirs) == Validity::Nonvalid) return hull;
  hull.empty = false;

  ComponentSums s = component_sums(dirs);
  Vec3 anchor{0, 0, 0};
  for (const Dir3& d : dirs) {
    if (d.b < 0) anchor.y += -d.b;
    if (d.c < 0) anchor.z += -d.c;
  }
  std::vector<Gen> gens = merged_generators(grid, dirs, s);

  // Affine rank of the generator span.
  size_t second = gens.size();
  for (size_t i = 1; i < gens.size(); ++i)
    if (!is_zero(cross(gens[0].prim, gens[i].prim))) {
      second = i;
      break;
    }
  if (second == gens.size()) {
    hull.rank = 1;
    Vec3 end = anchor;
    for (const Gen& g : gens) end = end + g.len * g.prim;
    hull.vertices = {to_point(anchor), to_point(end)};
  } else {
    Vec3 nu = primitive(cross(gens[0].prim, gens[second].prim));
    bool solid = false;
    for (const Gen& g : gens)
      if (dot(g.prim, nu) != 0) {
        solid = true;
        break;
      }
    if (!solid) {
      hull.rank = 2;
      HullFace face;
      face.ring = zonogon_ring(anchor, gens, nu);
      for (const Gen& g : gens)
        face.edge_dirs.push_back(normalize_direction(g.prim.x, g.prim.y, g.prim.z));
      hull.vertices = face.ring;
      hull.faces.push_back(std::move(face));
    } else {
      hull.rank = 3;
      std::map<std::tuple<long long, long long, long long>, Vec3> normals;
      for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j) {
          Vec3 c = cross(gens[i].prim, gens[j].prim);
          if (is_zero(c)) continue;
          Vec3 nu1 = primitive(c);
          Vec3 nu2{-nu1.x, -nu1.y, -nu1.z};
          normals.emplace(std::make_tuple(nu1.x, nu1.y, nu1.z), nu1);
          normals.emplace(std::make_tuple(nu2.x, nu2.y, nu2.z), nu2);
        }
      for (const auto& [key, nu] : normals) {
        std::vector<Gen> fgens;
        Vec3 corner = anchor;
        for (const Gen& g : gens) {
          long long d = dot(g.prim, nu);
          if (d == 0)
            fgens.push_back(g);
          else if (d > 0)
            corner = corner + g.len * g.prim;
        }
        HullFace face;
        face.ring = zonogon_ring(corner, fgens, nu);
        for (const Gen& g : fgens)
          face.edge_dirs.push_back(normalize_direction(g.prim.x, g.prim.y, g.prim.z));
        hull.faces.push_back(std::move(face));
      }
      std::vector<Point3> verts;
      for (const HullFace& f : hull.faces)
        verts.insert(verts.end(), f.ring.begin(), f.ring.end());
      std::sort(verts.begin(), verts.end(), lex_rqp_less);
      verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
      hull.vertices = std::move(verts);
    }
  }
  if (hull.rank != 3) {
    std::sort(hull.vertices.begin(), hull.vertices.end(), lex_rqp_less);
    hull.vertices.erase(std::unique(hull.vertices.begin(), hull.vertices.end()),
                        hull.vertices.end());
  }
  return hull;
}

HullPolygon convex_hull2(std::vector<Point2> pts) {
  HullPolygon poly;
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.q < b.q;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return poly;
  poly.empty = false;
  if (pts.size() <= 2) {
    poly.vertices = pts;
  } else {
    auto cross2 = [](const Point2& o, const Point2& a, const Point2& b) {
      return static_cast<long long>(a.p - o.p) * (b.q - o.q) -
             static_cast<long long>(a.q - o.q) * (b.p - o.p);
    };
    std::vector<Point2> ring(2 * pts.size());
    size_t k = 0;
    for (const Point2& x : pts) {  // lower chain
      while (k >= 2 && cross2(ring[k - 2], ring[k - 1], x) <= 0) --k;
      ring[k++] = x;
    }
    size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper chain
      while (k >= lower && cross2(ring[k - 2], ring[k - 1], *it) <= 0) --k;
      ring[k++] = *it;
    }
    ring.resize(k - 1);
    poly.vertices = std::move(ring);
  }
  // Rotate so the ring starts at the lex (q,p)-least vertex.
  size_t start = 0;
  for (size_t i = 1; i < poly.vertices.size(); ++i)
    if (lex_qp_less(poly.vertices[i], poly.vertices[start])) start = i;
  std::rotate(poly.vertices.begin(), poly.vertices.begin() + start, poly.vertices.end());
  return poly;
}

HullPolygon project_hull(const HullPolytope& hull, Axis axis) {
  if (hull.empty) return HullPolygon{};
  std::vector<Point2> pts;
  pts.reserve(hull.vertices.size());
  for (const Point3& v : hull.vertices) {
    switch (axis) {
      case Axis::X: pts.push_back({v.q, v.r}); break;
      case Axis::Y: pts.push_back({v.p, v.r}); break;
      case Axis::Z: pts.push_back({v.p, v.q}); break;
    }
  }
  return convex_hull2(std::move(pts));
}

FaceAuditReport face_audit(const HullPolytope& hull, const std::vector<Dir3>& dirs) {
  FaceAuditReport report;
  report.face_count = static_cast<int>(hull.faces.size());
  auto allowed = [&](const Dir3& e) {
    if (e == Dir3{1, 0, 0} || e == Dir3{0, 1, 0} || e == Dir3{0, 0, 1}) return true;
    for (const Dir3& d : dirs)
      if (d == e) return true;
    return false;
  };
  for (size_t i = 0; i < hull.faces.size(); ++i) {
    const HullFace& f = hull.faces[i];
    if (f.ring.size() != 4) {
      report.ok = false;
      report.violations.push_back("face " + std::to_string(i) + " has " +
                                  std::to_string(f.ring.size()) +
                                  " vertices, expected a parallelogram");
      continue;
    }
    for (size_t j = 0; j < f.ring.size(); ++j) {
      const Point3& u = f.ring[j];
      const Point3& v = f.ring[(j + 1) % f.ring.size()];
      Dir3 e = normalize_direction(v.p - u.p, v.q - u.q, v.r - u.r);
      if (!allowed(e)) {
        report.ok = false;
        report.violations.push_back("face " + std::to_string(i) +
                                    " has an edge direction outside +-D and the axes");
      }
    }
  }
  return report;
}

BorderFan border_fan(const std::vector<Dir2>& dirs) {
  if (dirs.empty()) throw std::invalid_argument("border_fan: empty direction list");
  for (const Dir2& d : dirs)
    if (d.a <= 0 || d.b >= 0)
      throw std::invalid_argument("border_fan: directions must have a > 0 and b < 0");
  for (size_t i = 0; i + 1 < dirs.size(); ++i) {
    // slope |b|/a must not decrease: |b_i| * a_{i+1} <= |b_{i+1}| * a_i
    long long lhs = static_cast<long long>(-dirs[i].b) * dirs[i + 1].a;
    long long rhs = static_cast<long long>(-dirs[i + 1].b) * dirs[i].a;
    if (lhs > rhs)
      throw std::invalid_argument("border_fan: directions are not ordered by slope");
  }

  BorderFan fan;
  for (size_t i = 0; i < dirs.size(); ++i) {
    int a = dirs[i].a, bmag = -dirs[i].b;
    if (!fan.slots.empty()) {
      FanSlot& last = fan.slots.back();
      if (static_cast<long long>(last.bmag) * a == static_cast<long long>(bmag) * last.a) {
        last.a += a;
        last.bmag += bmag;
        last.sources.push_back(static_cast<int>(i));
        continue;
      }
    }
    FanSlot slot;
    slot.a = a;
    slot.bmag = bmag;
    slot.sources.push_back(static_cast<int>(i));
    fan.slots.push_back(std::move(slot));
  }
  for (const FanSlot& s : fan.slots) {
    fan.sum_a += s.a;
    fan.sum_b += s.bmag;
  }
  long long cum = 0, suf = fan.sum_a;
  for (FanSlot& s : fan.slots) {
    cum += s.bmag;
    suf -= s.a;
    s.cum_b = cum;
    s.suf_a = suf;
    s.denom = s.a * cum + static_cast<long long>(s.bmag) * suf;
  }
  Point2 pt{static_cast<int>(fan.sum_a), 0};
  fan.border.push_back(pt);
  for (const FanSlot& s : fan.slots) {
    pt = {pt.p - s.a, pt.q + s.bmag};
    fan.border.push_back(pt);
  }
  return fan;
}

}  // namespace dtrec
