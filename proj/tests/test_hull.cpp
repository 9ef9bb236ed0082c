#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "dtrec/ghost.hpp"
#include "dtrec/hull.hpp"
#include "oracles.hpp"

using namespace dtrec;

namespace {

const std::vector<Dir3> kGolden{{1, 1, 2}, {1, -2, 1}, {1, 1, -2}, {1, 0, 0}};

const std::vector<Point3> kGoldenSupport{
    {1, 3, 0}, {2, 3, 0}, {2, 1, 1}, {3, 1, 1}, {0, 2, 2}, {1, 2, 2},
    {2, 4, 2}, {3, 4, 2}, {1, 0, 3}, {2, 0, 3}, {3, 2, 3}, {4, 2, 3},
    {1, 3, 4}, {2, 3, 4}, {2, 1, 5}, {3, 1, 5}};

// The support minus its two non-extreme members (1,2,2) and (3,2,3).
const std::vector<Point3> kGoldenHullVerts{
    {1, 3, 0}, {2, 3, 0}, {2, 1, 1}, {3, 1, 1}, {0, 2, 2}, {2, 4, 2},
    {3, 4, 2}, {1, 0, 3}, {2, 0, 3}, {4, 2, 3}, {1, 3, 4}, {2, 3, 4},
    {2, 1, 5}, {3, 1, 5}};

std::set<std::pair<int, int>> pair_set(const std::vector<Point2>& pts) {
  std::set<std::pair<int, int>> s;
  for (const auto& x : pts) s.insert({x.p, x.q});
  return s;
}

// (q,r) or (p,r) pages whose axis line misses the convex hull of the
// projected switching union; computed with the exact membership oracle.
std::set<std::pair<int, int>> exterior_pages(const std::vector<Point3>& support,
                                             Axis axis, int ext1, int ext2) {
  std::vector<std::vector<Rational>> proj;
  for (const auto& x : support) {
    if (axis == Axis::X)
      proj.push_back({Rational(x.q), Rational(x.r)});
    else
      proj.push_back({Rational(x.p), Rational(x.r)});
  }
  std::set<std::pair<int, int>> out;
  for (int u = 0; u < ext1; ++u)
    for (int v = 0; v < ext2; ++v)
      if (!oracle::in_convex_hull({Rational(u), Rational(v)}, proj))
        out.insert({u, v});
  return out;
}

}  // namespace

TEST_CASE("hull of the 5x5x6 four-direction pair") {
  auto hull = hull3(Grid3{5, 5, 6}, kGolden);
  CHECK(!hull.empty);
  CHECK(hull.rank == 3);
  CHECK(hull.vertices == kGoldenHullVerts);
  CHECK(hull.faces.size() == 12);

  auto audit = face_audit(hull, kGolden);
  CHECK(audit.ok);
  CHECK(audit.face_count == 12);
  CHECK(audit.violations.empty());

  for (const auto& f : hull.faces) {
    REQUIRE(f.ring.size() == 4);
    // opposite ring edges cancel in a parallelogram
    CHECK(f.ring[0].p + f.ring[2].p == f.ring[1].p + f.ring[3].p);
    CHECK(f.ring[0].q + f.ring[2].q == f.ring[1].q + f.ring[3].q);
    CHECK(f.ring[0].r + f.ring[2].r == f.ring[1].r + f.ring[3].r);
  }
}

TEST_CASE("hull of a nonvalid pair is empty") {
  auto hull = hull3(Grid3{4, 5, 6}, kGolden);
  CHECK(hull.empty);
  CHECK(hull.rank == -1);
  CHECK(hull.vertices.empty());
  CHECK(hull.faces.empty());
  auto audit = face_audit(hull, kGolden);
  CHECK(audit.ok);
  CHECK(audit.face_count == 0);
  CHECK(project_hull(hull, Axis::X).empty);
}

TEST_CASE("hull vertices are the extreme points of the switching union") {
  auto check_pair = [](const Grid3& grid, const std::vector<Dir3>& dirs) {
    auto hull = hull3(grid, dirs);
    auto u = switching_union(grid, dirs);
    if (u.empty()) {
      CHECK(hull.empty);
      return;
    }
    CHECK(!hull.empty);
    CHECK(hull.vertices == oracle::extreme_points3(u.points()));
  };

  check_pair(Grid3{5, 5, 6}, kGolden);
  check_pair(Grid3{6, 5, 6}, kGolden);
  check_pair(Grid3{6, 6, 7}, kGolden);

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> ext(1, 6), dcount(1, 4);
  for (int iter = 0; iter < 24; ++iter) {
    Grid3 grid{ext(rng), ext(rng), ext(rng)};
    auto dirs = oracle::random_dirs3(rng, dcount(rng), 2);
    check_pair(grid, dirs);
  }
}

TEST_CASE("hull rank degrades with the generator span") {
  std::vector<Dir3> one{{1, 1, 1}};

  auto seg = hull3(Grid3{2, 2, 2}, one);
  CHECK(seg.rank == 1);
  CHECK(seg.vertices == std::vector<Point3>{{0, 0, 0}, {1, 1, 1}});
  CHECK(seg.faces.empty());

  auto flat = hull3(Grid3{2, 2, 3}, one);
  CHECK(flat.rank == 2);
  REQUIRE(flat.faces.size() == 1);
  CHECK(flat.faces[0].ring.size() == 4);
  CHECK(flat.vertices ==
        std::vector<Point3>{{0, 0, 0}, {0, 0, 1}, {1, 1, 1}, {1, 1, 2}});
  CHECK(face_audit(flat, one).ok);

  auto solid = hull3(Grid3{3, 3, 3}, one);
  CHECK(solid.rank == 3);
  CHECK(face_audit(solid, one).ok);
  auto u = switching_union(Grid3{3, 3, 3}, one);
  CHECK(solid.vertices == oracle::extreme_points3(u.points()));
}

TEST_CASE("snug axis-triple hull is the unit cube") {
  std::vector<Dir3> axes{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto hull = hull3(Grid3{2, 2, 2}, axes);
  CHECK(hull.rank == 3);
  CHECK(hull.vertices.size() == 8);
  CHECK(hull.faces.size() == 6);
  CHECK(face_audit(hull, axes).ok);
}

TEST_CASE("hull projections match planar hulls of the projected union") {
  auto hull = hull3(Grid3{5, 5, 6}, kGolden);

  auto px = project_hull(hull, Axis::X);
  std::vector<Point2> qr;
  for (const auto& x : kGoldenSupport) qr.push_back({x.q, x.r});
  CHECK(pair_set(px.vertices) == pair_set(oracle::extreme_points2(qr)));
  CHECK(px.vertices == convex_hull2(qr).vertices);

  auto py = project_hull(hull, Axis::Y);
  std::vector<Point2> pr;
  for (const auto& x : kGoldenSupport) pr.push_back({x.p, x.r});
  CHECK(pair_set(py.vertices) == pair_set(oracle::extreme_points2(pr)));

  auto pz = project_hull(hull, Axis::Z);
  std::vector<Point2> pq;
  for (const auto& x : kGoldenSupport) pq.push_back({x.p, x.q});
  CHECK(pair_set(pz.vertices) == pair_set(oracle::extreme_points2(pq)));
}

TEST_CASE("pages outside the projected hull for the 5x5x6 pair") {
  std::set<std::pair<int, int>> step1{
      {0, 0}, {0, 1}, {0, 2}, {0, 4}, {0, 5}, {1, 0}, {2, 0},
      {2, 5}, {3, 5}, {4, 0}, {4, 1}, {4, 3}, {4, 4}, {4, 5}};
  CHECK(exterior_pages(kGoldenSupport, Axis::X, 5, 6) == step1);

  std::set<std::pair<int, int>> step2{{0, 0}, {0, 1}, {0, 3}, {0, 4},
                                      {0, 5}, {1, 5}, {3, 0}, {4, 0},
                                      {4, 1}, {4, 2}, {4, 4}, {4, 5}};
  CHECK(exterior_pages(kGoldenSupport, Axis::Y, 5, 6) == step2);
}

TEST_CASE("planar convex hull basics") {
  auto square = convex_hull2(
      {{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}});
  CHECK(!square.empty);
  CHECK(square.vertices ==
        std::vector<Point2>{{0, 0}, {2, 0}, {2, 2}, {0, 2}});

  auto collinear = convex_hull2({{0, 0}, {1, 1}, {2, 2}});
  CHECK(collinear.vertices == std::vector<Point2>{{0, 0}, {2, 2}});

  auto single = convex_hull2({{3, 4}});
  CHECK(!single.empty);
  CHECK(single.vertices == std::vector<Point2>{{3, 4}});

  CHECK(convex_hull2({}).empty);
}

TEST_CASE("border fan of three distinct slopes") {
  auto fan = border_fan({{3, -2, true}, {4, -3, true}, {1, -2, true}});
  CHECK(fan.sum_a == 8);
  CHECK(fan.sum_b == 7);
  CHECK(fan.border ==
        std::vector<Point2>{{8, 0}, {5, 2}, {1, 5}, {0, 7}});
  REQUIRE(fan.slots.size() == 3);
  CHECK(fan.slots[0].a == 3);
  CHECK(fan.slots[0].bmag == 2);
  CHECK(fan.slots[0].cum_b == 2);
  CHECK(fan.slots[0].suf_a == 5);
  CHECK(fan.slots[0].denom == 16);
  CHECK(fan.slots[1].denom == 4 * 5 + 3 * 1);
  CHECK(fan.slots[2].denom == 1 * 7 + 2 * 0);
  for (size_t h = 0; h < fan.slots.size(); ++h)
    CHECK(fan.slots[h].sources == std::vector<int>{static_cast<int>(h)});
}

TEST_CASE("border fan keeps non-primitive inputs unreduced") {
  auto fan = border_fan({{3, -2, true}, {2, -2, false}, {3, -6, false}});
  CHECK(fan.sum_a == 8);
  CHECK(fan.sum_b == 10);
  CHECK(fan.border ==
        std::vector<Point2>{{8, 0}, {5, 2}, {3, 4}, {0, 10}});
  REQUIRE(fan.slots.size() == 3);
  CHECK(fan.slots[0].denom == 16);
  CHECK(fan.slots[1].denom == 14);
  CHECK(fan.slots[2].denom == 30);
}

TEST_CASE("border fan merges equal slopes by vector addition") {
  auto fan = border_fan({{1, -1, true}, {2, -2, false}});
  REQUIRE(fan.slots.size() == 1);
  CHECK(fan.slots[0].a == 3);
  CHECK(fan.slots[0].bmag == 3);
  CHECK(fan.slots[0].sources == std::vector<int>{0, 1});
  CHECK(fan.slots[0].denom == 9);
  CHECK(fan.border == std::vector<Point2>{{3, 0}, {0, 3}});

  auto single = border_fan({{1, -1, true}});
  CHECK(single.border == std::vector<Point2>{{1, 0}, {0, 1}});
  CHECK(single.slots[0].denom == 1);
}

TEST_CASE("border fan rejects bad input") {
  CHECK_THROWS_AS(border_fan({}), std::invalid_argument);
  CHECK_THROWS_AS(border_fan({{1, -2, true}, {1, -1, true}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(border_fan({{0, -1, true}}), std::invalid_argument);
  CHECK_THROWS_AS(border_fan({{1, 1, true}}), std::invalid_argument);
  CHECK_THROWS_AS(border_fan({{1, 0, true}}), std::invalid_argument);
  CHECK_THROWS_AS(border_fan({{-1, -1, true}}), std::invalid_argument);
}
