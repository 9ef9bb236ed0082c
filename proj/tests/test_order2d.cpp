#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dtrec/order2d.hpp"
#include "oracles.hpp"

using namespace dtrec;

namespace {

// slopes 2/3, 1, 2; the middle and last inputs are deliberately non-primitive
BorderFan mixed_fan() {
  return border_fan({{3, -2, true}, {2, -2, false}, {3, -6, false}});
}

std::vector<Dir2> random_fan_dirs(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4), comp(1, 4);
  std::vector<Dir2> dirs(static_cast<size_t>(count(rng)));
  for (auto& d : dirs) {
    d.a = comp(rng);
    d.b = -comp(rng);
    d.primitive = std::gcd(d.a, -d.b) == 1;
  }
  std::stable_sort(dirs.begin(), dirs.end(), [](const Dir2& x, const Dir2& y) {
    return static_cast<long long>(-x.b) * y.a < static_cast<long long>(-y.b) * x.a;
  });
  return dirs;
}

}  // namespace

TEST_CASE("triangle index picks the first satisfied cone") {
  auto fan = mixed_fan();
  CHECK(triangle_index(fan, {0, 0}) == 0);
  CHECK(triangle_index(fan, {6, 0}) == 0);
  CHECK(triangle_index(fan, {4, 2}) == 1);
  CHECK(triangle_index(fan, {3, 3}) == 1);
  CHECK(triangle_index(fan, {2, 4}) == 2);
  CHECK(triangle_index(fan, {0, 6}) == 2);

  CHECK_THROWS_AS(triangle_index(fan, {-1, 0}), std::domain_error);
  CHECK_THROWS_AS(triangle_index(fan, {0, -2}), std::domain_error);
  CHECK_THROWS_AS(triangle_index(BorderFan{}, {0, 0}), std::domain_error);
}

TEST_CASE("weights of the three-slot mixed fan") {
  auto fan = mixed_fan();
  CHECK(weight(fan, {0, 0}) == Rational(0));
  CHECK(weight(fan, {6, 0}) == Rational(3, 4));
  CHECK(weight(fan, {0, 6}) == Rational(3, 5));
  CHECK(weight(fan, {4, 2}) == Rational(6, 7));
  CHECK(weight(fan, {3, 3}) == Rational(6, 7));
  CHECK(weight(fan, {2, 4}) == Rational(4, 5));

  // weight is exactly 1 on the whole border chain, including the lattice
  // points interior to its segments
  for (const auto& b : fan.border)
    if (b.p >= 0 && b.q >= 0) CHECK(weight(fan, b) == Rational(1));
  CHECK(weight(fan, {4, 3}) == Rational(1));
  CHECK(weight(fan, {2, 6}) == Rational(1));
  CHECK(weight(fan, {1, 8}) == Rational(1));

  int zeros = 0;
  for (int q = 0; q <= 11; ++q)
    for (int p = 0; p <= 11; ++p)
      if (weight(fan, {p, q}).is_zero()) ++zeros;
  CHECK(zeros == 1);
}

TEST_CASE("weight agrees with the ray oracle and the cone-minimum form") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 20; ++iter) {
    auto fan = border_fan(random_fan_dirs(rng));
    for (int q = 0; q <= 12; ++q)
      for (int p = 0; p <= 12; ++p) {
        Rational w = weight(fan, {p, q});
        CHECK(w == oracle::ray_weight(fan.border, {p, q}));
        Rational best = Rational(static_cast<long long>(fan.slots[0].a) * q +
                                     static_cast<long long>(fan.slots[0].bmag) * p,
                                 fan.slots[0].denom);
        for (const auto& s : fan.slots) {
          Rational v(static_cast<long long>(s.a) * q +
                         static_cast<long long>(s.bmag) * p,
                     s.denom);
          if (v < best) best = v;
        }
        CHECK(w == best);
      }
  }
}

TEST_CASE("one full merged step away from a light point sheds weight") {
  std::mt19937_64 rng(42);
  std::vector<BorderFan> fans{mixed_fan(),
                              border_fan({{3, -2, true}, {4, -3, true}, {1, -2, true}})};
  for (int iter = 0; iter < 10; ++iter)
    fans.push_back(border_fan(random_fan_dirs(rng)));

  for (const auto& fan : fans)
    for (int q = 0; q <= 12; ++q)
      for (int p = 0; p <= 12; ++p) {
        Rational w = weight(fan, {p, q});
        if (!(w < Rational(1))) continue;
        const FanSlot& s = fan.slots[triangle_index(fan, {p, q})];
        if (p >= s.a) CHECK(weight(fan, {p - s.a, q + s.bmag}) < w);
        if (q >= s.bmag) CHECK(weight(fan, {p + s.a, q - s.bmag}) < w);
      }
}

TEST_CASE("corner frames classify directions and map coordinates") {
  Grid2 grid{4, 3};
  std::vector<Dir2> dirs{{1, -1, true}, {1, 1, true}, {0, 1, true},
                         {1, 0, true}, {3, -2, true}};

  auto f0 = corner_transform(grid, dirs, 0);
  CHECK(f0.corner == 0);
  CHECK(f0.origin == Point2{0, 0});
  CHECK(f0.sx == 1);
  CHECK(f0.sy == 1);
  REQUIRE(f0.fan.slots.size() == 2);
  CHECK(f0.fan_sources == std::vector<int>{4, 0});
  CHECK(f0.slot_dirs(0) == std::vector<int>{4});
  CHECK(f0.slot_dirs(1) == std::vector<int>{0});

  auto f1 = corner_transform(grid, dirs, 1);
  CHECK(f1.origin == Point2{3, 0});
  CHECK(f1.sx == -1);
  CHECK(f1.sy == 1);
  CHECK(f1.fan_sources == std::vector<int>{1});
  CHECK(f1.fan.border == std::vector<Point2>{{1, 0}, {0, 1}});

  auto f2 = corner_transform(grid, dirs, 2);
  CHECK(f2.origin == Point2{0, 2});
  CHECK(f2.fan_sources == std::vector<int>{1});

  auto f3 = corner_transform(grid, dirs, 3);
  CHECK(f3.origin == Point2{3, 2});
  CHECK(f3.sx == -1);
  CHECK(f3.sy == -1);
  CHECK(f3.fan_sources == std::vector<int>{4, 0});
  CHECK(f3.to_global({1, 1}) == Point2{2, 1});
  for (int q = 0; q < grid.n; ++q)
    for (int p = 0; p < grid.m; ++p) {
      CHECK(f3.to_local(f3.to_global({p, q})) == Point2{p, q});
      CHECK(grid.contains(f3.to_global({p, q})));
    }

  // merged slots pool the original indices of their source directions
  auto fm = corner_transform(grid, {{1, -1, true}, {2, -2, false}}, 0);
  REQUIRE(fm.fan.slots.size() == 1);
  CHECK(fm.slot_dirs(0) == std::vector<int>{0, 1});

  CHECK_THROWS_AS(corner_transform(grid, dirs, 4), std::invalid_argument);
  CHECK_THROWS_AS(corner_transform(grid, dirs, -1), std::invalid_argument);
}

TEST_CASE("corner order without a fan is empty") {
  Grid2 grid{4, 4};
  auto frame = corner_transform(grid, {{0, 1, true}, {1, 0, true}}, 0);
  CHECK(frame.fan.slots.empty());
  CHECK(corner_order(grid, frame).entries.empty());
  CHECK(corner_order(grid, frame, true).entries.empty());
}

TEST_CASE("full sweep of a 3x3 grid under one diagonal") {
  Grid2 grid{3, 3};
  auto frame = corner_transform(grid, {{1, -1, true}}, 0);
  OpCounter ops;
  auto order = corner_order(grid, frame, true, &ops);

  std::vector<Point2> expect{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                             {0, 2}, {2, 1}, {1, 2}, {2, 2}};
  REQUIRE(order.entries.size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i) {
    CHECK(order.entries[i].local == expect[i]);
    CHECK(order.entries[i].wnum == expect[i].p + expect[i].q);
    CHECK(order.entries[i].wden == 1);
  }
  CHECK(ops.mul_div == 0);
  CHECK(ops.value_mul_div == 0);

  // below the border only the origin is scheduled
  auto light = corner_order(grid, frame, false);
  REQUIRE(light.entries.size() == 1);
  CHECK(light.entries[0].local == Point2{0, 0});
}

TEST_CASE("sweep of an 8x7 page under three slopes") {
  Grid2 grid{8, 7};
  std::vector<Dir2> dirs{{3, -2, true}, {4, -3, true}, {1, -2, true}};
  auto frame = corner_transform(grid, dirs, 0);
  CHECK(frame.fan.border ==
        std::vector<Point2>{{8, 0}, {5, 2}, {1, 5}, {0, 7}});

  // the only grid points exactly on the border chain
  std::vector<Point2> on_border;
  for (int q = 0; q < grid.n; ++q)
    for (int p = 0; p < grid.m; ++p)
      if (weight(frame.fan, {p, q}) == Rational(1)) on_border.push_back({p, q});
  CHECK(on_border == std::vector<Point2>{{5, 2}, {1, 5}});

  OpCounter ops;
  auto order = corner_order(grid, frame, false, &ops);
  CHECK(ops.mul_div == 0);
  CHECK(ops.value_mul_div == 0);
  CHECK(ops.compares > 0);

  std::set<std::pair<int, int>> expect;
  for (int q = 0; q < grid.n; ++q)
    for (int p = 0; p < grid.m; ++p)
      if (weight(frame.fan, {p, q}) < Rational(1)) expect.insert({p, q});
  REQUIRE(order.entries.size() == expect.size());

  Rational prev(0);
  std::set<std::pair<int, int>> seen;
  for (size_t i = 0; i < order.entries.size(); ++i) {
    const auto& e = order.entries[i];
    Rational w(e.wnum, e.wden);
    CHECK(w == weight(frame.fan, e.local));
    CHECK(w < Rational(1));
    CHECK(e.slot == static_cast<int>(triangle_index(frame.fan, e.local)));
    CHECK(e.corner == 0);
    CHECK(e.global == frame.to_global(e.local));
    if (i > 0) {
      CHECK(prev <= w);
      if (prev == w) {
        const auto& d = order.entries[i - 1];
        CHECK((d.local.q < e.local.q ||
               (d.local.q == e.local.q && d.local.p < e.local.p)));
      }
    }
    prev = w;
    seen.insert({e.local.p, e.local.q});
  }
  CHECK(seen == expect);

  auto full = corner_order(grid, frame, true);
  CHECK(full.entries.size() == static_cast<size_t>(grid.m) * grid.n);
}

TEST_CASE("scheduled points only need earlier points on their slot line") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> ext(5, 9), dcount(1, 5), comp(-3, 3);

  for (int iter = 0; iter < 25; ++iter) {
    Grid2 grid{ext(rng), ext(rng)};
    std::vector<Dir2> dirs(static_cast<size_t>(dcount(rng)));
    for (auto& d : dirs) {
      do {
        d.a = comp(rng);
        d.b = comp(rng);
      } while (d.a == 0 && d.b == 0);
      d.primitive = std::gcd(std::abs(d.a), std::abs(d.b)) == 1;
    }

    for (int corner = 0; corner < kCornerCount; ++corner) {
      auto frame = corner_transform(grid, dirs, corner);
      if (frame.fan.slots.empty()) continue;
      auto order = corner_order(grid, frame, false);

      std::map<std::pair<int, int>, size_t> position;
      for (size_t i = 0; i < order.entries.size(); ++i)
        position[{order.entries[i].local.p, order.entries[i].local.q}] = i;

      for (size_t i = 0; i < order.entries.size(); ++i) {
        const auto& e = order.entries[i];
        const FanSlot& s = frame.fan.slots[static_cast<size_t>(e.slot)];
        for (int sgn : {-1, 1}) {
          for (int t = 1;; ++t) {
            Point2 y{e.local.p + sgn * t * s.a, e.local.q - sgn * t * s.bmag};
            if (!grid.contains(y)) break;
            if (weight(frame.fan, y) < Rational(1)) {
              auto it = position.find({y.p, y.q});
              REQUIRE(it != position.end());
              CHECK(it->second < i);
            }
          }
        }
      }
    }
  }
}
