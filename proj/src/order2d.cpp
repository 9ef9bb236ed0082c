#include "dtrec/order2d.hpp"

#include <algorithm>
#include <stdexcept>

namespace dtrec {

std::size_t triangle_index(const BorderFan& fan, const Point2& pt) {
  if (fan.slots.empty()) throw std::domain_error("triangle_index: empty fan");
  if (pt.p < 0 || pt.q < 0)
    throw std::domain_error("triangle_index: point outside the fan quadrant");
  for (std::size_t h = 0; h + 1 < fan.slots.size(); ++h)
    if (static_cast<long long>(pt.q) * fan.slots[h].suf_a <=
        static_cast<long long>(pt.p) * fan.slots[h].cum_b)
      return h;
  return fan.slots.size() - 1;  // suf_a = 0 there, so the test always holds
}

Rational weight(const BorderFan& fan, const Point2& pt) {
  std::size_t h = triangle_index(fan, pt);
  const FanSlot& s = fan.slots[h];
  long long num = static_cast<long long>(s.a) * pt.q +
                  static_cast<long long>(s.bmag) * pt.p;
  return Rational(num, s.denom);
}

std::vector<int> CornerFrame::slot_dirs(int slot) const {
  std::vector<int> out;
  for (int src : fan.slots[static_cast<std::size_t>(slot)].sources)
    out.push_back(fan_sources[static_cast<std::size_t>(src)]);
  return out;
}

CornerFrame corner_transform(const Grid2& grid, const std::vector<Dir2>& dirs,
                             int corner) {
  if (corner < 0 || corner >= kCornerCount)
    throw std::invalid_argument("corner_transform: corner must be 0..3");
  CornerFrame frame;
  frame.corner = corner;
  frame.grid = grid;
  frame.sx = (corner == 1 || corner == 3) ? -1 : 1;
  frame.sy = (corner == 2 || corner == 3) ? -1 : 1;
  frame.origin = {frame.sx < 0 ? grid.m - 1 : 0, frame.sy < 0 ? grid.n - 1 : 0};

  // Reflect into the frame, then use the sign freedom of a line direction to
  // put a > 0; keep what lands in the fan quadrant.
  struct Local {
    Dir2 d;
    int source;
  };
  std::vector<Local> eligible;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    int a = frame.sx * dirs[i].a;
    int b = frame.sy * dirs[i].b;
    if (a < 0 || (a == 0 && b < 0)) {
      a = -a;
      b = -b;
    }
    if (a > 0 && b < 0) eligible.push_back({{a, b, false}, static_cast<int>(i)});
  }
  std::stable_sort(eligible.begin(), eligible.end(), [](const Local& x, const Local& y) {
    return static_cast<long long>(-x.d.b) * y.d.a < static_cast<long long>(-y.d.b) * x.d.a;
  });
  if (!eligible.empty()) {
    std::vector<Dir2> fan_input;
    for (const Local& e : eligible) {
      fan_input.push_back(e.d);
      frame.fan_sources.push_back(e.source);
    }
    frame.fan = border_fan(fan_input);
  }
  return frame;
}

ReconOrder corner_order(const Grid2& grid, const CornerFrame& frame,
                        bool include_ge1, OpCounter* ops) {
  ReconOrder order;
  const std::vector<FanSlot>& slots = frame.fan.slots;
  if (slots.empty()) return order;
  OpCounter scratch;
  OpCounter& c = ops ? *ops : scratch;
  const std::size_t k = slots.size();

  // Running registers replace every multiplication in the scan:
  //   row_num[h] = a_h * y        row_lhs[h] = suf_a_h * y
  //   num[h]     = a_h*y+bmag_h*x rhs[h]     = cum_b_h * x
  std::vector<long long> row_num(k, 0), row_lhs(k, 0), num(k), rhs(k);
  for (int y = 0; y < grid.n; ++y) {
    if (y > 0)
      for (std::size_t h = 0; h < k; ++h) {
        row_num[h] += slots[h].a;
        row_lhs[h] += slots[h].suf_a;
        c.add_sub += 2;
      }
    num = row_num;
    std::fill(rhs.begin(), rhs.end(), 0);
    for (int x = 0; x < grid.m; ++x) {
      if (x > 0)
        for (std::size_t h = 0; h < k; ++h) {
          num[h] += slots[h].bmag;
          rhs[h] += slots[h].cum_b;
          c.add_sub += 2;
        }
      std::size_t hit = k - 1;
      for (std::size_t h = 0; h + 1 < k; ++h) {
        ++c.compares;
        if (row_lhs[h] <= rhs[h]) {
          hit = h;
          break;
        }
      }
      ++c.compares;
      if (!include_ge1 && num[hit] >= slots[hit].denom) continue;
      order.entries.push_back({{x, y},
                               frame.to_global({x, y}),
                               static_cast<int>(hit),
                               frame.corner,
                               num[hit],
                               slots[hit].denom});
    }
  }

  std::sort(order.entries.begin(), order.entries.end(),
            [&c](const OrderEntry& a, const OrderEntry& b) {
              ++c.compares;
              __int128 lhs = static_cast<__int128>(a.wnum) * b.wden;
              __int128 rhs2 = static_cast<__int128>(b.wnum) * a.wden;
              if (lhs != rhs2) return lhs < rhs2;
              if (a.local.q != b.local.q) return a.local.q < b.local.q;
              return a.local.p < b.local.p;
            });
  c.assigns += static_cast<long long>(order.entries.size());
  return order;
}

}  // namespace dtrec
