#include "dtrec/recon.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dtrec {

namespace {

std::string point_str(const Point3& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string dir_str(const Dir3& d) {
  std::ostringstream os;
  os << d;
  return os.str();
}

// Exact-subtraction peel state over one grid: per-line residuals and unknown
// counts, with a FIFO worklist of single-unknown lines.
class Engine {
 public:
  Engine(const Grid3& grid, const std::vector<Dir3>& dirs, const LineSumTable& sums,
         OpCounter& ops)
      : grid_(grid), dirs_(dirs), ops_(ops) {
    if (!(sums.grid() == grid) || sums.directions() != dirs)
      throw MalformedInput("line-sum table does not describe this grid and direction set");
    total_unknown_ = grid.size();
    known_.assign(static_cast<size_t>(grid.size()), 0);
    values_.assign(static_cast<size_t>(grid.size()), Rational(0));
    for (size_t k = 0; k < dirs.size(); ++k) {
      idx_.emplace_back(grid, dirs[k]);
      const std::vector<Line>& lines = idx_.back().lines();
      if (sums.sums(static_cast<int>(k)).size() != lines.size())
        throw MalformedInput("line-sum table has the wrong line count for direction " +
                             dir_str(dirs[k]));
      residual_.push_back(sums.sums(static_cast<int>(k)));
      std::vector<int> u(lines.size());
      for (size_t l = 0; l < lines.size(); ++l) {
        u[l] = lines[l].len;
        if (lines[l].len == 1) worklist_.push_back({static_cast<int>(k), static_cast<int>(l)});
      }
      unknowns_.push_back(std::move(u));
    }
  }

  bool is_known(long long flat) const { return known_[static_cast<size_t>(flat)] != 0; }
  long long total_unknown() const { return total_unknown_; }
  const std::vector<Rational>& values() const { return values_; }
  const std::vector<char>& known() const { return known_; }

  void assign(long long flat, Rational v) {
    if (known_[static_cast<size_t>(flat)])
      throw std::logic_error("assign: point already known");
    known_[static_cast<size_t>(flat)] = 1;
    values_[static_cast<size_t>(flat)] = std::move(v);
    --total_unknown_;
    ++ops_.assigns;
    const Rational& val = values_[static_cast<size_t>(flat)];
    for (size_t k = 0; k < dirs_.size(); ++k) {
      int l = idx_[k].line_of(flat);
      residual_[k][static_cast<size_t>(l)] -= val;
      ++ops_.add_sub;
      int u = --unknowns_[k][static_cast<size_t>(l)];
      if (u == 1) {
        worklist_.push_back({static_cast<int>(k), l});
      } else if (u == 0) {
        ++ops_.compares;
        if (!residual_[k][static_cast<size_t>(l)].is_zero())
          throw_line_conflict(static_cast<int>(k), l);
      }
    }
  }

  // Resolves `flat` when it is the only unknown of its line in direction k.
  bool try_resolve_point_via(int k, long long flat) {
    if (known_[static_cast<size_t>(flat)]) return false;
    int l = idx_[static_cast<size_t>(k)].line_of(flat);
    ++ops_.compares;
    if (unknowns_[static_cast<size_t>(k)][static_cast<size_t>(l)] != 1) return false;
    Rational v = residual_[static_cast<size_t>(k)][static_cast<size_t>(l)];
    assign(flat, std::move(v));
    return true;
  }

  void peel() {
    while (!worklist_.empty()) {
      auto [k, l] = worklist_.front();
      worklist_.pop_front();
      ++ops_.compares;
      if (unknowns_[static_cast<size_t>(k)][static_cast<size_t>(l)] != 1) continue;
      resolve_line(k, l);
    }
  }

 private:
  void resolve_line(int k, int l) {
    const Line& line = idx_[static_cast<size_t>(k)].lines()[static_cast<size_t>(l)];
    Point3 step = idx_[static_cast<size_t>(k)].forward_step();
    Point3 x = line.base;
    for (int t = 0; t < line.len; ++t) {
      long long flat = grid_.index(x);
      if (!known_[static_cast<size_t>(flat)]) {
        Rational v = residual_[static_cast<size_t>(k)][static_cast<size_t>(l)];
        assign(flat, std::move(v));
        return;
      }
      x = {x.p + step.p, x.q + step.q, x.r + step.r};
    }
    throw std::logic_error("resolve_line: no unknown point found");
  }

  [[noreturn]] void throw_line_conflict(int k, int l) {
    const Line& line = idx_[static_cast<size_t>(k)].lines()[static_cast<size_t>(l)];
    throw InconsistentLineSums("line sums are inconsistent along direction " +
                                   dir_str(dirs_[static_cast<size_t>(k)]) + " on the line through " +
                                   point_str(line.base),
                               k);
  }

  Grid3 grid_;
  std::vector<Dir3> dirs_;
  OpCounter& ops_;
  std::vector<LineIndex> idx_;
  std::vector<std::vector<Rational>> residual_;
  std::vector<std::vector<int>> unknowns_;
  std::vector<char> known_;
  std::vector<Rational> values_;
  std::deque<std::pair<int, int>> worklist_;
  long long total_unknown_ = 0;
};

class PolicyCursor {
 public:
  PolicyCursor(const FreeChoicePolicy& policy, const Grid3& grid) : policy_(policy) {
    if (policy.has_explicit) {
      for (const auto& [pt, v] : policy.assignments) {
        if (!grid.contains(pt))
          throw PolicyMismatch("free value at " + point_str(pt) + " lies outside the grid");
        auto [it, fresh] = entries_.emplace(grid.index(pt), Entry{v, false});
        if (!fresh) throw PolicyMismatch("duplicate free value at " + point_str(pt));
      }
    }
  }

  Rational take(const Grid3& grid, long long flat) {
    if (!policy_.has_explicit) return policy_.default_value;
    auto it = entries_.find(flat);
    if (it == entries_.end())
      throw PolicyMismatch("no free value supplied for position " +
                           point_str(grid.point(flat)));
    it->second.used = true;
    return it->second.value;
  }

  void finish(const Grid3& grid) const {
    for (const auto& [flat, e] : entries_) {
      if (!e.used)
        throw PolicyMismatch("free value at " + point_str(grid.point(flat)) +
                             " matches no free position of this instance");
    }
  }

 private:
  struct Entry {
    Rational value;
    bool used = false;
  };
  const FreeChoicePolicy& policy_;
  std::map<long long, Entry> entries_;
};

VerifyReport verify_impl(const Grid3& grid, const std::vector<Dir3>& dirs,
                         const LineSumTable& sums, const std::vector<Rational>& values,
                         OpCounter* ops) {
  constexpr long long kMismatchSample = 16;
  VerifyReport report;
  if (values.size() != static_cast<size_t>(grid.size()))
    throw MalformedInput("value array size does not match the grid");
  for (size_t k = 0; k < dirs.size(); ++k) {
    LineIndex idx(grid, dirs[k]);
    const std::vector<Line>& lines = idx.lines();
    if (sums.sums(static_cast<int>(k)).size() != lines.size())
      throw MalformedInput("line-sum table has the wrong line count for direction " +
                           dir_str(dirs[k]));
    Point3 step = idx.forward_step();
    for (size_t l = 0; l < lines.size(); ++l) {
      Rational acc(0);
      Point3 x = lines[l].base;
      for (int t = 0; t < lines[l].len; ++t) {
        acc += values[static_cast<size_t>(grid.index(x))];
        if (ops) ++ops->add_sub;
        x = {x.p + step.p, x.q + step.q, x.r + step.r};
      }
      const Rational& want = sums.sums(static_cast<int>(k))[l];
      if (ops) ++ops->compares;
      if (acc != want) {
        report.ok = false;
        ++report.mismatch_count;
        Rational diff = acc - want;
        if (diff < Rational(0)) diff = Rational(0) - diff;
        if (diff > report.max_abs_discrepancy) report.max_abs_discrepancy = diff;
        if (report.mismatch_count <= kMismatchSample)
          report.mismatches.push_back(
              {static_cast<int>(k), lines[l].base, want, acc});
      }
    }
  }
  return report;
}

// The full pipeline around one Engine. Levels peel the top slice one at a
// time; the engine's residuals make the slice subtraction implicit.
class Pipeline {
 public:
  Pipeline(const Grid3& grid, const std::vector<Dir3>& dirs, const LineSumTable& sums,
           const FreeChoicePolicy& policy, ReconResult& result)
      : grid_(grid),
        dirs_(dirs),
        sums_(sums),
        result_(result),
        eng_(grid, dirs, sums, result.ops),
        policy_(policy, grid),
        cs_(component_sums(dirs)),
        ghost_(elementary_ghost(dirs)) {}

  void run() {
    eng_.peel();
    int depth = grid_.o;
    bool first = true;
    while (depth > cs_.sc) {
      sweep(Axis::X, depth, first ? &result_.diagnostics.step1_pages : nullptr);
      sweep(Axis::Y, depth, first ? &result_.diagnostics.step2_pages : nullptr);
      slice_solve(depth, first);
      first = false;
      --depth;
      ++result_.diagnostics.levels;
    }
    if (depth > 0) final_z_sweep(depth);
    defensive_completion();
    policy_.finish(grid_);

    VerifyReport check = verify_impl(grid_, dirs_, sums_, eng_.values(), &result_.ops);
    if (!check.ok) {
      const VerifyMismatch& m = check.mismatches.front();
      throw InconsistentLineSums(
          "reconstruction failed verification along direction " +
              dir_str(dirs_[static_cast<size_t>(m.direction)]) + " on the line through " +
              point_str(m.base) + " (" + std::to_string(check.mismatch_count) +
              " mismatched lines)",
          m.direction);
    }
  }

 private:
  Grid2 page_grid(Axis axis, int depth) const {
    switch (axis) {
      case Axis::X: return {grid_.n, depth};
      case Axis::Y: return {grid_.m, depth};
      case Axis::Z: return {grid_.m, grid_.n};
    }
    return {1, 1};
  }

  long long flat_of(Axis axis, const Point2& page, int i) const {
    Point3 x;
    switch (axis) {
      case Axis::X: x = {i, page.p, page.q}; break;
      case Axis::Y: x = {page.p, i, page.q}; break;
      case Axis::Z: x = {page.p, page.q, i}; break;
    }
    return grid_.index(x);
  }

  int fiber_len(Axis axis, int depth) const {
    switch (axis) {
      case Axis::X: return grid_.m;
      case Axis::Y: return grid_.n;
      case Axis::Z: return depth;
    }
    return 0;
  }

  // One projection sweep: order the pages outside the projected hull corner by
  // corner, and solve each page's fiber through the coupled 3D lines.
  void sweep(Axis axis, int depth, std::vector<Point2>* record) {
    Grid2 pg = page_grid(axis, depth);
    std::vector<Dir2> pdirs;
    std::vector<int> src3;
    for (size_t k = 0; k < dirs_.size(); ++k) {
      Dir2 d2 = project_direction(dirs_[k], axis);
      if (d2.a == 0 && d2.b == 0) continue;
      pdirs.push_back(d2);
      src3.push_back(static_cast<int>(k));
    }
    if (pdirs.empty()) return;
    std::vector<char> recorded;
    if (record) recorded.assign(static_cast<size_t>(pg.size()), 0);
    int len = fiber_len(axis, depth);
    for (int corner = 0; corner < kCornerCount; ++corner) {
      CornerFrame frame = corner_transform(pg, pdirs, corner);
      result_.ops.mul_div += 2 * static_cast<long long>(frame.fan.slots.size());
      ReconOrder order = corner_order(pg, frame, false, &result_.ops);
      for (const OrderEntry& e : order.entries) {
        if (record) {
          size_t pi = static_cast<size_t>(pg.index(e.global));
          if (!recorded[pi]) {
            recorded[pi] = 1;
            record->push_back(e.global);
          }
        }
        for (int si : frame.slot_dirs(e.slot)) {
          int k3 = src3[static_cast<size_t>(si)];
          for (int i = 0; i < len; ++i)
            eng_.try_resolve_point_via(k3, flat_of(axis, e.global, i));
        }
      }
      eng_.peel();
    }
  }

  // Membership mask of the top slice r = depth-1 in the switching union of the
  // depth-limited grid.
  std::vector<char> slice_union_mask(int depth) const {
    std::vector<char> mask(static_cast<size_t>(grid_.m) * grid_.n, 0);
    long long pext = grid_.m - cs_.sa;
    long long qext = grid_.n - cs_.sb;
    long long rext = depth - cs_.sc;
    if (pext <= 0 || qext <= 0 || rext <= 0) return mask;
    for (const Point3& s : ghost_.support()) {
      long long ur = static_cast<long long>(depth) - 1 - s.r;
      if (ur < 0 || ur >= rext) continue;
      int plo = s.p, phi = static_cast<int>(s.p + pext - 1);
      int qlo = s.q, qhi = static_cast<int>(s.q + qext - 1);
      plo = std::max(plo, 0);
      phi = std::min(phi, grid_.m - 1);
      qlo = std::max(qlo, 0);
      qhi = std::min(qhi, grid_.n - 1);
      for (int q = qlo; q <= qhi; ++q)
        for (int p = plo; p <= phi; ++p)
          mask[static_cast<size_t>(p) + static_cast<size_t>(grid_.m) * q] = 1;
    }
    return mask;
  }

  // Solves the top slice r = depth-1 as a 2D problem over the c = 0
  // directions: border-fan schedule outside the slice hull, then peel with
  // free-choice injection at each stall.
  void slice_solve(int depth, bool first) {
    int rtop = depth - 1;
    Grid2 g2{grid_.m, grid_.n};
    long long base = static_cast<long long>(grid_.m) * grid_.n * rtop;
    long long end = base + static_cast<long long>(grid_.m) * grid_.n;

    if (first) {
      for (long long flat = base; flat < end; ++flat)
        if (!eng_.is_known(flat))
          result_.diagnostics.first_slice_unknowns.push_back(grid_.point(flat));
    }

    std::vector<Dir2> sdirs;
    std::vector<int> src3;
    for (size_t k = 0; k < dirs_.size(); ++k) {
      if (dirs_[k].c != 0) continue;
      sdirs.push_back({dirs_[k].a, dirs_[k].b, true});
      src3.push_back(static_cast<int>(k));
    }
    if (!sdirs.empty()) {
      for (int corner = 0; corner < kCornerCount; ++corner) {
        CornerFrame frame = corner_transform(g2, sdirs, corner);
        result_.ops.mul_div += 2 * static_cast<long long>(frame.fan.slots.size());
        ReconOrder order = corner_order(g2, frame, false, &result_.ops);
        for (const OrderEntry& e : order.entries) {
          long long flat = base + g2.index(e.global);
          for (int si : frame.slot_dirs(e.slot))
            eng_.try_resolve_point_via(src3[static_cast<size_t>(si)], flat);
        }
        eng_.peel();
      }
    }

    std::vector<char> in_union = slice_union_mask(depth);
    long long cur_union = base, cur_any = base;
    while (true) {
      eng_.peel();
      while (cur_any < end && eng_.is_known(cur_any)) ++cur_any;
      if (cur_any == end) break;
      while (cur_union < end &&
             (eng_.is_known(cur_union) ||
              !in_union[static_cast<size_t>(cur_union - base)]))
        ++cur_union;
      long long pick = cur_union < end ? cur_union : cur_any;
      if (cur_union >= end)
        result_.diagnostics.flags.push_back("free choice outside the switching union at " +
                                            point_str(grid_.point(pick)));
      inject(pick);
    }
  }

  // Final sweep over the residual depth (a nonvalid situation along z): every
  // column in weight order of the z-projected fan, then peel.
  void final_z_sweep(int depth) {
    Grid2 pg = page_grid(Axis::Z, depth);
    std::vector<Dir2> pdirs;
    std::vector<int> src3;
    for (size_t k = 0; k < dirs_.size(); ++k) {
      Dir2 d2 = project_direction(dirs_[k], Axis::Z);
      if (d2.a == 0 && d2.b == 0) continue;
      pdirs.push_back(d2);
      src3.push_back(static_cast<int>(k));
    }
    if (!pdirs.empty()) {
      for (int corner = 0; corner < kCornerCount; ++corner) {
        CornerFrame frame = corner_transform(pg, pdirs, corner);
        result_.ops.mul_div += 2 * static_cast<long long>(frame.fan.slots.size());
        ReconOrder order = corner_order(pg, frame, true, &result_.ops);
        for (const OrderEntry& e : order.entries)
          for (int si : frame.slot_dirs(e.slot)) {
            int k3 = src3[static_cast<size_t>(si)];
            for (int i = 0; i < depth; ++i)
              eng_.try_resolve_point_via(k3, flat_of(Axis::Z, e.global, i));
          }
        eng_.peel();
      }
    }
    eng_.peel();
  }

  // Anything still unknown here is off the expected path: peel with free
  // injection across the whole grid, flagging every choice.
  void defensive_completion() {
    if (eng_.total_unknown() == 0) return;
    SwitchingUnion full_union = switching_union(grid_, dirs_);
    long long end = grid_.size();
    long long cur_union = 0, cur_any = 0;
    while (true) {
      eng_.peel();
      while (cur_any < end && eng_.is_known(cur_any)) ++cur_any;
      if (cur_any == end) break;
      while (cur_union < end &&
             (eng_.is_known(cur_union) || !full_union.contains(grid_.point(cur_union))))
        ++cur_union;
      long long pick = cur_union < end ? cur_union : cur_any;
      result_.diagnostics.flags.push_back("late free choice at " +
                                          point_str(grid_.point(pick)));
      inject(pick);
    }
  }

  void inject(long long flat) {
    Rational v = policy_.take(grid_, flat);
    result_.free_positions.push_back(grid_.point(flat));
    eng_.assign(flat, std::move(v));
  }

 public:
  const Engine& engine() const { return eng_; }

 private:
  Grid3 grid_;
  std::vector<Dir3> dirs_;
  const LineSumTable& sums_;
  ReconResult& result_;
  Engine eng_;
  PolicyCursor policy_;
  ComponentSums cs_;
  GhostFunction ghost_;
};

}  // namespace

PeelOutcome peel(const Grid3& grid, const std::vector<Dir3>& dirs,
                 const LineSumTable& sums,
                 const std::vector<std::pair<Point3, Rational>>& known) {
  check_grid(grid);
  check_directions(dirs);
  PeelOutcome out;
  Engine eng(grid, dirs, sums, out.ops);
  for (const auto& [pt, v] : known) {
    if (!grid.contains(pt))
      throw MalformedInput("known point " + point_str(pt) + " lies outside the grid");
    if (eng.is_known(grid.index(pt)))
      throw MalformedInput("known point " + point_str(pt) + " given twice");
    eng.assign(grid.index(pt), v);
  }
  eng.peel();
  out.values = eng.values();
  out.known = eng.known();
  for (long long flat = 0; flat < grid.size(); ++flat)
    if (!out.known[static_cast<size_t>(flat)]) out.unresolved.push_back(grid.point(flat));
  return out;
}

ReconResult reconstruct_3d(const Grid3& grid, const std::vector<Dir3>& dirs,
                           const LineSumTable& sums, const FreeChoicePolicy& policy) {
  check_grid(grid);
  check_directions(dirs);
  ReconResult result;
  result.grid = grid;
  Pipeline pipe(grid, dirs, sums, policy, result);
  pipe.run();
  result.values = pipe.engine().values();

  SwitchingUnion T = switching_union(grid, dirs);
  result.provenance.assign(static_cast<size_t>(grid.size()), Provenance::Forced);
  for (long long flat = 0; flat < grid.size(); ++flat)
    if (T.contains(grid.point(flat)))
      result.provenance[static_cast<size_t>(flat)] = Provenance::FreeDependent;
  for (const Point3& pt : result.free_positions)
    result.provenance[static_cast<size_t>(grid.index(pt))] = Provenance::Free;
  return result;
}

ReconResult reconstruct_2d(const Grid2& grid, const std::vector<Dir2>& dirs,
                           const LineSumTable& sums, const FreeChoicePolicy& policy) {
  if (grid.m < 1 || grid.n < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  std::vector<Dir3> d3;
  d3.reserve(dirs.size());
  for (const Dir2& d : dirs) {
    Dir2 norm = normalize_direction2(d.a, d.b);
    if (norm.a != d.a || norm.b != d.b)
      throw std::invalid_argument("2D directions must be primitive and sign-normalized");
    d3.push_back(embed2(d));
  }
  return reconstruct_3d(embed2(grid), d3, sums, policy);
}

VerifyReport verify(const Grid3& grid, const std::vector<Dir3>& dirs,
                    const LineSumTable& sums, const std::vector<Rational>& values) {
  check_grid(grid);
  check_directions(dirs);
  return verify_impl(grid, dirs, sums, values, nullptr);
}

ProvenanceAuditReport provenance_audit(const ReconResult& result, const SwitchingUnion& T) {
  ProvenanceAuditReport report;
  const Grid3& grid = result.grid;
  for (long long flat = 0; flat < grid.size(); ++flat) {
    Point3 pt = grid.point(flat);
    bool inside = T.contains(pt);
    Provenance p = result.provenance[static_cast<size_t>(flat)];
    if (p == Provenance::Forced && inside) {
      report.ok = false;
      report.forced_inside.push_back(pt);
    } else if (p != Provenance::Forced && !inside) {
      report.ok = false;
      report.movable_outside.push_back(pt);
    }
  }
  return report;
}

}  // namespace dtrec
