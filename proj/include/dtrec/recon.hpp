#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dtrec/errors.hpp"
#include "dtrec/ghost.hpp"
#include "dtrec/lattice.hpp"
#include "dtrec/opcount.hpp"
#include "dtrec/order2d.hpp"
#include "dtrec/rational.hpp"

namespace dtrec {

enum class Provenance : char {
  Forced,         // value shared by every solution (point outside the switching union)
  Free,           // value assigned by the free-choice policy
  FreeDependent,  // inside the switching union, derived from line sums + free values
};

// Values for the free positions: a single default (0 unless changed) or an
// explicit position -> value list that must cover exactly the positions the
// solver designates.
struct FreeChoicePolicy {
  Rational default_value{0};
  bool has_explicit = false;
  std::vector<std::pair<Point3, Rational>> assignments;

  static FreeChoicePolicy constant(Rational v) {
    FreeChoicePolicy p;
    p.default_value = std::move(v);
    return p;
  }
  static FreeChoicePolicy explicit_list(std::vector<std::pair<Point3, Rational>> a) {
    FreeChoicePolicy p;
    p.has_explicit = true;
    p.assignments = std::move(a);
    return p;
  }
};

struct ReconDiagnostics {
  // First-level sweep schedules: pages (q,r) processed along x, pages (p,r)
  // along y, and the top-slice points still unknown when the slice solve began.
  std::vector<Point2> step1_pages;
  std::vector<Point2> step2_pages;
  std::vector<Point3> first_slice_unknowns;
  std::vector<std::string> flags;  // defensive events worth surfacing
  int levels = 0;
};

struct ReconResult {
  Grid3 grid;
  std::vector<Rational> values;        // flat-indexed
  std::vector<Provenance> provenance;  // flat-indexed
  std::vector<Point3> free_positions;  // in assignment order
  OpCounter ops;
  ReconDiagnostics diagnostics;
};

struct PeelOutcome {
  std::vector<Rational> values;
  std::vector<char> known;         // flat-indexed 0/1
  std::vector<Point3> unresolved;  // stalled points, canonical order
  OpCounter ops;
};

// Exhausts single-unknown lines only: every line with one unknown point gets
// that point set to the line's residual, repeatedly, in FIFO discovery order.
// `known` seeds initial values. Throws InconsistentLineSums when a fully
// known line disagrees with its sum.
PeelOutcome peel(const Grid3& grid, const std::vector<Dir3>& dirs,
                 const LineSumTable& sums,
                 const std::vector<std::pair<Point3, Rational>>& known = {});

// Full solver: projection sweeps along x and y, per-level top-slice solves
// with free-choice injection, a final z sweep, and the peel engine after
// every stage. Throws InconsistentLineSums on contradictory input and
// PolicyMismatch when an explicit policy does not fit the designated
// positions.
ReconResult reconstruct_3d(const Grid3& grid, const std::vector<Dir3>& dirs,
                           const LineSumTable& sums,
                           const FreeChoicePolicy& policy = {});

// 2D instances run through the same engine on a depth-1 grid. `sums` must be
// built on embed2(grid) with the embedded directions.
ReconResult reconstruct_2d(const Grid2& grid, const std::vector<Dir2>& dirs,
                           const LineSumTable& sums,
                           const FreeChoicePolicy& policy = {});

struct VerifyMismatch {
  int direction = 0;
  Point3 base;
  Rational expected;
  Rational actual;
};

struct VerifyReport {
  bool ok = true;
  Rational max_abs_discrepancy{0};
  long long mismatch_count = 0;
  std::vector<VerifyMismatch> mismatches;  // capped sample
};

// Recomputes every line sum of `values` and compares with `sums` exactly.
VerifyReport verify(const Grid3& grid, const std::vector<Dir3>& dirs,
                    const LineSumTable& sums, const std::vector<Rational>& values);

struct ProvenanceAuditReport {
  bool ok = true;
  std::vector<Point3> forced_inside;   // labeled forced yet inside the union
  std::vector<Point3> movable_outside; // labeled free/dependent yet outside it
};

// Forced points must lie outside the switching union, free and
// free-dependent points inside it.
ProvenanceAuditReport provenance_audit(const ReconResult& result,
                                       const SwitchingUnion& T);

}  // namespace dtrec
