#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dtrec/errors.hpp"
#include "dtrec/ghost.hpp"
#include "dtrec/hull.hpp"
#include "dtrec/io.hpp"
#include "dtrec/lattice.hpp"
#include "dtrec/order2d.hpp"
#include "dtrec/recon.hpp"

namespace {

using namespace dtrec;

std::string pt(const Point3& x) {
  std::ostringstream os;
  os << "(" << x.p << "," << x.q << "," << x.r << ")";
  return os.str();
}

std::string pt(const Point2& x) {
  std::ostringstream os;
  os << "(" << x.p << "," << x.q << ")";
  return os.str();
}

std::string dir_str(const Dir3& d) {
  std::ostringstream os;
  os << "(" << d.a << "," << d.b << "," << d.c << ")";
  return os.str();
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double, std::milli>(dt).count();
}

void print_ops(const OpCounter& ops) {
  std::cout << "ops: total=" << ops.total() << " add_sub=" << ops.add_sub
            << " mul_div=" << ops.mul_div << " compares=" << ops.compares
            << " assigns=" << ops.assigns
            << " value_mul_div=" << ops.value_mul_div << "\n";
}

int cmd_project(const std::string& in, const std::string& out, bool timestamp) {
  Instance inst = read_instance(in);
  if (!inst.values) {
    std::cerr << "project: '" << in << "' carries no values to project\n";
    return 1;
  }
  LineSumTable sums = forward_project(inst.grid, *inst.values, inst.dirs);
  write_linesums(out, sums, timestamp);
  long long total_lines = 0;
  for (size_t k = 0; k < inst.dirs.size(); ++k)
    total_lines += static_cast<long long>(sums.sums(static_cast<int>(k)).size());
  std::cout << "projected " << inst.dirs.size() << " directions, " << total_lines
            << " lines -> " << out << "\n";
  return 0;
}

int cmd_reconstruct(const std::string& in, const std::string& out,
                    const std::string& free_values, bool timestamp) {
  LineSumTable sums = read_linesums(in);
  FreeChoicePolicy policy;
  if (!free_values.empty())
    policy = FreeChoicePolicy::explicit_list(read_free_values(free_values));

  auto t0 = std::chrono::steady_clock::now();
  ReconResult res = reconstruct_3d(sums.grid(), sums.directions(), sums, policy);
  double ms = elapsed_ms(t0);

  const Grid3& g = res.grid;
  std::cout << "grid: " << g.m << " x " << g.n << " x " << g.o << "\n";
  std::cout << "directions: " << sums.directions().size() << "\n";
  std::cout << "free choices: " << res.free_positions.size() << "\n";
  for (const auto& x : res.free_positions)
    std::cout << "  free at " << pt(x) << "\n";
  print_ops(res.ops);
  std::cout << "levels: " << res.diagnostics.levels << "\n";
  for (const auto& f : res.diagnostics.flags) std::cout << "note: " << f << "\n";
  std::cout << std::fixed << std::setprecision(2) << "wall: " << ms << " ms\n";

  if (!out.empty()) write_reconstruction(out, sums.directions(), res, timestamp);
  return 0;
}

int cmd_ghost(const std::string& dirs_text, const std::string& out, bool timestamp) {
  std::vector<Dir3> dirs = parse_dirs3(dirs_text);
  GhostFunction g = elementary_ghost(dirs);
  const Grid3& b = g.box();
  std::cout << "box: " << b.m << " x " << b.n << " x " << b.o
            << ", anchor: " << pt(g.anchor()) << "\n";
  std::cout << "support: " << g.support().size() << " points\n";
  for (const auto& x : g.support()) {
    long long v = g.value(x);
    std::cout << "  " << pt(x) << " -> " << (v > 0 ? "+" : "") << v << "\n";
  }
  if (!out.empty()) write_ghost_json(out, dirs, g, timestamp);
  return 0;
}

int cmd_hull(const std::string& in, const std::string& grid_text,
             const std::string& dirs_text, const std::string& out, bool timestamp) {
  Grid3 grid;
  std::vector<Dir3> dirs;
  if (!in.empty()) {
    Instance inst = read_instance(in);
    grid = inst.grid;
    dirs = inst.dirs;
  } else if (!grid_text.empty() && !dirs_text.empty()) {
    grid = parse_grid3(grid_text);
    dirs = parse_dirs3(dirs_text);
  } else {
    std::cerr << "hull: pass --in FILE or both --grid and --dirs\n";
    return 1;
  }
  HullPolytope hull = hull3(grid, dirs);
  if (hull.empty) {
    std::cout << "hull: empty (no movable points)\n";
  } else {
    std::cout << "rank: " << hull.rank << ", vertices: " << hull.vertices.size()
              << ", faces: " << hull.faces.size() << "\n";
    for (const auto& x : hull.vertices) std::cout << "  " << pt(x) << "\n";
  }
  if (!out.empty()) write_hull_json(out, grid, dirs, hull, timestamp);
  return 0;
}

int cmd_weights(const std::string& grid_text, const std::string& dirs_text,
                int corner, bool full, const std::string& out, bool timestamp) {
  Grid2 grid = parse_grid2(grid_text);
  std::vector<Dir2> dirs = parse_dirs2(dirs_text);
  CornerFrame frame = corner_transform(grid, dirs, corner);
  if (frame.fan.slots.empty()) {
    std::cerr << "weights: no usable directions for corner " << corner << "\n";
    return 1;
  }
  ReconOrder order = corner_order(grid, frame, full);
  std::cout << "corner " << corner << ", " << frame.fan.slots.size()
            << " fan slots, border:";
  for (const auto& b : frame.fan.border) std::cout << " " << pt(b);
  std::cout << "\n" << "scheduled points: " << order.entries.size() << "\n";
  for (size_t i = 0; i < order.entries.size(); ++i) {
    const OrderEntry& e = order.entries[i];
    std::cout << "  #" << i << " " << pt(e.global) << " w=" << e.wnum << "/"
              << e.wden << " slot=" << e.slot << "\n";
  }
  if (!out.empty()) write_weights_json(out, grid, frame, order, timestamp);
  return 0;
}

int cmd_verify(const std::string& in, const std::string& values_path) {
  LineSumTable sums = read_linesums(in);
  Instance inst = read_values_file(values_path);
  const Grid3& g = sums.grid();
  if (inst.grid.m != g.m || inst.grid.n != g.n || inst.grid.o != g.o)
    throw MalformedInput("verify: grid extents differ between the two files");
  if (inst.dirs.size() != sums.directions().size())
    throw MalformedInput("verify: direction lists differ between the two files");
  for (size_t k = 0; k < inst.dirs.size(); ++k)
    if (!(inst.dirs[k] == sums.directions()[k]))
      throw MalformedInput("verify: direction lists differ between the two files");

  VerifyReport rep = verify(g, sums.directions(), sums, *inst.values);
  if (rep.ok) {
    std::cout << "all line sums match, max |discrepancy| = 0\n";
    return 0;
  }
  std::cout << "mismatched lines: " << rep.mismatch_count
            << ", max |discrepancy| = " << rep.max_abs_discrepancy << "\n";
  for (const auto& m : rep.mismatches)
    std::cout << "  direction " << m.direction << " line at " << pt(m.base)
              << ": expected " << m.expected << ", got " << m.actual << "\n";
  return 3;
}

std::vector<Dir3> bench_family(int d) {
  switch (d) {
    case 2: return {{1, 0, 0}, {0, 1, 0}};
    case 3: return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    case 4: return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
    case 6:
      return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 1, -1}, {1, -1, 1}};
    default:
      throw MalformedInput("bench: no direction family of size " + std::to_string(d));
  }
}

struct BenchRow {
  std::string kind;
  int d, m, n, o;
  OpCounter ops;
  double ms;
};

BenchRow bench_run(const std::string& kind, int d, int s, unsigned long long seed) {
  std::vector<Dir3> dirs = bench_family(d);
  Grid3 grid{s, s, s};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> val(-9, 9);
  std::vector<Rational> phantom(static_cast<size_t>(grid.size()));
  for (auto& v : phantom) v = Rational(val(rng));
  LineSumTable sums = forward_project(grid, phantom, dirs);
  auto t0 = std::chrono::steady_clock::now();
  ReconResult res = reconstruct_3d(grid, dirs, sums, FreeChoicePolicy{});
  double ms = elapsed_ms(t0);
  return BenchRow{kind, d, s, s, s, res.ops, ms};
}

int cmd_bench(const std::vector<int>& sizes, const std::vector<int>& dcounts,
              unsigned long long seed, const std::string& out, bool timestamp) {
  std::vector<BenchRow> rows;
  for (int s : sizes) rows.push_back(bench_run("size-sweep", 4, s, seed + s));
  for (int d : dcounts) rows.push_back(bench_run("d-sweep", d, 16, seed + 100 + d));

  std::cout << std::left << std::setw(11) << "kind" << std::right << std::setw(3)
            << "d" << std::setw(5) << "m" << std::setw(5) << "n" << std::setw(5)
            << "o" << std::setw(12) << "total" << std::setw(10) << "mul_div"
            << std::setw(12) << "total/dmno" << std::setw(14) << "md/(d+m+n+o)"
            << std::setw(10) << "ms" << "\n";
  double size_min = 0, size_max = 0, d_min = 0, d_max = 0;
  bool size_any = false, d_any = false;
  for (const auto& r : rows) {
    double cells = static_cast<double>(r.d) * r.m * r.n * r.o;
    double ratio = static_cast<double>(r.ops.total()) / cells;
    double md_ratio = static_cast<double>(r.ops.mul_div) / (r.d + r.m + r.n + r.o);
    std::cout << std::left << std::setw(11) << r.kind << std::right << std::setw(3)
              << r.d << std::setw(5) << r.m << std::setw(5) << r.n << std::setw(5)
              << r.o << std::setw(12) << r.ops.total() << std::setw(10)
              << r.ops.mul_div << std::setw(12) << std::fixed
              << std::setprecision(3) << ratio << std::setw(14) << md_ratio
              << std::setw(10) << std::setprecision(2) << r.ms << "\n";
    if (r.kind == "size-sweep") {
      if (!size_any || ratio < size_min) size_min = ratio;
      if (!size_any || ratio > size_max) size_max = ratio;
      size_any = true;
    } else {
      double per_d = static_cast<double>(r.ops.total()) / r.d;
      if (!d_any || per_d < d_min) d_min = per_d;
      if (!d_any || per_d > d_max) d_max = per_d;
      d_any = true;
    }
  }
  if (size_any)
    std::cout << std::setprecision(3) << "size sweep total/(d*m*n*o) spread: "
              << size_max / size_min << "\n";
  if (d_any)
    std::cout << "d sweep total/d spread: " << d_max / d_min << "\n";

  if (!out.empty()) {
    nlohmann::json j;
    j["format"] = "dtrec-bench";
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json e;
      e["kind"] = r.kind;
      e["d"] = r.d;
      e["m"] = r.m;
      e["n"] = r.n;
      e["o"] = r.o;
      e["ops"] = {{"add_sub", r.ops.add_sub},
                  {"mul_div", r.ops.mul_div},
                  {"compares", r.ops.compares},
                  {"assigns", r.ops.assigns},
                  {"value_mul_div", r.ops.value_mul_div},
                  {"total", r.ops.total()}};
      e["wall_ms"] = r.ms;
      recs.push_back(std::move(e));
    }
    j["records"] = std::move(recs);
    if (timestamp) {
      std::time_t t = std::time(nullptr);
      std::tm tm{};
      gmtime_r(&t, &tm);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
      j["generated_at"] = buf;
    }
    std::ofstream f(out);
    if (!f) throw MalformedInput("cannot write '" + out + "'");
    f << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact reconstruction of grid functions from line sums"};
  app.require_subcommand(1);

  std::string in, out, grid_text, dirs_text, free_values, values_path;
  bool no_timestamp = false;
  int corner = 0;
  bool full = false;
  std::vector<int> sizes{8, 12, 16, 24, 32};
  std::vector<int> dcounts{2, 3, 4, 6};
  unsigned long long seed = 20260814ULL;

  CLI::App* c_project = app.add_subcommand("project", "compute line sums of an instance");
  c_project->add_option("--in", in, "instance file")->required();
  c_project->add_option("--out", out, "line-sum file to write")->required();
  c_project->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

  CLI::App* c_recon = app.add_subcommand("reconstruct", "solve a line-sum file");
  c_recon->add_option("--in", in, "line-sum file")->required();
  c_recon->add_option("--out", out, "reconstruction file to write");
  c_recon->add_option("--free-values", free_values, "explicit free-choice assignments");
  c_recon->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

  CLI::App* c_ghost = app.add_subcommand("ghost", "elementary switching function of a direction set");
  c_ghost->add_option("--dirs", dirs_text, "directions \"a,b,c;a,b,c;...\"")->required();
  c_ghost->add_option("--out", out, "ghost file to write");
  c_ghost->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

  CLI::App* c_hull = app.add_subcommand("hull", "convex hull of the movable points");
  c_hull->add_option("--in", in, "instance file");
  c_hull->add_option("--grid", grid_text, "grid extents m,n,o");
  c_hull->add_option("--dirs", dirs_text, "directions \"a,b,c;...\"");
  c_hull->add_option("--out", out, "hull file to write");
  c_hull->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

  CLI::App* c_weights = app.add_subcommand("weights", "per-point weights and processing order for one corner");
  c_weights->add_option("--grid", grid_text, "grid extents m,n")->required();
  c_weights->add_option("--dirs", dirs_text, "directions \"a,b;a,b;...\"")->required();
  c_weights->add_option("--corner", corner, "corner index 0..3")->check(CLI::Range(0, 3));
  c_weights->add_flag("--full", full, "include points with weight >= 1");
  c_weights->add_option("--out", out, "weight map file to write");
  c_weights->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

  CLI::App* c_verify = app.add_subcommand("verify", "check values against a line-sum file");
  c_verify->add_option("--in", in, "line-sum file")->required();
  c_verify->add_option("--values", values_path, "instance or reconstruction file")->required();

  CLI::App* c_bench = app.add_subcommand("bench", "operation-count scaling sweeps");
  c_bench->add_option("--sizes", sizes, "cube sides for the size sweep")->delimiter(',');
  c_bench->add_option("--dirs-counts", dcounts, "direction counts for the d sweep")->delimiter(',');
  c_bench->add_option("--seed", seed, "random seed for phantoms");
  c_bench->add_option("--out", out, "bench record file to write");
  c_bench->add_flag("--no-timestamp", no_timestamp, "omit generated_at");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*c_project) return cmd_project(in, out, !no_timestamp);
    if (*c_recon) return cmd_reconstruct(in, out, free_values, !no_timestamp);
    if (*c_ghost) return cmd_ghost(dirs_text, out, !no_timestamp);
    if (*c_hull) return cmd_hull(in, grid_text, dirs_text, out, !no_timestamp);
    if (*c_weights)
      return cmd_weights(grid_text, dirs_text, corner, full, out, !no_timestamp);
    if (*c_verify) return cmd_verify(in, values_path);
    if (*c_bench) return cmd_bench(sizes, dcounts, seed, out, !no_timestamp);
  } catch (const InconsistentLineSums& e) {
    std::cerr << "inconsistent line sums: " << e.what() << "\n";
    return 3;
  } catch (const PolicyMismatch& e) {
    std::cerr << "free-value policy mismatch: " << e.what() << "\n";
    return 2;
  } catch (const MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
