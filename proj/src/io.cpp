#include "dtrec/io.hpp"

#include <json.hpp>

#include <cstdint>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "dtrec/errors.hpp"

namespace dtrec {
namespace {

using nlohmann::json;

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw MalformedInput("'" + path + "': " + e.what());
  }
  if (!j.is_object())
    throw MalformedInput("'" + path + "': top level must be a JSON object");
  return j;
}

void save_json(const std::string& path, json& j, bool timestamp) {
  if (timestamp) j["generated_at"] = iso_now();
  std::ofstream out(path);
  if (!out) throw MalformedInput("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
  if (!out) throw MalformedInput("write to '" + path + "' failed");
}

void require_format(const json& j, const char* expected, const std::string& path) {
  auto it = j.find("format");
  if (it == j.end() || !it->is_string() || it->get<std::string>() != expected)
    throw MalformedInput("'" + path + "': expected \"format\": \"" + expected + "\"");
}

const json& field(const json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end())
    throw MalformedInput(where + ": missing field \"" + name + "\"");
  return *it;
}

// JSON integers can exceed long long only on the unsigned side; dump() gives
// the exact decimal text either way, so route big values through strings.
long long int_field(const json& j, const std::string& what) {
  if (!j.is_number_integer())
    throw MalformedInput(what + ": expected an integer, got " + j.dump());
  if (j.is_number_unsigned() &&
      j.get<std::uint64_t>() >
          static_cast<std::uint64_t>(std::numeric_limits<long long>::max()))
    throw MalformedInput(what + ": integer out of range");
  return j.get<long long>();
}

int int32_field(const json& j, const std::string& what) {
  long long v = int_field(j, what);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw MalformedInput(what + ": value out of range");
  return static_cast<int>(v);
}

json rational_json(const Rational& r) {
  if (r.is_integer() && r.num_fits_i64()) return json(r.num_i64());
  if (r.num_fits_i64() && r.den_fits_i64())
    return json::array({r.num_i64(), r.den_i64()});
  return json(r.str());
}

Rational rational_field(const json& j, const std::string& what) {
  try {
    if (j.is_number_integer())
      return Rational::from_decimal_strings(j.dump(), "1");
    if (j.is_array()) {
      if (j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw MalformedInput(what + ": rational pair must be two integers");
      return Rational::from_decimal_strings(j[0].dump(), j[1].dump());
    }
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      auto slash = s.find('/');
      if (slash == std::string::npos)
        return Rational::from_decimal_strings(s, "1");
      if (s.find('/', slash + 1) != std::string::npos)
        throw MalformedInput(what + ": bad rational \"" + s + "\"");
      return Rational::from_decimal_strings(s.substr(0, slash), s.substr(slash + 1));
    }
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(what + ": " + e.what());
  }
  throw MalformedInput(what + ": expected integer, [num,den] or \"num/den\", got " +
                       j.dump());
}

json point_json(const Point3& x) { return json::array({x.p, x.q, x.r}); }
json point_json(const Point2& x) { return json::array({x.p, x.q}); }

Point3 point3_field(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3)
    throw MalformedInput(what + ": expected [p,q,r]");
  return Point3{int32_field(j[0], what), int32_field(j[1], what),
                int32_field(j[2], what)};
}

Grid3 grid_field(const json& j, const std::string& what) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3))
    throw MalformedInput(what + ": expected [m,n] or [m,n,o]");
  int m = int32_field(j[0], what);
  int n = int32_field(j[1], what);
  int o = j.size() == 3 ? int32_field(j[2], what) : 1;
  if (m <= 0 || n <= 0 || o <= 0)
    throw MalformedInput(what + ": extents must be positive");
  return Grid3{m, n, o};
}

std::vector<Dir3> dirs_field(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw MalformedInput(what + ": expected a nonempty direction array");
  std::vector<Dir3> dirs;
  dirs.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || (e.size() != 2 && e.size() != 3))
      throw MalformedInput(what + ": each direction must be [a,b] or [a,b,c]");
    Dir3 d{int32_field(e[0], what), int32_field(e[1], what),
           e.size() == 3 ? int32_field(e[2], what) : 0};
    try {
      dirs.push_back(normalize_direction(d.a, d.b, d.c));
    } catch (const std::invalid_argument& ex) {
      throw MalformedInput(what + ": " + ex.what());
    }
  }
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t k = i + 1; k < dirs.size(); ++k)
      if (dirs[i] == dirs[k])
        throw MalformedInput(what + ": duplicate direction after normalization");
  return dirs;
}

json dirs_json(const std::vector<Dir3>& dirs) {
  json arr = json::array();
  for (const auto& d : dirs) arr.push_back(json::array({d.a, d.b, d.c}));
  return arr;
}

std::vector<long long> split_ints(const std::string& text, char sep,
                                  const std::string& what) {
  std::vector<long long> out;
  size_t pos = 0;
  while (true) {
    size_t next = text.find(sep, pos);
    std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
    size_t idx = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &idx);
    } catch (const std::exception&) {
      throw MalformedInput(what + ": bad integer \"" + tok + "\"");
    }
    while (idx < tok.size() && tok[idx] == ' ') ++idx;
    if (idx != tok.size())
      throw MalformedInput(what + ": bad integer \"" + tok + "\"");
    out.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

Instance read_instance(const std::string& path) {
  json j = load_json(path);
  require_format(j, "dtrec-instance", path);
  Instance inst;
  inst.grid = grid_field(field(j, "grid", path), path + ": grid");
  inst.dirs = dirs_field(field(j, "directions", path), path + ": directions");
  if (j.contains("values") && !j["values"].is_null()) {
    const json& vals = j["values"];
    if (!vals.is_array())
      throw MalformedInput(path + ": values must be an array");
    if (static_cast<long long>(vals.size()) != inst.grid.size())
      throw MalformedInput(path + ": values length " + std::to_string(vals.size()) +
                           " does not match grid size " +
                           std::to_string(inst.grid.size()));
    std::vector<Rational> values;
    values.reserve(vals.size());
    for (size_t i = 0; i < vals.size(); ++i)
      values.push_back(rational_field(vals[i], path + ": values[" + std::to_string(i) + "]"));
    inst.values = std::move(values);
  }
  return inst;
}

void write_instance(const std::string& path, const Instance& inst, bool timestamp) {
  json j;
  j["format"] = "dtrec-instance";
  j["grid"] = json::array({inst.grid.m, inst.grid.n, inst.grid.o});
  j["directions"] = dirs_json(inst.dirs);
  if (inst.values) {
    json vals = json::array();
    for (const auto& v : *inst.values) vals.push_back(rational_json(v));
    j["values"] = std::move(vals);
  }
  save_json(path, j, timestamp);
}

Instance read_values_file(const std::string& path) {
  json j = load_json(path);
  auto it = j.find("format");
  if (it == j.end() || !it->is_string() ||
      (it->get<std::string>() != "dtrec-instance" &&
       it->get<std::string>() != "dtrec-reconstruction"))
    throw MalformedInput("'" + path +
                         "': expected an instance or reconstruction file");
  Instance inst;
  inst.grid = grid_field(field(j, "grid", path), path + ": grid");
  inst.dirs = dirs_field(field(j, "directions", path), path + ": directions");
  const json& vals = field(j, "values", path);
  if (!vals.is_array() || static_cast<long long>(vals.size()) != inst.grid.size())
    throw MalformedInput(path + ": values must be an array of grid size");
  std::vector<Rational> values;
  values.reserve(vals.size());
  for (size_t i = 0; i < vals.size(); ++i)
    values.push_back(rational_field(vals[i], path + ": values[" + std::to_string(i) + "]"));
  inst.values = std::move(values);
  return inst;
}

LineSumTable read_linesums(const std::string& path) {
  json j = load_json(path);
  require_format(j, "dtrec-linesums", path);
  Grid3 grid = grid_field(field(j, "grid", path), path + ": grid");
  std::vector<Dir3> dirs = dirs_field(field(j, "directions", path), path + ": directions");

  const json& sums_j = field(j, "sums", path);
  if (!sums_j.is_array() || sums_j.size() != dirs.size())
    throw MalformedInput(path + ": sums must list one entry per direction");

  std::vector<std::vector<Rational>> sums(dirs.size());
  for (size_t k = 0; k < dirs.size(); ++k) {
    const json& entry = sums_j[k];
    const std::string where = path + ": sums[" + std::to_string(k) + "]";
    if (!entry.is_object()) throw MalformedInput(where + ": expected an object");
    const json& dj = field(entry, "direction", where);
    if (!dj.is_array() || (dj.size() != 2 && dj.size() != 3))
      throw MalformedInput(where + ": direction must be [a,b] or [a,b,c]");
    Dir3 d{int32_field(dj[0], where), int32_field(dj[1], where),
           dj.size() == 3 ? int32_field(dj[2], where) : 0};
    d = normalize_direction(d.a, d.b, d.c);
    if (!(d == dirs[k]))
      throw MalformedInput(where + ": direction does not match the directions list");

    std::vector<Line> lines = enumerate_lines(grid, d);
    std::map<std::tuple<int, int, int>, size_t> base_index;
    for (size_t i = 0; i < lines.size(); ++i)
      base_index[{lines[i].base.r, lines[i].base.q, lines[i].base.p}] = i;

    std::vector<Rational> vals(lines.size());
    std::vector<char> seen(lines.size(), 0);
    const json& lj = field(entry, "lines", where);
    if (!lj.is_array() || lj.size() != lines.size())
      throw MalformedInput(where + ": expected exactly " + std::to_string(lines.size()) +
                           " lines, got " + std::to_string(lj.size()));
    for (const auto& le : lj) {
      if (!le.is_object()) throw MalformedInput(where + ": line entries must be objects");
      Point3 base = point3_field(field(le, "base", where), where + ": base");
      auto it = base_index.find({base.r, base.q, base.p});
      if (it == base_index.end())
        throw MalformedInput(where + ": [" + std::to_string(base.p) + "," +
                             std::to_string(base.q) + "," + std::to_string(base.r) +
                             "] is not a canonical line base");
      if (seen[it->second])
        throw MalformedInput(where + ": duplicate line base");
      seen[it->second] = 1;
      vals[it->second] = rational_field(field(le, "sum", where), where + ": sum");
    }
    sums[k] = std::move(vals);
  }
  return LineSumTable(grid, dirs, std::move(sums));
}

void write_linesums(const std::string& path, const LineSumTable& sums, bool timestamp) {
  json j;
  j["format"] = "dtrec-linesums";
  const Grid3& grid = sums.grid();
  j["grid"] = json::array({grid.m, grid.n, grid.o});
  j["directions"] = dirs_json(sums.directions());
  json arr = json::array();
  for (size_t k = 0; k < sums.directions().size(); ++k) {
    const Dir3& d = sums.directions()[k];
    json entry;
    entry["direction"] = json::array({d.a, d.b, d.c});
    json lines_j = json::array();
    std::vector<Line> lines = enumerate_lines(grid, d);
    const std::vector<Rational>& vals = sums.sums(static_cast<int>(k));
    for (size_t i = 0; i < lines.size(); ++i) {
      json le;
      le["base"] = point_json(lines[i].base);
      le["sum"] = rational_json(vals[i]);
      lines_j.push_back(std::move(le));
    }
    entry["lines"] = std::move(lines_j);
    arr.push_back(std::move(entry));
  }
  j["sums"] = std::move(arr);
  save_json(path, j, timestamp);
}

std::vector<std::pair<Point3, Rational>> read_free_values(const std::string& path) {
  json j = load_json(path);
  require_format(j, "dtrec-free-values", path);
  const json& aj = field(j, "assignments", path);
  if (!aj.is_array()) throw MalformedInput(path + ": assignments must be an array");
  std::vector<std::pair<Point3, Rational>> out;
  out.reserve(aj.size());
  for (const auto& e : aj) {
    if (!e.is_object())
      throw MalformedInput(path + ": assignment entries must be objects");
    Point3 pos = point3_field(field(e, "position", path), path + ": position");
    out.emplace_back(pos, rational_field(field(e, "value", path), path + ": value"));
  }
  return out;
}

void write_reconstruction(const std::string& path, const std::vector<Dir3>& dirs,
                          const ReconResult& result, bool timestamp) {
  json j;
  j["format"] = "dtrec-reconstruction";
  j["grid"] = json::array({result.grid.m, result.grid.n, result.grid.o});
  j["directions"] = dirs_json(dirs);
  json vals = json::array();
  for (const auto& v : result.values) vals.push_back(rational_json(v));
  j["values"] = std::move(vals);

  std::string prov(result.provenance.size(), '?');
  for (size_t i = 0; i < result.provenance.size(); ++i) {
    switch (result.provenance[i]) {
      case Provenance::Forced: prov[i] = 'F'; break;
      case Provenance::Free: prov[i] = 'C'; break;
      case Provenance::FreeDependent: prov[i] = 'D'; break;
    }
  }
  j["provenance"] = prov;

  json frees = json::array();
  for (const auto& x : result.free_positions) frees.push_back(point_json(x));
  j["free_positions"] = std::move(frees);
  j["free_count"] = result.free_positions.size();

  json ops;
  ops["add_sub"] = result.ops.add_sub;
  ops["mul_div"] = result.ops.mul_div;
  ops["compares"] = result.ops.compares;
  ops["assigns"] = result.ops.assigns;
  ops["value_mul_div"] = result.ops.value_mul_div;
  ops["total"] = result.ops.total();
  j["ops"] = std::move(ops);

  j["levels"] = result.diagnostics.levels;
  json flags = json::array();
  for (const auto& f : result.diagnostics.flags) flags.push_back(f);
  j["flags"] = std::move(flags);
  save_json(path, j, timestamp);
}

void write_ghost_json(const std::string& path, const std::vector<Dir3>& dirs,
                      const GhostFunction& ghost, bool timestamp) {
  json j;
  j["format"] = "dtrec-ghost";
  j["directions"] = dirs_json(dirs);
  j["box"] = json::array({ghost.box().m, ghost.box().n, ghost.box().o});
  j["anchor"] = point_json(ghost.anchor());
  json support = json::array();
  for (const auto& x : ghost.support()) {
    json e;
    e["position"] = point_json(x);
    e["value"] = ghost.value(x);
    support.push_back(std::move(e));
  }
  j["support"] = std::move(support);
  j["support_size"] = ghost.support().size();
  save_json(path, j, timestamp);
}

void write_hull_json(const std::string& path, const Grid3& grid,
                     const std::vector<Dir3>& dirs, const HullPolytope& hull,
                     bool timestamp) {
  json j;
  j["format"] = "dtrec-hull";
  j["grid"] = json::array({grid.m, grid.n, grid.o});
  j["directions"] = dirs_json(dirs);
  j["empty"] = hull.empty;
  j["rank"] = hull.rank;
  json verts = json::array();
  for (const auto& x : hull.vertices) verts.push_back(point_json(x));
  j["vertices"] = std::move(verts);
  json faces = json::array();
  for (const auto& f : hull.faces) {
    json fe;
    json ring = json::array();
    for (const auto& x : f.ring) ring.push_back(point_json(x));
    fe["ring"] = std::move(ring);
    json eds = json::array();
    for (const auto& d : f.edge_dirs) eds.push_back(json::array({d.a, d.b, d.c}));
    fe["edge_dirs"] = std::move(eds);
    faces.push_back(std::move(fe));
  }
  j["faces"] = std::move(faces);
  j["face_count"] = hull.faces.size();
  save_json(path, j, timestamp);
}

void write_weights_json(const std::string& path, const Grid2& grid,
                        const CornerFrame& frame, const ReconOrder& order,
                        bool timestamp) {
  json j;
  j["format"] = "dtrec-weights";
  j["grid"] = json::array({grid.m, grid.n});
  j["corner"] = frame.corner;
  json border = json::array();
  for (const auto& x : frame.fan.border) border.push_back(point_json(x));
  j["border"] = std::move(border);
  json slots = json::array();
  for (const auto& s : frame.fan.slots) {
    json se;
    se["vector"] = json::array({s.a, -s.bmag});
    se["merged_count"] = s.sources.size();
    slots.push_back(std::move(se));
  }
  j["slots"] = std::move(slots);
  json entries = json::array();
  for (size_t i = 0; i < order.entries.size(); ++i) {
    const OrderEntry& e = order.entries[i];
    json ee;
    ee["order"] = i;
    ee["local"] = point_json(e.local);
    ee["global"] = point_json(e.global);
    ee["slot"] = e.slot;
    ee["weight"] = rational_json(Rational(e.wnum, e.wden));
    entries.push_back(std::move(ee));
  }
  j["entries"] = std::move(entries);
  save_json(path, j, timestamp);
}

Grid3 parse_grid3(const std::string& text) {
  auto v = split_ints(text, ',', "--grid");
  if (v.size() != 2 && v.size() != 3)
    throw MalformedInput("--grid: expected m,n or m,n,o");
  for (long long x : v)
    if (x <= 0 || x > std::numeric_limits<int>::max())
      throw MalformedInput("--grid: extents must be positive");
  return Grid3{static_cast<int>(v[0]), static_cast<int>(v[1]),
               v.size() == 3 ? static_cast<int>(v[2]) : 1};
}

Grid2 parse_grid2(const std::string& text) {
  auto v = split_ints(text, ',', "--grid");
  if (v.size() != 2) throw MalformedInput("--grid: expected m,n");
  if (v[0] <= 0 || v[1] <= 0 || v[0] > std::numeric_limits<int>::max() ||
      v[1] > std::numeric_limits<int>::max())
    throw MalformedInput("--grid: extents must be positive");
  return Grid2{static_cast<int>(v[0]), static_cast<int>(v[1])};
}

std::vector<Dir3> parse_dirs3(const std::string& text) {
  std::vector<Dir3> dirs;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find(';', pos);
    std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
    auto v = split_ints(tok, ',', "--dirs");
    if (v.size() != 2 && v.size() != 3)
      throw MalformedInput("--dirs: each direction must be a,b or a,b,c");
    for (long long x : v)
      if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw MalformedInput("--dirs: component out of range");
    Dir3 d{static_cast<int>(v[0]), static_cast<int>(v[1]),
           v.size() == 3 ? static_cast<int>(v[2]) : 0};
    try {
      dirs.push_back(normalize_direction(d.a, d.b, d.c));
    } catch (const std::invalid_argument& e) {
      throw MalformedInput(std::string("--dirs: ") + e.what());
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (dirs.empty()) throw MalformedInput("--dirs: empty direction list");
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t k = i + 1; k < dirs.size(); ++k)
      if (dirs[i] == dirs[k]) throw MalformedInput("--dirs: duplicate direction");
  return dirs;
}

// Planar directions keep their magnitude: non-primitive vectors like (2,-2)
// produce genuinely different fans than their primitive forms, so only the
// sign is normalized here. Repeats are legal and merge into one fan slot.
std::vector<Dir2> parse_dirs2(const std::string& text) {
  std::vector<Dir2> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find(';', pos);
    std::string tok = text.substr(pos, next == std::string::npos ? next : next - pos);
    auto v = split_ints(tok, ',', "--dirs");
    if (v.size() != 2)
      throw MalformedInput("--dirs: each direction must be a,b");
    if (v[0] == 0 && v[1] == 0) throw MalformedInput("--dirs: zero direction");
    for (long long x : v)
      if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw MalformedInput("--dirs: component out of range");
    long long a = v[0], b = v[1];
    if (a < 0 || (a == 0 && b < 0)) {
      a = -a;
      b = -b;
    }
    bool prim = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b) == 1;
    out.push_back(Dir2{static_cast<int>(a), static_cast<int>(b), prim});
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw MalformedInput("--dirs: empty direction list");
  return out;
}

}  // namespace dtrec
