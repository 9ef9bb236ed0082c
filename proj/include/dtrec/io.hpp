#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtrec/ghost.hpp"
#include "dtrec/hull.hpp"
#include "dtrec/lattice.hpp"
#include "dtrec/order2d.hpp"
#include "dtrec/recon.hpp"

namespace dtrec {

// Grid + directions + optional flat value array (index = p + m*(q + n*r)).
// 2D data uses depth 1. All numbers are exact; files never contain floats.
struct Instance {
  Grid3 grid;
  std::vector<Dir3> dirs;
  std::optional<std::vector<Rational>> values;
};

// Readers throw MalformedInput on anything structurally wrong; directions are
// normalized on input, values may be integers, [num,den] pairs or "num/den"
// strings. Writers emit deterministic JSON; the timestamp field is optional
// so outputs can be byte-compared.
Instance read_instance(const std::string& path);
void write_instance(const std::string& path, const Instance& inst, bool timestamp);

// Like read_instance but also accepts reconstruction output files, and the
// value array is mandatory. Used to feed reconstructed values back into
// verification.
Instance read_values_file(const std::string& path);

LineSumTable read_linesums(const std::string& path);
void write_linesums(const std::string& path, const LineSumTable& sums, bool timestamp);

std::vector<std::pair<Point3, Rational>> read_free_values(const std::string& path);

void write_reconstruction(const std::string& path, const std::vector<Dir3>& dirs,
                          const ReconResult& result, bool timestamp);

void write_ghost_json(const std::string& path, const std::vector<Dir3>& dirs,
                      const GhostFunction& ghost, bool timestamp);

void write_hull_json(const std::string& path, const Grid3& grid,
                     const std::vector<Dir3>& dirs, const HullPolytope& hull,
                     bool timestamp);

void write_weights_json(const std::string& path, const Grid2& grid,
                        const CornerFrame& frame, const ReconOrder& order,
                        bool timestamp);

// Flag-string helpers shared by the command-line tool: "m,n,o" / "m,n" grids
// and semicolon-separated direction lists "a,b,c;a,b,c" / "a,b;a,b".
Grid3 parse_grid3(const std::string& text);
Grid2 parse_grid2(const std::string& text);
std::vector<Dir3> parse_dirs3(const std::string& text);
std::vector<Dir2> parse_dirs2(const std::string& text);

}  // namespace dtrec
