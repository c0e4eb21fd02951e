#ifndef GMH_IO_HPP
#define GMH_IO_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmh/gmap.hpp"

namespace gmh {

/// 2-Gmap of a polygonal mesh plus the mesh vertex under every dart.
struct Mesh {
  GMap map;
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::uint32_t> dart_vertex;
};

/// Each k-gon gives 2k darts: dart 2j sits at corner j and 2j+1 at corner j+1.
/// Faces are alpha_2-sewn along shared undirected edges. Throws Parse or
/// NotQuasiManifold.
Mesh build_polygon_mesh(const std::vector<std::vector<std::uint32_t>>& faces, std::size_t num_vertices);
Mesh parse_off(std::istream& in);
Mesh load_off(const std::string& path);

using Voxel = std::array<std::uint32_t, 3>;

/// Darts of one cube, in the fixed per-voxel numbering (48 per voxel).
inline constexpr std::size_t kCubeDarts = 48;

/// Voxel v owns darts [48 v, 48 v + 48) after sorting and removing duplicates.
GMap voxels_to_gmap(std::vector<Voxel> voxels);
std::vector<Voxel> parse_voxels(std::istream& in);
GMap load_voxels(const std::string& path);

GMap parse_gmap_table(std::istream& in);
GMap read_gmap_table(const std::string& path);
void write_gmap_table(const GMap& g, std::ostream& out);
void write_gmap_table(const GMap& g, const std::string& path);

/// `count` distinct cells of the grid^3 image, uniformly.
std::vector<Voxel> random_voxels(std::uint32_t grid, std::size_t count, std::uint64_t seed);
/// `count` face-connected cells grown from a random start.
std::vector<Voxel> random_blob(std::uint32_t grid, std::size_t count, std::uint64_t seed);
std::vector<Voxel> filled_block(std::uint32_t side);

/// One line of a report.
struct RunRow {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t darts = 0;
  std::vector<std::size_t> cells;
  std::size_t final_darts = 0;
  std::vector<std::size_t> final_cells;
  std::vector<long> betti;
  std::vector<std::vector<std::string>> torsion;
  double time_simplify = 0.0;
  double time_homology = 0.0;
};

nlohmann::json to_json(const RunRow& row);

struct ColumnSummary {
  std::string column;
  double min = 0, max = 0, mean = 0, stddev = 0;
};

/// min/max/mean/std of every numeric column. Throws EmptyBatch.
std::vector<ColumnSummary> summarize(const std::vector<RunRow>& rows);

/// A single row as one object; several rows as {"rows", "summary"}.
nlohmann::json report_document(const std::vector<RunRow>& rows, bool batch = false);

enum class ReportFormat { Json, Text };

/// One row is a single-run report; several rows get the four summary rows.
/// `extra` is merged into the JSON document (ignored in text mode).
void write_report(const std::vector<RunRow>& rows, std::ostream& out, ReportFormat format,
                  const nlohmann::json& extra = nlohmann::json::object(), bool batch = false);
void write_report(const std::vector<RunRow>& rows, const std::string& path, ReportFormat format,
                  const nlohmann::json& extra = nlohmann::json::object(), bool batch = false);

}  // namespace gmh

#endif  // GMH_IO_HPP
