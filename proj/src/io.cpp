#include "gmh/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace gmh {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  return out;
}

// Next non-empty line with '#' comments stripped.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
}

struct CubeTemplate {
  std::array<std::array<DartId, kCubeDarts>, 3> alpha{};
  std::array<std::uint8_t, kCubeDarts> corner{};  // xyz bits of the unit-cube vertex
  // Dart of face (axis, side 0) matching a dart of face (axis, side 1).
  std::array<std::array<DartId, kCubeDarts>, 3> across{};
};

const CubeTemplate& cube_template() {
  static const CubeTemplate t = [] {
    CubeTemplate c;
    std::vector<std::vector<std::uint32_t>> faces;
    for (int axis = 0; axis < 3; ++axis) {
      const int b = (axis + 1) % 3, e = (axis + 2) % 3;
      for (std::uint32_t side = 0; side < 2; ++side) {
        std::vector<std::uint32_t> f;
        for (auto [u, v] : {std::pair{0u, 0u}, {1u, 0u}, {1u, 1u}, {0u, 1u}})
          f.push_back(side << axis | u << b | v << e);
        faces.push_back(f);
      }
    }
    const Mesh m = build_polygon_mesh(faces, 8);
    for (int k = 0; k < 3; ++k)
      for (DartId d = 0; d < kCubeDarts; ++d) c.alpha[static_cast<std::size_t>(k)][d] = m.map.alpha(k, d);
    for (DartId d = 0; d < kCubeDarts; ++d) c.corner[d] = static_cast<std::uint8_t>(m.dart_vertex[d]);
    for (int axis = 0; axis < 3; ++axis) {
      auto& across = c.across[static_cast<std::size_t>(axis)];
      across.fill(kNoDart);
      const DartId hi = static_cast<DartId>((2 * axis + 1) * 8), lo = static_cast<DartId>(2 * axis * 8);
      const unsigned clear = ~(1u << axis);
      for (DartId d = hi; d < hi + 8; ++d) {
        const unsigned v = c.corner[d] & clear, w = c.corner[m.map.alpha(0, d)] & clear;
        for (DartId x = lo; x < lo + 8; ++x)
          if (c.corner[x] == v && c.corner[m.map.alpha(0, x)] == w) across[d] = x;
      }
    }
    return c;
  }();
  return t;
}

std::uint64_t pack(const Voxel& v) {
  return static_cast<std::uint64_t>(v[0]) << 42 | static_cast<std::uint64_t>(v[1]) << 21 | v[2];
}

}  // namespace

Mesh build_polygon_mesh(const std::vector<std::vector<std::uint32_t>>& faces, std::size_t num_vertices) {
  std::size_t total = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    if (face.size() < 3) throw Error(ErrorKind::Parse, "face " + std::to_string(f) + " has fewer than 3 corners");
    for (std::size_t j = 0; j < face.size(); ++j) {
      if (face[j] >= num_vertices)
        throw Error(ErrorKind::Parse, "face " + std::to_string(f) + " uses vertex " + std::to_string(face[j]) +
                                          " of " + std::to_string(num_vertices));
      if (std::count(face.begin(), face.end(), face[j]) > 1)
        throw Error(ErrorKind::Parse, "face " + std::to_string(f) + " repeats vertex " + std::to_string(face[j]));
    }
    total += 2 * face.size();
  }
  Mesh m;
  m.map = GMap(2, total);
  m.dart_vertex.resize(total);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<DartId>> edges;
  DartId base = 0;
  for (const auto& face : faces) {
    const auto k = static_cast<DartId>(face.size());
    for (DartId j = 0; j < k; ++j) {
      const DartId d = base + 2 * j;
      m.map.link(0, d, d + 1);
      m.map.link(1, d + 1, base + 2 * ((j + 1) % k));
      const std::uint32_t u = face[j], v = face[(j + 1) % k];
      m.dart_vertex[d] = u;
      m.dart_vertex[d + 1] = v;
      edges[{std::min(u, v), std::max(u, v)}].push_back(d);
    }
    base += 2 * k;
  }
  for (const auto& [key, darts] : edges) {
    if (darts.size() > 2)
      throw Error(ErrorKind::NotQuasiManifold, "edge " + std::to_string(key.first) + "-" + std::to_string(key.second) +
                                                   " is shared by " + std::to_string(darts.size()) + " faces");
    if (darts.size() < 2) continue;
    const DartId a = darts[0], b = darts[1];
    if (m.dart_vertex[a] == m.dart_vertex[b]) {
      m.map.link(2, a, b);
      m.map.link(2, a + 1, b + 1);
    } else {
      m.map.link(2, a, b + 1);
      m.map.link(2, a + 1, b);
    }
  }
  return m;
}

Mesh parse_off(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) parse_error(line_no, "empty OFF file");
  std::istringstream head(line);
  std::string magic;
  head >> magic;
  if (magic != "OFF") parse_error(line_no, "expected OFF header");
  long nv = -1, nf = -1, ne = 0;
  if (!(head >> nv)) {
    if (!next_line(in, line, line_no)) parse_error(line_no, "missing counts");
    head = std::istringstream(line);
    head >> nv;
  }
  if (!(head >> nf) || nv < 0 || nf < 0) parse_error(line_no, "bad vertex/face counts");
  head >> ne;

  Mesh mesh;
  for (long v = 0; v < nv; ++v) {
    if (!next_line(in, line, line_no)) parse_error(line_no, "missing vertex " + std::to_string(v));
    std::istringstream row(line);
    std::array<double, 3> p{};
    if (!(row >> p[0] >> p[1] >> p[2])) parse_error(line_no, "bad vertex coordinates");
    mesh.vertices.push_back(p);
  }
  std::vector<std::vector<std::uint32_t>> faces;
  for (long f = 0; f < nf; ++f) {
    if (!next_line(in, line, line_no)) parse_error(line_no, "missing face " + std::to_string(f));
    std::istringstream row(line);
    long k = 0;
    if (!(row >> k) || k < 3) parse_error(line_no, "bad corner count");
    std::vector<std::uint32_t> face;
    for (long j = 0; j < k; ++j) {
      long v = -1;
      if (!(row >> v) || v < 0 || v >= nv) parse_error(line_no, "bad vertex index in face " + std::to_string(f));
      face.push_back(static_cast<std::uint32_t>(v));
    }
    faces.push_back(std::move(face));
  }
  Mesh built = build_polygon_mesh(faces, static_cast<std::size_t>(nv));
  mesh.map = std::move(built.map);
  mesh.dart_vertex = std::move(built.dart_vertex);
  return mesh;
}

Mesh load_off(const std::string& path) {
  auto in = open_in(path);
  return parse_off(in);
}

GMap voxels_to_gmap(std::vector<Voxel> voxels) {
  std::sort(voxels.begin(), voxels.end());
  voxels.erase(std::unique(voxels.begin(), voxels.end()), voxels.end());
  const auto& t = cube_template();
  std::vector<std::vector<DartId>> tables(4, std::vector<DartId>(voxels.size() * kCubeDarts));
  std::unordered_map<std::uint64_t, DartId> where;
  where.reserve(voxels.size());
  for (std::size_t v = 0; v < voxels.size(); ++v) {
    for (auto c : voxels[v])
      if (c >= (1u << 21)) throw Error(ErrorKind::Parse, "voxel coordinate too large");
    where.emplace(pack(voxels[v]), static_cast<DartId>(v));
    const auto base = static_cast<DartId>(v * kCubeDarts);
    for (DartId d = 0; d < kCubeDarts; ++d) {
      for (std::size_t k = 0; k < 3; ++k) tables[k][base + d] = base + t.alpha[k][d];
      tables[3][base + d] = base + d;
    }
  }
  for (std::size_t v = 0; v < voxels.size(); ++v) {
    const auto base = static_cast<DartId>(v * kCubeDarts);
    for (int axis = 0; axis < 3; ++axis) {
      Voxel n = voxels[v];
      ++n[static_cast<std::size_t>(axis)];
      auto it = where.find(pack(n));
      if (it == where.end()) continue;
      const DartId other = it->second * static_cast<DartId>(kCubeDarts);
      const auto hi = static_cast<DartId>((2 * axis + 1) * 8);
      for (DartId d = hi; d < hi + 8; ++d) {
        const DartId e = other + t.across[static_cast<std::size_t>(axis)][d];
        tables[3][base + d] = e;
        tables[3][e] = base + d;
      }
    }
  }
  return GMap(std::move(tables));
}

std::vector<Voxel> parse_voxels(std::istream& in) {
  std::vector<Voxel> out;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line, line_no)) {
    std::istringstream row(line);
    long long x = -1, y = -1, z = -1;
    std::string rest;
    if (!(row >> x >> y >> z) || (row >> rest) || x < 0 || y < 0 || z < 0 || x >= (1 << 21) || y >= (1 << 21) ||
        z >= (1 << 21))
      parse_error(line_no, "expected three non-negative integers");
    out.push_back({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(z)});
  }
  return out;
}

GMap load_voxels(const std::string& path) {
  auto in = open_in(path);
  return voxels_to_gmap(parse_voxels(in));
}

GMap parse_gmap_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) parse_error(line_no, "empty table");
  std::istringstream head(line);
  std::string magic;
  long n = -1, count = -1;
  if (!(head >> magic >> n >> count) || magic != "GMAP" || n < 0 || n > kMaxDimension || count < 0)
    parse_error(line_no, "expected 'GMAP <dimension> <darts>'");
  const auto size = static_cast<std::size_t>(count);
  std::vector<std::vector<DartId>> tables(static_cast<std::size_t>(n + 1));
  std::vector<std::size_t> row_line(tables.size(), 0);
  while (next_line(in, line, line_no)) {
    std::istringstream row(line);
    long i = -1;
    if (!(row >> i) || i < 0 || i > n) parse_error(line_no, "row must start with an involution index in [0, n]");
    auto& t = tables[static_cast<std::size_t>(i)];
    if (row_line[static_cast<std::size_t>(i)] != 0) parse_error(line_no, "duplicate row for alpha_" + std::to_string(i));
    row_line[static_cast<std::size_t>(i)] = line_no;
    long v = 0;
    while (row >> v) {
      if (v < 1 || v > count)
        parse_error(line_no, "alpha_" + std::to_string(i) + " column " + std::to_string(t.size() + 1) +
                                 ": dart " + std::to_string(v) + " out of range");
      t.push_back(static_cast<DartId>(v - 1));
    }
    if (!row.eof()) parse_error(line_no, "alpha_" + std::to_string(i) + ": non-integer entry");
    if (t.size() != size)
      parse_error(line_no, "alpha_" + std::to_string(i) + " has " + std::to_string(t.size()) + " entries, expected " +
                               std::to_string(size));
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (row_line[i] == 0) parse_error(line_no, "missing row for alpha_" + std::to_string(i));
    const auto& t = tables[i];
    for (std::size_t d = 0; d < size; ++d)
      if (t[t[d]] != d)
        parse_error(row_line[i], "alpha_" + std::to_string(i) + " column " + std::to_string(d + 1) +
                                     " is not an involution: " + std::to_string(d + 1) + " -> " +
                                     std::to_string(t[d] + 1) + " -> " + std::to_string(t[t[d]] + 1));
  }
  return GMap(std::move(tables));
}

GMap read_gmap_table(const std::string& path) {
  auto in = open_in(path);
  return parse_gmap_table(in);
}

void write_gmap_table(const GMap& g, std::ostream& out) {
  out << "GMAP " << g.dimension() << ' ' << g.num_darts() << '\n';
  for (int i = 0; i <= g.dimension(); ++i) {
    out << i;
    for (DartId d : g.involution(i)) out << ' ' << d + 1;
    out << '\n';
  }
}

void write_gmap_table(const GMap& g, const std::string& path) {
  auto out = open_out(path);
  write_gmap_table(g, out);
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

std::vector<Voxel> random_voxels(std::uint32_t grid, std::size_t count, std::uint64_t seed) {
  const std::size_t cells = static_cast<std::size_t>(grid) * grid * grid;
  if (count > cells) throw Error(ErrorKind::OutOfRange, "more voxels requested than the grid holds");
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> idx(cells);
  std::iota(idx.begin(), idx.end(), 0u);
  for (std::size_t k = 0; k < count; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, cells - 1);
    std::swap(idx[k], idx[pick(rng)]);
  }
  std::vector<Voxel> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back({idx[k] % grid, idx[k] / grid % grid, idx[k] / grid / grid});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Voxel> random_blob(std::uint32_t grid, std::size_t count, std::uint64_t seed) {
  const std::size_t cells = static_cast<std::size_t>(grid) * grid * grid;
  if (count > cells) throw Error(ErrorKind::OutOfRange, "more voxels requested than the grid holds");
  std::mt19937_64 rng(seed);
  std::vector<char> taken(cells, 0);
  std::vector<std::uint32_t> frontier;
  std::vector<Voxel> out;
  auto index = [&](const Voxel& v) { return (v[2] * grid + v[1]) * grid + v[0]; };
  auto take = [&](const Voxel& v) {
    taken[index(v)] = 1;
    out.push_back(v);
    for (int axis = 0; axis < 3; ++axis)
      for (int step : {-1, 1}) {
        const long c = static_cast<long>(v[static_cast<std::size_t>(axis)]) + step;
        if (c < 0 || c >= static_cast<long>(grid)) continue;
        Voxel n = v;
        n[static_cast<std::size_t>(axis)] = static_cast<std::uint32_t>(c);
        if (!taken[index(n)]) frontier.push_back(index(n));
      }
  };
  if (count == 0) return out;
  std::uniform_int_distribution<std::uint32_t> coord(0, grid - 1);
  take({coord(rng), coord(rng), coord(rng)});
  while (out.size() < count) {
    std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
    const std::size_t k = pick(rng);
    const std::uint32_t c = frontier[k];
    frontier[k] = frontier.back();
    frontier.pop_back();
    if (taken[c]) continue;
    take({c % grid, c / grid % grid, c / grid / grid});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Voxel> filled_block(std::uint32_t side) {
  std::vector<Voxel> out;
  for (std::uint32_t x = 0; x < side; ++x)
    for (std::uint32_t y = 0; y < side; ++y)
      for (std::uint32_t z = 0; z < side; ++z) out.push_back({x, y, z});
  return out;
}

}  // namespace gmh
