#ifndef GMH_TESTS_SUPPORT_HPP
#define GMH_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "gmh/gmap.hpp"
#include "gmh/homology.hpp"
#include "gmh/io.hpp"
#include "gmh/orientation.hpp"
#include "gmh/simplify.hpp"

#ifndef GMH_FIXTURE_DIR
#error "GMH_FIXTURE_DIR must be defined"
#endif

namespace gmh::test {

inline std::string fixture(const std::string& name) { return std::string(GMH_FIXTURE_DIR) + "/" + name; }

inline GMap load_fixture(const std::string& name) {
  const auto path = fixture(name);
  if (name.ends_with(".off")) return load_off(path).map;
  if (name.ends_with(".gmap")) return read_gmap_table(path);
  return load_voxels(path);
}

inline const std::vector<std::string>& mesh_fixtures() {
  static const std::vector<std::string> names{"disc.off", "sphere.off", "torus.off", "moebius.off", "two_tori.off"};
  return names;
}

inline const std::vector<std::string>& all_fixtures() {
  static const std::vector<std::string> names{"fig1b.gmap", "fig4c.gmap",  "mobius.gmap", "pillow.gmap",
                                              "disc.off",   "sphere.off",  "torus.off",   "moebius.off",
                                              "two_tori.off"};
  return names;
}

/// Dart d of 1-based paper numbering.
constexpr DartId P(DartId d) { return d - 1; }

inline Cell cell_of(const GMap& g, std::initializer_list<DartId> paper_darts, int dim) {
  return cell(g, P(*paper_darts.begin()), dim);
}

inline std::vector<DartId> paper_set(std::initializer_list<DartId> darts) {
  std::vector<DartId> out;
  for (auto d : darts) out.push_back(P(d));
  std::sort(out.begin(), out.end());
  return out;
}

/// Random polygons (1 to 4 sides) with a random partial alpha_2 sewing of edges.
inline GMap random_surface(std::mt19937_64& rng) {
  const int faces = std::uniform_int_distribution<int>(1, 5)(rng);
  std::vector<int> sizes;
  std::size_t n = 0;
  for (int f = 0; f < faces; ++f) {
    sizes.push_back(std::uniform_int_distribution<int>(1, 4)(rng));
    n += 2 * static_cast<std::size_t>(sizes.back());
  }
  GMap g(2, n);
  std::vector<DartId> edges;  // first dart of every alpha_0 pair
  DartId base = 0;
  for (int k : sizes) {
    for (int j = 0; j < k; ++j) {
      const DartId a = base + 2 * j;
      g.link(0, a, a + 1);
      g.link(1, a + 1, base + 2 * ((j + 1) % k));
      edges.push_back(a);
    }
    base += 2 * k;
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  const std::size_t pairs = std::uniform_int_distribution<std::size_t>(0, edges.size() / 2)(rng);
  for (std::size_t p = 0; p < pairs; ++p) {
    const DartId a = edges[2 * p], b = edges[2 * p + 1];
    if (rng() & 1) {
      g.link(2, a, b);
      g.link(2, a + 1, b + 1);
    } else {
      g.link(2, a, b + 1);
      g.link(2, a + 1, b);
    }
  }
  return g;
}

/// Boundary walk of one face of a closed polyhedron: x_0 -a0- x_1 -a1- x_2 ...
inline std::vector<DartId> face_walk(const GMap& g, DartId start) {
  std::vector<DartId> walk{start};
  DartId d = start;
  for (int step = 0;; ++step) {
    d = g.alpha(step % 2, d);
    if (d == start) break;
    walk.push_back(d);
  }
  return walk;
}

/// Copies of small closed polyhedra, glued face to face at random.
inline GMap random_solid(std::mt19937_64& rng) {
  using Faces = std::vector<std::vector<std::uint32_t>>;
  static const std::vector<std::pair<Faces, std::size_t>> solids{
      {{{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}}, 4},
      {{{0, 1, 2, 3}, {4, 7, 6, 5}, {0, 4, 5, 1}, {1, 5, 6, 2}, {2, 6, 7, 3}, {3, 7, 4, 0}}, 8},
      {{{0, 1, 2}, {3, 5, 4}, {0, 3, 4, 1}, {1, 4, 5, 2}, {2, 5, 3, 0}}, 6},
  };
  const int count = std::uniform_int_distribution<int>(1, 4)(rng);
  std::vector<Mesh> parts;
  std::size_t n = 0;
  for (int c = 0; c < count; ++c) {
    const auto& [faces, nv] = solids[std::uniform_int_distribution<std::size_t>(0, solids.size() - 1)(rng)];
    parts.push_back(build_polygon_mesh(faces, nv));
    n += parts.back().map.num_darts();
  }
  GMap g(3, n);
  std::vector<std::vector<DartId>> walks;
  DartId offset = 0;
  for (const auto& part : parts) {
    const GMap& m = part.map;
    for (int i = 0; i <= 2; ++i)
      for (DartId d = 0; d < m.num_darts(); ++d)
        if (d < m.alpha(i, d)) g.link(i, offset + d, offset + m.alpha(i, d));
    for (const auto& c : all_cells(m, 2)) {
      auto w = face_walk(m, c.canonical());
      for (auto& d : w) d += offset;
      walks.push_back(std::move(w));
    }
    offset += static_cast<DartId>(m.num_darts());
  }
  std::shuffle(walks.begin(), walks.end(), rng);
  std::vector<bool> used(walks.size(), false);
  for (std::size_t a = 0; a < walks.size(); ++a) {
    if (used[a] || (rng() % 3) == 0) continue;
    for (std::size_t b = a + 1; b < walks.size(); ++b) {
      if (used[b] || walks[b].size() != walks[a].size()) continue;
      const std::size_t len = walks[a].size();
      const bool reflect = rng() & 1;
      const std::size_t s = 2 * std::uniform_int_distribution<std::size_t>(0, len / 2 - 1)(rng) + (reflect ? 1 : 0);
      for (std::size_t j = 0; j < len; ++j) {
        const std::size_t t = reflect ? (s + len - j) % len : (s + j) % len;
        g.link(3, walks[a][j], walks[b][t]);
      }
      used[a] = used[b] = true;
      break;
    }
  }
  return g;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  IntMatrix m(rows, cols);
  std::uniform_int_distribution<int> entry(lo, hi);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = entry(rng);
  return m;
}

/// Textbook diagonalization: smallest pivot, clear row and column, then fix
/// divisibility by gcd/lcm on the diagonal.
inline std::vector<mpz_class> naive_invariant_factors(IntMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols(), k = std::min(rows, cols);
  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (a(r, c) != 0 && (pr == rows || abs(a(r, c)) < abs(a(pr, pc)))) pr = r, pc = c;
      if (pr == rows) break;
      for (std::size_t c = 0; c < cols; ++c) std::swap(a(t, c), a(pr, c));
      for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, t), a(r, pc));
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        const mpz_class q = a(r, t) / a(t, t);
        for (std::size_t c = t; c < cols; ++c) a(r, c) -= q * a(t, c);
        if (a(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        const mpz_class q = a(t, c) / a(t, t);
        for (std::size_t r = t; r < rows; ++r) a(r, c) -= q * a(r, t);
        if (a(t, c) != 0) clean = false;
      }
      if (clean) break;
    }
  }
  std::vector<mpz_class> d(k);
  for (std::size_t t = 0; t < k; ++t) d[t] = abs(a(t, t));
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x + 1; y < k; ++y) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), d[x].get_mpz_t(), d[y].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[x].get_mpz_t(), d[y].get_mpz_t());
      d[x] = g;
      d[y] = l;
    }
  std::stable_partition(d.begin(), d.end(), [](const mpz_class& v) { return v != 0; });
  return d;
}

/// Betti numbers and torsion of the signed map, via the sparse oracle.
inline std::pair<std::vector<long>, std::vector<std::vector<mpz_class>>> invariants(const SignedGMap& s) {
  const auto r = homology_invariants(build_chain_complex(s));
  return {r.betti, r.torsion};
}

inline std::pair<std::vector<long>, std::vector<std::vector<mpz_class>>> invariants(const GMap& g) {
  return invariants(assign_signs(g));
}

/// True when every removable degree-two cell has exactly two incident
/// (i+1)-cells with incidence +-1, and dually for contractible codegree two.
/// `checked` counts the cells examined.
inline bool prop2_holds(const SignedGMap& s, std::size_t& checked, std::string* witness = nullptr) {
  const GMap& g = s.base;
  const int n = g.dimension();
  const auto cat = CellCatalog::build(g);
  auto fail = [&](const std::string& why, const Cell& c) {
    if (witness) *witness = why + " dim " + std::to_string(c.dim) + " dart " + std::to_string(c.canonical());
    return false;
  };
  for (int i = 0; i <= n; ++i) {
    for (const auto& c : cat.cells(i)) {
      if (i < n && is_removable(g, c) && degree(g, c) == 2) {
        ++checked;
        std::vector<std::uint32_t> up;
        for (DartId d : c.darts) up.push_back(cat.cell_index(i + 1, d));
        std::sort(up.begin(), up.end());
        up.erase(std::unique(up.begin(), up.end()), up.end());
        if (up.size() != 2) return fail("degree", c);
        for (auto u : up)
          if (std::abs(signed_incidence(s, cat.cells(i + 1)[u], c)) != 1) return fail("removal incidence", c);
      }
      if (i > 0 && is_contractible(g, c) && codegree(g, c) == 2) {
        ++checked;
        std::vector<std::uint32_t> low;
        for (DartId d : c.darts) low.push_back(cat.cell_index(i - 1, d));
        std::sort(low.begin(), low.end());
        low.erase(std::unique(low.begin(), low.end()), low.end());
        if (low.size() != 2) return fail("codegree", c);
        for (auto l : low)
          if (std::abs(signed_incidence(s, c, cat.cells(i - 1)[l])) != 1) return fail("contraction incidence", c);
      }
    }
  }
  return true;
}

}  // namespace gmh::test

#endif  // GMH_TESTS_SUPPORT_HPP
