#include "gmh/orientation.hpp"

#include <algorithm>

#include "gmh/homology.hpp"

namespace gmh {

bool sign_cell(const GMap& g, const Cell& c, int seed, std::vector<std::int8_t>& out) {
  // out must be zero on the darts of c; zero marks an unvisited dart.
  const int n = g.dimension();
  const int i = c.dim;
  std::vector<DartId> queue{c.canonical()};
  out[c.canonical()] = static_cast<std::int8_t>(seed);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const DartId x = queue[head];
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      const DartId y = g.alpha(j, x);
      if (y == x) continue;
      const std::int8_t want = static_cast<std::int8_t>(j < i ? -out[x] : out[x]);
      if (out[y] != 0) {
        if (out[y] != want) return false;
      } else {
        out[y] = want;
        queue.push_back(y);
      }
    }
  }
  return true;
}

bool is_orientable_cell(const GMap& g, const Cell& c) {
  if (c.dim == 0) return true;
  std::vector<std::int8_t> scratch(g.num_darts(), 0);
  return sign_cell(g, c, 1, scratch);
}

SignedGMap assign_signs(const GMap& g, const SeedFn& seed) {
  const int n = g.dimension();
  const std::size_t size = g.num_darts();
  SignedGMap s{g, std::vector<std::vector<std::int8_t>>(static_cast<std::size_t>(n) + 1,
                                                         std::vector<std::int8_t>(size, 0))};
  for (int i = 0; i <= n; ++i) {
    auto& sg = s.sg[static_cast<std::size_t>(i)];
    Cell c{i, {0}};
    for (DartId d = 0; d < size; ++d) {
      if (sg[d] != 0) continue;
      // d is the smallest dart of its cell, hence canonical.
      int first = seed ? seed(i, d) : 1;
      first = first < 0 ? -1 : 1;
      c.darts[0] = d;
      if (!sign_cell(g, c, first, sg)) {
        throw Error(ErrorKind::NonOrientableCell,
                    "cell of dimension " + std::to_string(i) + " at dart " + std::to_string(d) + " is not orientable");
      }
    }
  }
  return s;
}

bool signs_consistent(const SignedGMap& s) {
  const GMap& g = s.base;
  const int n = g.dimension();
  for (int i = 0; i <= n; ++i) {
    for (DartId d = 0; d < g.num_darts(); ++d) {
      const int sd = s.sign(i, d);
      if (sd != 1 && sd != -1) return false;
      for (int j = 0; j <= n; ++j) {
        if (j == i) continue;
        const DartId e = g.alpha(j, d);
        if (e == d) continue;
        if (s.sign(i, e) != (j < i ? -sd : sd)) return false;
      }
    }
  }
  return true;
}

namespace {

// Sub-orbits of <alpha_0..alpha_{i-2}> partitioning <alpha_0..alpha_{i-1}>(d).
std::vector<std::vector<DartId>> slice_partition(const GMap& g, DartId d, int i) {
  std::vector<std::vector<DartId>> parts;
  const auto slice = orbit(g, d, indices_below(i));
  std::vector<std::uint8_t> seen(g.num_darts());
  for (DartId x : slice) {
    if (seen[x]) continue;
    auto part = orbit(g, x, indices_below(i - 1));
    for (DartId y : part) seen[y] = 1;
    parts.push_back(std::move(part));
  }
  return parts;
}

void check_pair(const SignedGMap& s, const Cell& c_i, const Cell& c_im1) {
  if (c_i.dim != c_im1.dim + 1) {
    throw Error(ErrorKind::DimensionMismatch, "signed incidence needs cells of dimensions i and i-1, got " +
                                                  std::to_string(c_i.dim) + " and " + std::to_string(c_im1.dim));
  }
  if (c_i.darts.empty() || c_im1.darts.empty() || c_i.dim > s.base.dimension()) {
    throw Error(ErrorKind::OutOfRange, "signed incidence on an empty or out-of-range cell");
  }
}

}  // namespace

int signed_incidence_with(const SignedGMap& s, const Cell& c_i, const Cell& c_im1,
                          const std::function<std::size_t(std::size_t, const std::vector<DartId>&)>& pick) {
  check_pair(s, c_i, c_im1);
  const int i = c_i.dim;
  const auto parts = slice_partition(s.base, c_i.canonical(), i);
  int total = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const DartId p = parts[k][pick(k, parts[k])];
    if (c_im1.contains(p)) total += s.sign(i, p) * s.sign(i - 1, p);
  }
  return total;
}

int signed_incidence(const SignedGMap& s, const Cell& c_i, const Cell& c_im1) {
  return signed_incidence_with(s, c_i, c_im1, [](std::size_t, const std::vector<DartId>&) { return std::size_t{0}; });
}

namespace {

// Boundary of the cell through d as an (i-1)-gmap on the slice <alpha_0..alpha_{i-1}>(d).
GMap cell_boundary(const GMap& g, DartId d, int i) {
  auto slice = orbit(g, d, indices_below(i));
  std::sort(slice.begin(), slice.end());
  std::vector<std::vector<DartId>> tables(static_cast<std::size_t>(i), std::vector<DartId>(slice.size()));
  for (int j = 0; j < i; ++j) {
    for (std::size_t k = 0; k < slice.size(); ++k) {
      const DartId y = g.alpha(j, slice[k]);
      tables[static_cast<std::size_t>(j)][k] =
          static_cast<DartId>(std::lower_bound(slice.begin(), slice.end(), y) - slice.begin());
    }
  }
  return GMap(std::move(tables));
}

bool is_sphere_homology(const GMap& boundary, int dim) {
  std::vector<long> betti;
  try {
    betti = betti_numbers(boundary);
  } catch (const Error&) {
    return false;
  }
  for (int p = 0; p <= dim; ++p) {
    long want = 0;
    if (dim == 0) want = (p == 0) ? 2 : 0;
    else if (p == 0 || p == dim) want = 1;
    if (betti[static_cast<std::size_t>(p)] != want) return false;
  }
  return true;
}

}  // namespace

SubclassReport check_subclass(const GMap& g, bool sphere_check) {
  SubclassReport report;
  const int n = g.dimension();
  const std::size_t size = g.num_darts();
  for (int i = 0; i < n; ++i) {
    for (DartId d = 0; d < size; ++d) {
      if (g.is_free(i, d)) report.free_dart_violations.emplace_back(d, i);
    }
  }
  std::vector<std::uint32_t> klass(size);
  std::vector<std::uint8_t> seen(size);
  OrbitScratch scratch(size);
  std::vector<DartId> buf;
  for (int i = 0; i <= n; ++i) {
    IndexMask mask = all_indices(n) & ~index_bit(i);
    if (i >= 1) mask &= ~index_bit(i - 1);
    if (i + 1 <= n) mask &= ~index_bit(i + 1);
    std::fill(seen.begin(), seen.end(), 0);
    std::uint32_t next = 0;
    for (DartId d = 0; d < size; ++d) {
      if (seen[d]) continue;
      scratch.orbit(g, d, mask, buf);
      for (DartId e : buf) {
        seen[e] = 1;
        klass[e] = next;
      }
      ++next;
    }
    for (DartId d = 0; d < size; ++d) {
      const DartId e = g.alpha(i, d);
      if (e != d && klass[e] == klass[d]) report.multi_link_violations.emplace_back(d, i);
    }
  }
  if (sphere_check) {
    report.sphere_condition_checked = true;
    const auto cat = CellCatalog::build(g);
    for (int i = 1; i <= n; ++i) {
      for (const auto& c : cat.cells(i)) {
        if (!is_sphere_homology(cell_boundary(g, c.canonical(), i), i - 1)) {
          report.sphere_violations.emplace_back(i, c.canonical());
        }
      }
    }
  }
  return report;
}

}  // namespace gmh
