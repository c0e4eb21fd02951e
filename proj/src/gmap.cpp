#include "gmh/gmap.hpp"

#include <algorithm>
#include <sstream>

namespace gmh {

namespace {

void check_dimension(int n) {
  if (n < 0 || n > kMaxDimension) {
    throw Error(ErrorKind::OutOfRange, "dimension " + std::to_string(n) + " out of range");
  }
}

void check_dart(const GMap& g, DartId d) {
  if (d >= g.num_darts()) {
    throw Error(ErrorKind::OutOfRange, "dart " + std::to_string(d) + " out of range (" +
                                           std::to_string(g.num_darts()) + " darts)");
  }
}

void check_index(const GMap& g, int i) {
  if (i < 0 || i > g.dimension()) {
    throw Error(ErrorKind::OutOfRange, "involution index " + std::to_string(i) + " out of range for a " +
                                           std::to_string(g.dimension()) + "-gmap");
  }
}

}  // namespace

GMap::GMap(int dimension, std::size_t num_darts) : dim_(dimension), size_(num_darts) {
  check_dimension(dimension);
  alpha_.resize(static_cast<std::size_t>(dimension) + 1);
  for (auto& table : alpha_) {
    table.resize(num_darts);
    for (std::size_t d = 0; d < num_darts; ++d) table[d] = static_cast<DartId>(d);
  }
}

GMap::GMap(std::vector<std::vector<DartId>> tables) {
  if (tables.empty()) throw Error(ErrorKind::OutOfRange, "a gmap needs at least one involution");
  dim_ = static_cast<int>(tables.size()) - 1;
  check_dimension(dim_);
  size_ = tables.front().size();
  for (const auto& t : tables) {
    if (t.size() != size_) throw Error(ErrorKind::OutOfRange, "involution tables differ in length");
  }
  alpha_ = std::move(tables);
}

void GMap::link(int i, DartId a, DartId b) {
  auto& t = alpha_[static_cast<std::size_t>(i)];
  t[a] = b;
  t[b] = a;
}

void GMap::unlink(int i, DartId d) {
  auto& t = alpha_[static_cast<std::size_t>(i)];
  const DartId other = t[d];
  if (t[other] == d) t[other] = other;
  t[d] = d;
}

bool Cell::contains(DartId d) const { return std::binary_search(darts.begin(), darts.end(), d); }

CellCatalog CellCatalog::build(const GMap& g) {
  CellCatalog cat;
  const int n = g.dimension();
  const std::size_t size = g.num_darts();
  cat.cells_.resize(static_cast<std::size_t>(n) + 1);
  cat.index_.assign(static_cast<std::size_t>(n) + 1, std::vector<std::uint32_t>(size, 0));
  std::vector<std::uint8_t> seen(size);
  OrbitScratch scratch(size);
  for (int i = 0; i <= n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    auto& list = cat.cells_[static_cast<std::size_t>(i)];
    auto& index = cat.index_[static_cast<std::size_t>(i)];
    const IndexMask mask = all_but(n, i);
    for (DartId d = 0; d < size; ++d) {
      if (seen[d]) continue;
      Cell c{i, {}};
      scratch.orbit(g, d, mask, c.darts);
      std::sort(c.darts.begin(), c.darts.end());
      const auto id = static_cast<std::uint32_t>(list.size());
      for (DartId e : c.darts) {
        seen[e] = 1;
        index[e] = id;
      }
      list.push_back(std::move(c));
    }
  }
  return cat;
}

std::vector<std::size_t> CellCatalog::counts() const {
  std::vector<std::size_t> out;
  for (const auto& list : cells_) out.push_back(list.size());
  return out;
}

std::string ValidationReport::describe(std::size_t max_items) const {
  std::ostringstream os;
  std::size_t shown = 0;
  for (const auto& v : violations) {
    if (shown++ == max_items) {
      os << "... " << (violations.size() - max_items) << " more\n";
      break;
    }
    switch (v.kind) {
      case Violation::Kind::OutOfRange:
        os << "alpha_" << v.i << "(" << v.dart << ") is out of range\n";
        break;
      case Violation::Kind::NotInvolution:
        os << "alpha_" << v.i << " is not an involution at dart " << v.dart << "\n";
        break;
      case Violation::Kind::NotCommuting:
        os << "alpha_" << v.i << " o alpha_" << v.j << " is not an involution at dart " << v.dart << "\n";
        break;
    }
  }
  return os.str();
}

ValidationReport validate(const GMap& g) {
  ValidationReport report;
  const int n = g.dimension();
  const std::size_t size = g.num_darts();
  bool in_range = true;
  for (int i = 0; i <= n; ++i) {
    for (DartId d = 0; d < size; ++d) {
      if (g.alpha(i, d) >= size) {
        report.violations.push_back({Violation::Kind::OutOfRange, i, -1, d});
        in_range = false;
      }
    }
  }
  if (!in_range) return report;
  for (int i = 0; i <= n; ++i) {
    for (DartId d = 0; d < size; ++d) {
      if (g.alpha(i, g.alpha(i, d)) != d) report.violations.push_back({Violation::Kind::NotInvolution, i, -1, d});
    }
  }
  for (int i = 0; i + 2 <= n; ++i) {
    for (int j = i + 2; j <= n; ++j) {
      for (DartId d = 0; d < size; ++d) {
        // (alpha_i o alpha_j) applied twice must give d back.
        const DartId once = g.alpha(i, g.alpha(j, d));
        if (g.alpha(i, g.alpha(j, once)) != d) report.violations.push_back({Violation::Kind::NotCommuting, i, j, d});
      }
    }
  }
  return report;
}

void OrbitScratch::orbit(const GMap& g, DartId d, IndexMask indices, std::vector<DartId>& out) {
  check_dart(g, d);
  if (++current_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    current_ = 1;
  }
  const int n = g.dimension();
  out.clear();
  out.push_back(d);
  stamp_[d] = current_;
  for (std::size_t head = 0; head < out.size(); ++head) {
    const DartId x = out[head];
    for (int i = 0; i <= n; ++i) {
      if (!(indices & index_bit(i))) continue;
      const DartId y = g.alpha(i, x);
      if (stamp_[y] != current_) {
        stamp_[y] = current_;
        out.push_back(y);
      }
    }
  }
}

std::vector<DartId> orbit(const GMap& g, DartId d, IndexMask indices) {
  OrbitScratch scratch(g.num_darts());
  std::vector<DartId> out;
  scratch.orbit(g, d, indices, out);
  return out;
}

Cell cell(const GMap& g, DartId d, int i) {
  check_index(g, i);
  Cell c{i, orbit(g, d, all_but(g.dimension(), i))};
  std::sort(c.darts.begin(), c.darts.end());
  return c;
}

bool is_free(const GMap& g, DartId d, int i) {
  check_index(g, i);
  check_dart(g, d);
  return g.is_free(i, d);
}

std::vector<Cell> all_cells(const GMap& g, int i) {
  check_index(g, i);
  auto cat = CellCatalog::build(g);
  return cat.cells(i);
}

namespace {

std::size_t count_cells_touching(const GMap& g, const Cell& c, int k) {
  std::vector<std::uint8_t> seen(g.num_darts());
  OrbitScratch scratch(g.num_darts());
  std::vector<DartId> buf;
  std::size_t count = 0;
  const IndexMask mask = all_but(g.dimension(), k);
  for (DartId d : c.darts) {
    if (seen[d]) continue;
    ++count;
    scratch.orbit(g, d, mask, buf);
    for (DartId e : buf) seen[e] = 1;
  }
  return count;
}

}  // namespace

std::size_t degree(const GMap& g, const Cell& c) {
  if (c.dim < 0 || c.dim >= g.dimension()) {
    throw Error(ErrorKind::OutOfRange, "degree needs a cell of dimension below " + std::to_string(g.dimension()));
  }
  return count_cells_touching(g, c, c.dim + 1);
}

std::size_t codegree(const GMap& g, const Cell& c) {
  if (c.dim <= 0 || c.dim > g.dimension()) {
    throw Error(ErrorKind::OutOfRange, "codegree needs a cell of positive dimension");
  }
  return count_cells_touching(g, c, c.dim - 1);
}

bool incident(const Cell& a, const Cell& b) {
  if (a == b) return false;
  auto ia = a.darts.begin();
  auto ib = b.darts.begin();
  while (ia != a.darts.end() && ib != b.darts.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) ++ia; else ++ib;
  }
  return false;
}

bool adjacent(const GMap& g, const Cell& a, const Cell& b) {
  if (a.dim != b.dim) return false;
  for (DartId d : a.darts) {
    const DartId e = g.alpha(a.dim, d);
    if (e != d && b.contains(e)) return true;
  }
  return false;
}

}  // namespace gmh
