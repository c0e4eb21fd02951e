#ifndef GMH_GMAP_HPP
#define GMH_GMAP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmh {

using DartId = std::uint32_t;
inline constexpr DartId kNoDart = ~DartId{0};

/// Bit set of involution indices; bit i selects alpha_i.
using IndexMask = std::uint32_t;

inline constexpr int kMaxDimension = 30;

inline constexpr IndexMask index_bit(int i) { return IndexMask{1} << i; }

/// All indices in [0, n].
inline constexpr IndexMask all_indices(int n) { return (IndexMask{1} << (n + 1)) - 1; }

/// All indices in [0, n] except i: the generators of an i-cell.
inline constexpr IndexMask all_but(int n, int i) { return all_indices(n) & ~index_bit(i); }

/// Indices strictly below k.
inline constexpr IndexMask indices_below(int k) { return k <= 0 ? 0 : (IndexMask{1} << k) - 1; }

enum class ErrorKind {
  OutOfRange,
  NotRemovable,
  NotContractible,
  NonTerminatingWalk,
  NonOrientableCell,
  DimensionMismatch,
  BoundaryNotNilpotent,
  LogMismatch,
  Parse,
  NotQuasiManifold,
  EmptyBatch,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// An n-dimensional generalized map over the dense dart range [0, num_darts).
///
/// Involutions are stored as one flat table per index. Builders sew darts
/// incrementally through link(); the map axioms are only checked by
/// validate(), so a partially built map is representable.
class GMap {
 public:
  GMap() = default;
  /// n+1 identity involutions over num_darts darts.
  GMap(int dimension, std::size_t num_darts);
  /// Takes ownership of the tables; dimension is tables.size() - 1.
  explicit GMap(std::vector<std::vector<DartId>> tables);

  int dimension() const noexcept { return dim_; }
  std::size_t num_darts() const noexcept { return size_; }

  DartId alpha(int i, DartId d) const { return alpha_[static_cast<std::size_t>(i)][d]; }
  std::span<const DartId> involution(int i) const { return alpha_[static_cast<std::size_t>(i)]; }
  const std::vector<std::vector<DartId>>& tables() const noexcept { return alpha_; }

  bool is_free(int i, DartId d) const { return alpha(i, d) == d; }

  /// Sets alpha_i(a) = b and alpha_i(b) = a.
  void link(int i, DartId a, DartId b);
  /// Makes d i-free, first unlinking its partner.
  void unlink(int i, DartId d);

  friend bool operator==(const GMap&, const GMap&) = default;

 private:
  int dim_ = 0;
  std::size_t size_ = 0;
  std::vector<std::vector<DartId>> alpha_;
};

struct Cell {
  int dim = 0;
  std::vector<DartId> darts;  // sorted ascending
  DartId canonical() const { return darts.front(); }

  bool contains(DartId d) const;
  friend bool operator==(const Cell& a, const Cell& b) { return a.dim == b.dim && a.darts == b.darts; }
};

/// Partition of the darts into cells, for every dimension.
class CellCatalog {
 public:
  static CellCatalog build(const GMap& g);

  int dimension() const noexcept { return static_cast<int>(cells_.size()) - 1; }
  const std::vector<Cell>& cells(int i) const { return cells_[static_cast<std::size_t>(i)]; }
  /// Index into cells(i) of the i-cell containing d.
  std::uint32_t cell_index(int i, DartId d) const { return index_[static_cast<std::size_t>(i)][d]; }
  std::size_t count(int i) const { return cells(i).size(); }
  std::vector<std::size_t> counts() const;

 private:
  std::vector<std::vector<Cell>> cells_;
  std::vector<std::vector<std::uint32_t>> index_;
};

struct Violation {
  enum class Kind { OutOfRange, NotInvolution, NotCommuting };
  Kind kind;
  int i;
  int j;  // second index for NotCommuting, -1 otherwise
  DartId dart;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::string describe(std::size_t max_items = 20) const;
};

/// Checks the involution axiom for every index and that alpha_i o alpha_j is an
/// involution whenever j >= i + 2. Every failure is reported with a witness.
ValidationReport validate(const GMap& g);

/// Breadth-first orbit of d under the involutions selected by `indices`.
/// The first element is d; order is deterministic.
std::vector<DartId> orbit(const GMap& g, DartId d, IndexMask indices);

/// Reusable visited marks for many orbit traversals over maps of one size.
class OrbitScratch {
 public:
  explicit OrbitScratch(std::size_t num_darts) : stamp_(num_darts, 0) {}
  /// Replaces out with the orbit of d, in the same order as orbit().
  void orbit(const GMap& g, DartId d, IndexMask indices, std::vector<DartId>& out);

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t current_ = 0;
};

Cell cell(const GMap& g, DartId d, int i);
bool is_free(const GMap& g, DartId d, int i);
std::vector<Cell> all_cells(const GMap& g, int i);

/// Number of distinct (i+1)-cells sharing a dart with the i-cell c.
std::size_t degree(const GMap& g, const Cell& c);
/// Number of distinct (i-1)-cells sharing a dart with the i-cell c.
std::size_t codegree(const GMap& g, const Cell& c);

bool incident(const Cell& a, const Cell& b);
bool adjacent(const GMap& g, const Cell& a, const Cell& b);

}  // namespace gmh

#endif  // GMH_GMAP_HPP
