#ifndef GMH_HOMOLOGY_HPP
#define GMH_HOMOLOGY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gmh/gmap.hpp"
#include "gmh/orientation.hpp"
#include "gmh/simplify.hpp"

namespace gmh {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  IntMatrix transposed() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// Bareiss fraction-free determinant of a square matrix.
mpz_class determinant(const IntMatrix& m);

/// U * M * V = D, D diagonal with d_1 | d_2 | ..., all d_k >= 0.
struct SmithForm {
  IntMatrix D;
  IntMatrix U, Uinv, V, Vinv;
  std::vector<mpz_class> diagonal;  // first min(rows, cols) entries of D
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& m);
/// Diagonal of the Smith form only, skipping the transforms.
std::vector<mpz_class> invariant_factors(const IntMatrix& m);

using SparseColumn = std::vector<std::pair<std::uint32_t, std::int64_t>>;

struct SparseMatrix {
  std::size_t rows = 0;
  std::vector<SparseColumn> columns;  // sorted by row, no zero entries

  std::size_t cols() const noexcept { return columns.size(); }
  IntMatrix dense() const;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// Rank and invariant factors > 1, by unit-pivot elimination followed by a
/// dense Smith form of what is left.
struct RankProfile {
  std::size_t rank = 0;
  std::vector<mpz_class> torsion;
};
RankProfile sparse_rank_profile(const SparseMatrix& m);

struct ChainComplex {
  int dimension = -1;
  std::vector<std::vector<DartId>> basis;   // canonical darts, ascending
  std::vector<std::vector<Label>> labels;   // identifier of each basis cell
  std::vector<SparseMatrix> boundary;       // boundary[p]: |S^{p-1}| x |S^p|, boundary[0] has no rows

  std::size_t size(int p) const { return basis[static_cast<std::size_t>(p)].size(); }
  /// Position of the cell with this label, if any.
  std::optional<std::uint32_t> index_of(int p, Label label) const;

  std::vector<std::unordered_map<Label, std::uint32_t>> label_index;
};

/// Chain complex of s. The optional per-dart labels name the cells; by default
/// a cell is named by its canonical dart. Throws BoundaryNotNilpotent.
ChainComplex build_chain_complex(const SignedGMap& s, const std::vector<std::vector<Label>>* labels = nullptr);

/// (p, column) of a nonzero entry of boundary[p-1] * boundary[p], if any.
std::optional<std::pair<int, std::size_t>> boundary_square_witness(const ChainComplex& cc);

struct Generator {
  std::vector<mpz_class> chain;  // coefficients over basis[p]
  mpz_class order;               // 0 for a free class
};

struct HomologyResult {
  std::vector<long> betti;
  std::vector<std::vector<mpz_class>> torsion;
  std::vector<std::vector<Generator>> generators;
};

/// Dense Smith-form homology with generators.
HomologyResult homology(const ChainComplex& cc, bool with_generators = true);
/// Betti numbers and torsion only, using sparse elimination.
HomologyResult homology_invariants(const ChainComplex& cc);
/// Signs, chain complex and invariants of g in one call.
std::vector<long> betti_numbers(const GMap& g);

using LabeledChain = std::map<Label, mpz_class>;

LabeledChain to_labeled(const ChainComplex& cc, int p, const std::vector<mpz_class>& chain);
/// Throws LogMismatch when a label is not a cell of cc.
std::vector<mpz_class> to_dense(const ChainComplex& cc, int p, const LabeledChain& chain);
std::vector<mpz_class> apply_boundary(const ChainComplex& cc, int p, const std::vector<mpz_class>& chain);

/// Chain map g along the log, from the simplified complex back to the initial one.
LabeledChain pull_back(const OperationLog& log, int p, LabeledChain chain);
/// Chain map f along the log, from the initial complex to the simplified one.
LabeledChain push_forward(const OperationLog& log, int p, LabeledChain chain);

/// Generators of `result` (computed on `simplified`) as chains of `original`.
std::vector<std::vector<std::vector<mpz_class>>> project_generators(const HomologyResult& result,
                                                                     const ChainComplex& simplified,
                                                                     const OperationLog& log,
                                                                     const ChainComplex& original);

/// Rank of the integer matrix whose columns are the given vectors.
std::size_t column_rank(const std::vector<std::vector<mpz_class>>& columns, std::size_t rows);

}  // namespace gmh

#endif  // GMH_HOMOLOGY_HPP
