#ifndef GMH_SIMPLIFY_HPP
#define GMH_SIMPLIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gmh/gmap.hpp"
#include "gmh/orientation.hpp"

namespace gmh {

enum class OpKind { Removal, Contraction };

/// Cell identity used across a simplification: the canonical dart of the
/// cell in the initial map. A merged cell keeps the label of its survivor.
using Label = DartId;

/// One (lower, upper) cell pair eliminated from the chain complex.
struct ReductionStep {
  int lower_dim = 0;
  Label lower = kNoDart;
  Label upper = kNoDart;
  int incidence = 0;  // (upper : lower), always +1 or -1
  /// Faces of upper with nonzero incidence, (label, (upper : face)).
  std::vector<std::pair<Label, int>> upper_boundary;
  /// Cofaces of lower with nonzero incidence, (label, (coface : lower)).
  std::vector<std::pair<Label, int>> lower_coboundary;
};

struct OperationRecord {
  OpKind kind = OpKind::Removal;
  int dim = 0;
  bool collapse = false;                  // dangling or codangling case
  std::vector<DartId> cell_darts;         // initial indexing, sorted
  Label cell = kNoDart;
  Label survivor = kNoDart;               // degree/codegree two only
  Label absorbed = kNoDart;
  std::vector<std::pair<int, Label>> vanished;  // cells deleted with c, (dim, label)
  bool chains_recorded = false;
  std::vector<ReductionStep> steps;       // empty unless chains_recorded
  std::vector<DartId> dart_index_map;     // single-operation API only: old -> new or kNoDart
};

struct OperationLog {
  int dimension = 0;
  std::size_t initial_darts = 0;
  std::vector<std::size_t> initial_cells;
  std::vector<OperationRecord> records;
  std::vector<DartId> final_to_initial;       // dart of the result -> initial dart
  std::vector<std::vector<Label>> final_labels;  // [k][result dart]
  std::vector<std::size_t> final_cells;
};

/// Compacted view of the map at some point of a simplification.
struct Snapshot {
  SignedGMap map;
  std::vector<std::vector<Label>> labels;  // [k][dart]
  std::vector<DartId> to_initial;
};

struct SimplifyOptions {
  bool removals = true;
  bool contractions = true;
  bool contraction_first = false;
  /// Store the chain data needed to project generators back.
  bool record_chains = false;
  /// Called after every applied operation with its index and a snapshot thunk.
  std::function<void(std::size_t, const OperationRecord&, const std::function<Snapshot()>&)> on_step;
};

struct SimplifyResult {
  SignedGMap map;
  OperationLog log;
};

bool is_removable(const GMap& g, const Cell& c);
bool is_contractible(const GMap& g, const Cell& c);

/// Def 5 removal of c. Throws NotRemovable or NonTerminatingWalk.
std::pair<GMap, OperationRecord> remove_cell(const GMap& g, const Cell& c);
/// Def 6 contraction of c. Throws NotContractible or NonTerminatingWalk.
std::pair<GMap, OperationRecord> contract_cell(const GMap& g, const Cell& c);

struct CellRef {
  int dim;
  DartId canonical;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

std::vector<CellRef> closure(const GMap& g, const Cell& c);
std::vector<CellRef> coclosure(const GMap& g, const Cell& c);

/// LowerFree: the lower cell of each pair has no other coface left in the
/// complex. UpperFree: the upper cell has no other face left.
enum class CollapseMode { LowerFree, UpperFree };

/// Greedy search for a sequence of elementary collapses emptying `cells`
/// inside the complex of s. Pairs are (lower, upper).
std::optional<std::vector<std::pair<CellRef, CellRef>>> is_collapsible(
    const SignedGMap& s, const std::vector<CellRef>& cells, CollapseMode mode = CollapseMode::LowerFree);

bool is_dangling(const SignedGMap& s, const Cell& c);
bool is_codangling(const SignedGMap& s, const Cell& c);

/// True when applying the operation keeps every cell incident to c as a
/// single cell made of its darts outside c (merged pair included).
bool cells_preserved(const GMap& g, const Cell& c, OpKind kind);

/// Algorithm 1 for one dimension. Appends to log.
SignedGMap remove_i_cells(const SignedGMap& s, int i, OperationLog& log, bool record_chains = false);
/// Algorithm 2 for one dimension. Appends to log.
SignedGMap contract_i_cells(const SignedGMap& s, int i, OperationLog& log, bool record_chains = false);

/// Algorithm 3.
SimplifyResult simplify(const SignedGMap& s, const SimplifyOptions& options = {});
SimplifyResult simplify(const GMap& g, const SimplifyOptions& options = {});

/// Re-applies the logged operations to the initial map.
GMap replay(const GMap& initial, const OperationLog& log);

}  // namespace gmh

#endif  // GMH_SIMPLIFY_HPP
