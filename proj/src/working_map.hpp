#ifndef GMH_WORKING_MAP_HPP
#define GMH_WORKING_MAP_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gmh/gmap.hpp"
#include "gmh/orientation.hpp"
#include "gmh/simplify.hpp"

namespace gmh::detail {

/// Stamp-based set over a dense index range; clear() is O(1).
class Marks {
 public:
  void resize(std::size_t n) {
    v_.assign(n, 0);
    cur_ = 1;
  }
  void clear() {
    if (++cur_ == 0) {
      std::fill(v_.begin(), v_.end(), 0);
      cur_ = 1;
    }
  }
  bool has(std::size_t i) const { return v_[i] == cur_; }
  void set(std::size_t i) { v_[i] = cur_; }
  bool insert(std::size_t i) {
    if (has(i)) return false;
    set(i);
    return true;
  }

 private:
  std::vector<std::uint32_t> v_;
  std::uint32_t cur_ = 1;
};

struct IncidentCell {
  Label label;
  std::uint32_t in_c;  // darts shared with c
  DartId rep;          // one of those darts
};

struct CollapseCell {
  int dim;
  Label label;
  DartId rep;
};

/// Everything known about one candidate operation before it is applied.
struct Plan {
  OpKind kind = OpKind::Removal;
  int i = 0;
  int m = 0;  // dimension whose cells may merge: i+1 for removal, i-1 for contraction
  std::vector<DartId> darts;
  std::vector<std::pair<DartId, DartId>> relinks;  // (d, new alpha_i(d)) for d in DV
  bool creates_free = false;
  std::vector<std::vector<IncidentCell>> incident;  // [k], empty for k == i
  std::size_t degree = 0;                           // incident m-cells
  Label survivor = kNoDart;
  Label absorbed = kNoDart;
  bool flip_absorbed = false;
  bool collapse = false;
  std::vector<std::pair<int, Label>> vanished;
  std::vector<ReductionStep> steps;
};

/// Mutable n-Gmap over the initial dart range. Darts are never renumbered
/// while operations run; compaction happens once in snapshot().
class WorkingMap {
 public:
  WorkingMap(const GMap& g, const std::vector<std::vector<std::int8_t>>* signs);
  explicit WorkingMap(const SignedGMap& s) : WorkingMap(s.base, &s.sg) {}

  int dimension() const noexcept { return n_; }
  std::size_t capacity() const noexcept { return size_; }
  std::size_t alive_count() const noexcept { return alive_count_; }
  bool alive(DartId d) const { return alive_[d] != 0; }
  DartId alpha(int j, DartId d) const { return alpha_[static_cast<std::size_t>(j)][d]; }
  Label label(int k, DartId d) const { return label_[static_cast<std::size_t>(k)][d]; }
  bool has_signs() const noexcept { return !sign_.empty(); }
  int sign(int k, DartId d) const { return sign_[static_cast<std::size_t>(k)][d]; }
  std::vector<std::size_t> cell_counts() const;

  void cell_darts(int k, DartId d, std::vector<DartId>& out);

  bool removable(const std::vector<DartId>& c, int i) const;
  bool contractible(const std::vector<DartId>& c, int i) const;
  bool allowed(const Plan& p) const;

  /// Cell of d, its DV relinks and incident cells. Throws NonTerminatingWalk.
  Plan gather(OpKind kind, int i, DartId d, bool walk = true);
  bool check_degree_two(Plan& p);
  /// Dangling (removal) or codangling (contraction) test. With `full`, also the
  /// vanishing and preserved conditions and the sign relation on new links.
  bool check_collapse(Plan& p, bool full, bool record_chains);
  /// Every incident cell survives on its own, nothing merges or vanishes.
  bool check_all_preserved(Plan& p);

  OperationRecord apply(Plan& p, bool record_chains);

  /// Nonzero (label, (cell : face)) for the k-cell of d.
  std::vector<std::pair<Label, int>> boundary_of(int k, DartId d);
  /// Nonzero (label, (coface : cell)) for the k-cell of d.
  std::vector<std::pair<Label, int>> coboundary_of(int k, DartId d);

  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> find_collapse(
      const std::vector<CollapseCell>& cells, CollapseMode mode, std::vector<ReductionStep>* steps);

  Snapshot snapshot() const;

 private:
  void orbit_into(DartId d, IndexMask mask, Marks& marks, std::vector<DartId>& out);
  DartId alpha_new(DartId d) const;
  bool in_c(DartId d) const { return in_c_.has(d); }
  bool connected(int k, Label a, Label b, const Plan& p);
  bool new_links_signed(const Plan& p, Label keep, Label other, bool flip) const;
  std::vector<CollapseCell> collapse_set(const Plan& p);

  int n_ = 0;
  std::size_t size_ = 0;
  std::size_t alive_count_ = 0;
  std::vector<std::vector<DartId>> alpha_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::vector<Label>> label_;
  std::vector<std::vector<std::uint32_t>> cell_size_;  // [k][label]
  std::vector<std::vector<std::int8_t>> sign_;

  Marks in_c_, bfs_, part_, owner_set_, relinked_, label_marks_;
  std::vector<std::uint32_t> owner_;
  std::vector<DartId> relink_to_;
  std::vector<DartId> buf_, buf2_;
  int walk_i_ = 0;
};

}  // namespace gmh::detail

#endif  // GMH_WORKING_MAP_HPP
