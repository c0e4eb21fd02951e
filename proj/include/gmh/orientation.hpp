#ifndef GMH_ORIENTATION_HPP
#define GMH_ORIENTATION_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gmh/gmap.hpp"

namespace gmh {

/// A GMap with sg^i(d) for every dimension i and dart d.
struct SignedGMap {
  GMap base;
  std::vector<std::vector<std::int8_t>> sg;  // sg[i][d] in {+1, -1}

  int sign(int i, DartId d) const { return sg[static_cast<std::size_t>(i)][d]; }
};

/// Chooses the sign of the seed dart of a cell, given (dimension, canonical dart).
using SeedFn = std::function<int(int, DartId)>;

/// Two-colouring test on the darts of c: alpha_j partners with j < i must
/// get opposite colours and partners with j > i the same colour.
bool is_orientable_cell(const GMap& g, const Cell& c);

/// Signs for every cell by breadth-first propagation from its canonical dart.
/// Throws Error(NonOrientableCell) naming the first contradicting cell.
SignedGMap assign_signs(const GMap& g, const SeedFn& seed = {});

/// Writes signs of the darts of c into out (indexed by dart).
/// Returns false when the cell is not orientable.
bool sign_cell(const GMap& g, const Cell& c, int seed, std::vector<std::int8_t>& out);

/// True when every sign is +1 or -1 and the Def 8 relations hold on all links.
bool signs_consistent(const SignedGMap& s);

/// (c_i : c_im1) following the orbit partition of Def 9.
int signed_incidence(const SignedGMap& s, const Cell& c_i, const Cell& c_im1);

/// Same value computed with an explicit representative per sub-orbit.
/// pick(k, orbit) selects the index of the representative within orbit k.
int signed_incidence_with(const SignedGMap& s, const Cell& c_i, const Cell& c_im1,
                          const std::function<std::size_t(std::size_t, const std::vector<DartId>&)>& pick);

struct SubclassReport {
  std::vector<std::pair<DartId, int>> free_dart_violations;  // (d, i), i < n
  std::vector<std::pair<DartId, int>> multi_link_violations;  // (d, i)
  bool sphere_condition_checked = false;
  std::vector<std::pair<int, DartId>> sphere_violations;  // (dimension, canonical dart)

  bool ok() const {
    return free_dart_violations.empty() && multi_link_violations.empty() && sphere_violations.empty();
  }
};

SubclassReport check_subclass(const GMap& g, bool sphere_check = false);

}  // namespace gmh

#endif  // GMH_ORIENTATION_HPP
