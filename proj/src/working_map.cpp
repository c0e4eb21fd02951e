#include "working_map.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace gmh::detail {

WorkingMap::WorkingMap(const GMap& g, const std::vector<std::vector<std::int8_t>>* signs)
    : n_(g.dimension()), size_(g.num_darts()), alive_count_(g.num_darts()), alpha_(g.tables()) {
  alive_.assign(size_, 1);
  const auto levels = static_cast<std::size_t>(n_ + 1);
  label_.assign(levels, std::vector<Label>(size_, kNoDart));
  cell_size_.assign(levels, std::vector<std::uint32_t>(size_, 0));
  OrbitScratch scratch(size_);
  std::vector<DartId> orb;
  for (int k = 0; k <= n_; ++k) {
    auto& lab = label_[static_cast<std::size_t>(k)];
    for (DartId d = 0; d < size_; ++d) {
      if (lab[d] != kNoDart) continue;
      scratch.orbit(g, d, all_but(n_, k), orb);
      const Label l = *std::min_element(orb.begin(), orb.end());
      for (DartId x : orb) lab[x] = l;
      cell_size_[static_cast<std::size_t>(k)][l] = static_cast<std::uint32_t>(orb.size());
    }
  }
  if (signs != nullptr) {
    if (signs->size() != levels)
      throw Error(ErrorKind::DimensionMismatch, "sign table has wrong dimension");
    for (const auto& row : *signs)
      if (row.size() != size_) throw Error(ErrorKind::DimensionMismatch, "sign table has wrong size");
    sign_ = *signs;
  }
  for (Marks* m : {&in_c_, &bfs_, &part_, &owner_set_, &relinked_, &label_marks_}) m->resize(size_);
  owner_.assign(size_, 0);
  relink_to_.assign(size_, kNoDart);
}

std::vector<std::size_t> WorkingMap::cell_counts() const {
  std::vector<std::size_t> out;
  for (const auto& sizes : cell_size_)
    out.push_back(static_cast<std::size_t>(std::count_if(sizes.begin(), sizes.end(), [](auto v) { return v > 0; })));
  return out;
}

void WorkingMap::orbit_into(DartId d, IndexMask mask, Marks& marks, std::vector<DartId>& out) {
  out.clear();
  if (!marks.insert(d)) return;
  out.push_back(d);
  for (std::size_t h = 0; h < out.size(); ++h) {
    const DartId x = out[h];
    for (int j = 0; j <= n_; ++j) {
      if ((mask & index_bit(j)) == 0) continue;
      const DartId y = alpha_[static_cast<std::size_t>(j)][x];
      if (marks.insert(y)) out.push_back(y);
    }
  }
}

void WorkingMap::cell_darts(int k, DartId d, std::vector<DartId>& out) {
  bfs_.clear();
  orbit_into(d, all_but(n_, k), bfs_, out);
}

bool WorkingMap::removable(const std::vector<DartId>& c, int i) const {
  if (i < 0 || i >= n_) return false;
  if (i == n_ - 1) return true;
  const auto& a1 = alpha_[static_cast<std::size_t>(i + 1)];
  const auto& a2 = alpha_[static_cast<std::size_t>(i + 2)];
  return std::all_of(c.begin(), c.end(), [&](DartId x) { return a1[a2[x]] == a2[a1[x]]; });
}

bool WorkingMap::contractible(const std::vector<DartId>& c, int i) const {
  if (i < 1 || i > n_) return false;
  if (i == 1) return true;
  const auto& a1 = alpha_[static_cast<std::size_t>(i - 1)];
  const auto& a2 = alpha_[static_cast<std::size_t>(i - 2)];
  return std::all_of(c.begin(), c.end(), [&](DartId x) { return a1[a2[x]] == a2[a1[x]]; });
}

bool WorkingMap::allowed(const Plan& p) const {
  return p.kind == OpKind::Removal ? removable(p.darts, p.i) : contractible(p.darts, p.i);
}

DartId WorkingMap::alpha_new(DartId d) const {
  return relinked_.has(d) ? relink_to_[d] : alpha_[static_cast<std::size_t>(walk_i_)][d];
}

Plan WorkingMap::gather(OpKind kind, int i, DartId d, bool walk) {
  if (d >= size_ || !alive(d)) throw Error(ErrorKind::OutOfRange, "dart " + std::to_string(d) + " is not in the map");
  if (kind == OpKind::Removal && (i < 0 || i >= n_))
    throw Error(ErrorKind::NotRemovable, std::to_string(i) + "-cells cannot be removed in a " + std::to_string(n_) + "-Gmap");
  if (kind == OpKind::Contraction && (i < 1 || i > n_))
    throw Error(ErrorKind::NotContractible,
                std::to_string(i) + "-cells cannot be contracted in a " + std::to_string(n_) + "-Gmap");
  Plan p;
  p.kind = kind;
  p.i = i;
  p.m = kind == OpKind::Removal ? i + 1 : i - 1;
  walk_i_ = i;
  cell_darts(i, d, p.darts);
  std::sort(p.darts.begin(), p.darts.end());
  in_c_.clear();
  for (DartId x : p.darts) in_c_.set(x);
  relinked_.clear();

  if (walk) {
    const auto& ai = alpha_[static_cast<std::size_t>(i)];
    const auto& am = alpha_[static_cast<std::size_t>(p.m)];
    for (DartId x : p.darts) {
      const DartId y = ai[x];
      if (in_c(y)) continue;
      DartId t = ai[y];
      std::size_t steps = 0;
      while (in_c(t)) {
        t = ai[am[t]];
        if (++steps > p.darts.size())
          throw Error(ErrorKind::NonTerminatingWalk,
                      "walk from dart " + std::to_string(y) + " does not leave the " + std::to_string(i) + "-cell");
      }
      p.relinks.emplace_back(y, t);
      relinked_.set(y);
      relink_to_[y] = t;
      if (t == y && i < n_) p.creates_free = true;
    }
  }

  p.incident.assign(static_cast<std::size_t>(n_ + 1), {});
  for (int k = 0; k <= n_; ++k) {
    if (k == i) continue;
    auto& v = p.incident[static_cast<std::size_t>(k)];
    const auto& lab = label_[static_cast<std::size_t>(k)];
    label_marks_.clear();
    for (DartId x : p.darts) {
      const Label l = lab[x];
      if (label_marks_.insert(l)) {
        owner_[l] = static_cast<std::uint32_t>(v.size());
        v.push_back({l, 1, x});
      } else {
        ++v[owner_[l]].in_c;
      }
    }
  }
  if (p.m >= 0 && p.m <= n_) p.degree = p.incident[static_cast<std::size_t>(p.m)].size();
  return p;
}

bool WorkingMap::connected(int k, Label a, Label b, const Plan& p) {
  const auto& lab = label_[static_cast<std::size_t>(k)];
  std::vector<DartId> seeds;
  for (const auto& [y, t] : p.relinks)
    if (lab[y] == a || lab[y] == b) seeds.push_back(y);
  if (seeds.size() <= 1) return !seeds.empty();

  const std::size_t s = seeds.size();
  std::vector<std::size_t> parent(s);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<DartId>> queue(s);
  std::vector<std::size_t> head(s, 0);
  owner_set_.clear();
  for (std::size_t j = 0; j < s; ++j) {
    owner_set_.set(seeds[j]);
    owner_[seeds[j]] = static_cast<std::uint32_t>(j);
    queue[j].push_back(seeds[j]);
  }
  std::size_t components = s;
  for (;;) {
    for (std::size_t j = 0; j < s; ++j) {
      if (parent[j] != j) continue;
      if (head[j] == queue[j].size()) return false;
      const DartId x = queue[j][head[j]++];
      for (int l = 0; l <= n_; ++l) {
        if (l == k) continue;
        const DartId y = l == p.i ? alpha_new(x) : alpha_[static_cast<std::size_t>(l)][x];
        if (y == x) continue;
        if (lab[y] != a && lab[y] != b) return false;
        const std::size_t r = find(j);
        if (owner_set_.insert(y)) {
          owner_[y] = static_cast<std::uint32_t>(r);
          queue[r].push_back(y);
          continue;
        }
        const std::size_t r2 = find(owner_[y]);
        if (r2 == r) continue;
        std::size_t big = r, small = r2;
        if (queue[big].size() - head[big] < queue[small].size() - head[small]) std::swap(big, small);
        queue[big].insert(queue[big].end(), queue[small].begin() + static_cast<std::ptrdiff_t>(head[small]),
                          queue[small].end());
        queue[small].clear();
        head[small] = 0;
        parent[small] = big;
        if (--components == 1) return true;
      }
    }
  }
}

bool WorkingMap::new_links_signed(const Plan& p, Label keep, Label other, bool flip) const {
  if (!has_signs()) return true;
  const auto& lab = label_[static_cast<std::size_t>(p.m)];
  const auto& sg = sign_[static_cast<std::size_t>(p.m)];
  const int need = p.kind == OpKind::Removal ? -1 : 1;
  auto sign_of = [&](DartId x) { return (flip && lab[x] == other) ? -sg[x] : sg[x]; };
  for (const auto& [y, t] : p.relinks) {
    if (t == y) continue;
    const bool ours = (lab[y] == keep || lab[y] == other) && (lab[t] == keep || lab[t] == other);
    if (ours && sign_of(y) * sign_of(t) != need) return false;
  }
  return true;
}

bool WorkingMap::check_degree_two(Plan& p) {
  if (p.creates_free || p.degree != 2) return false;
  for (int k = 0; k <= n_; ++k) {
    if (k == p.i || k == p.m) continue;
    for (const auto& inc : p.incident[static_cast<std::size_t>(k)]) {
      if (cell_size_[static_cast<std::size_t>(k)][inc.label] == inc.in_c) return false;
      if (!connected(k, inc.label, kNoDart, p)) return false;
    }
  }
  const auto& pair = p.incident[static_cast<std::size_t>(p.m)];
  const auto& sizes = cell_size_[static_cast<std::size_t>(p.m)];
  const std::uint32_t ra = sizes[pair[0].label] - pair[0].in_c;
  const std::uint32_t rb = sizes[pair[1].label] - pair[1].in_c;
  if (ra == 0 || rb == 0) return false;
  if (!connected(p.m, pair[0].label, pair[1].label, p)) return false;

  bool a_absorbed = ra < rb || (ra == rb && pair[0].label > pair[1].label);
  p.absorbed = a_absorbed ? pair[0].label : pair[1].label;
  p.survivor = a_absorbed ? pair[1].label : pair[0].label;
  p.flip_absorbed = false;
  if (has_signs()) {
    const auto& lab = label_[static_cast<std::size_t>(p.m)];
    const auto& sg = sign_[static_cast<std::size_t>(p.m)];
    const int need = p.kind == OpKind::Removal ? -1 : 1;
    for (const auto& [y, t] : p.relinks) {
      if (t != y && lab[y] != lab[t]) {
        p.flip_absorbed = sg[y] * sg[t] != need;
        break;
      }
    }
    if (!new_links_signed(p, p.survivor, p.absorbed, p.flip_absorbed)) return false;
  }
  return true;
}

bool WorkingMap::check_all_preserved(Plan& p) {
  for (int k = 0; k <= n_; ++k) {
    if (k == p.i) continue;
    for (const auto& inc : p.incident[static_cast<std::size_t>(k)]) {
      if (cell_size_[static_cast<std::size_t>(k)][inc.label] == inc.in_c) return false;
      if (!connected(k, inc.label, kNoDart, p)) return false;
    }
  }
  return true;
}

std::vector<CollapseCell> WorkingMap::collapse_set(const Plan& p) {
  const bool removal = p.kind == OpKind::Removal;
  const int q = removal ? p.i - 1 : p.i + 1;
  if (q < 0 || q > n_) return {};
  std::map<std::pair<int, Label>, DartId> all;
  std::set<std::pair<int, Label>> shared;
  std::vector<DartId> darts;
  for (const auto& x : p.incident[static_cast<std::size_t>(q)]) {
    cell_darts(q, x.rep, darts);
    label_marks_.clear();
    std::size_t links = 0;
    for (DartId e : darts)
      if (label_marks_.insert(label_[static_cast<std::size_t>(p.i)][e])) ++links;
    std::vector<std::pair<std::pair<int, Label>, DartId>> part{{{q, x.label}, x.rep}};
    for (DartId e : darts) {
      if (removal) {
        for (int k = 0; k < q; ++k) part.push_back({{k, label_[static_cast<std::size_t>(k)][e]}, e});
      } else {
        for (int k = q + 1; k <= n_; ++k) part.push_back({{k, label_[static_cast<std::size_t>(k)][e]}, e});
      }
    }
    for (const auto& [key, rep] : part) {
      all.emplace(key, rep);
      if (links > 1) shared.insert(key);
    }
  }
  std::vector<CollapseCell> out;
  for (const auto& [key, rep] : all)
    if (!shared.contains(key)) out.push_back({key.first, key.second, rep});
  return out;
}

bool WorkingMap::check_collapse(Plan& p, bool full, bool record_chains) {
  if (p.degree != 1) return false;
  if (full && p.creates_free) return false;
  const auto a = collapse_set(p);
  if (a.empty()) return false;
  if (full) {
    std::set<std::pair<int, Label>> vanishing, expected;
    for (const auto& cc : a) expected.insert({cc.dim, cc.label});
    for (int k = 0; k <= n_; ++k) {
      if (k == p.i) continue;
      for (const auto& inc : p.incident[static_cast<std::size_t>(k)])
        if (cell_size_[static_cast<std::size_t>(k)][inc.label] == inc.in_c) vanishing.insert({k, inc.label});
    }
    if (vanishing != expected) return false;
  }
  std::vector<CollapseCell> cells{{p.i, label_[static_cast<std::size_t>(p.i)][p.darts.front()], p.darts.front()}};
  cells.insert(cells.end(), a.begin(), a.end());
  std::vector<ReductionStep> steps;
  const auto mode = p.kind == OpKind::Removal ? CollapseMode::LowerFree : CollapseMode::UpperFree;
  if (has_signs()) {
    if (!find_collapse(cells, mode, record_chains ? &steps : nullptr)) return false;
  }
  if (full) {
    for (int k = 0; k <= n_; ++k) {
      if (k == p.i) continue;
      for (const auto& inc : p.incident[static_cast<std::size_t>(k)]) {
        if (cell_size_[static_cast<std::size_t>(k)][inc.label] == inc.in_c) continue;
        if (!connected(k, inc.label, kNoDart, p)) return false;
      }
    }
    const Label keep = p.incident[static_cast<std::size_t>(p.m)].front().label;
    if (!new_links_signed(p, keep, kNoDart, false)) return false;
  }
  p.collapse = true;
  p.vanished.clear();
  for (const auto& cc : a) p.vanished.emplace_back(cc.dim, cc.label);
  p.steps = std::move(steps);
  return true;
}

std::vector<std::pair<Label, int>> WorkingMap::boundary_of(int k, DartId d) {
  if (!has_signs()) throw Error(ErrorKind::DimensionMismatch, "incidence needs signs");
  std::vector<std::pair<Label, int>> acc;
  if (k == 0) return acc;
  std::vector<DartId> slice;
  bfs_.clear();
  orbit_into(d, indices_below(k), bfs_, slice);
  part_.clear();
  const auto& sk = sign_[static_cast<std::size_t>(k)];
  const auto& sl = sign_[static_cast<std::size_t>(k - 1)];
  const auto& lab = label_[static_cast<std::size_t>(k - 1)];
  for (DartId x : slice) {
    if (part_.has(x)) continue;
    orbit_into(x, indices_below(k - 1), part_, buf2_);
    const int v = sk[x] * sl[x];
    auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& e) { return e.first == lab[x]; });
    if (it == acc.end())
      acc.emplace_back(lab[x], v);
    else
      it->second += v;
  }
  std::erase_if(acc, [](const auto& e) { return e.second == 0; });
  std::sort(acc.begin(), acc.end());
  return acc;
}

std::vector<std::pair<Label, int>> WorkingMap::coboundary_of(int k, DartId d) {
  std::vector<std::pair<Label, int>> out;
  if (k >= n_) return out;
  const Label self = label_[static_cast<std::size_t>(k)][d];
  std::vector<DartId> darts;
  cell_darts(k, d, darts);
  std::vector<std::pair<Label, DartId>> up;
  label_marks_.clear();
  for (DartId x : darts) {
    const Label l = label_[static_cast<std::size_t>(k + 1)][x];
    if (label_marks_.insert(l)) up.emplace_back(l, x);
  }
  for (const auto& [l, rep] : up) {
    for (const auto& [face, v] : boundary_of(k + 1, rep)) {
      if (face == self) {
        out.emplace_back(l, v);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<std::pair<std::size_t, std::size_t>>> WorkingMap::find_collapse(
    const std::vector<CollapseCell>& cells, CollapseMode mode, std::vector<ReductionStep>* steps) {
  const std::size_t count = cells.size();
  if (count == 0) return std::vector<std::pair<std::size_t, std::size_t>>{};
  if (count % 2 != 0) return std::nullopt;
  std::vector<std::vector<std::pair<Label, int>>> faces(count), cofaces(count);
  std::map<std::pair<int, Label>, std::size_t> pos;
  auto has_dim = [&](int dim) {
    return std::any_of(cells.begin(), cells.end(), [dim](const CollapseCell& c) { return c.dim == dim; });
  };
  for (std::size_t x = 0; x < count; ++x) {
    if (has_dim(cells[x].dim - 1)) faces[x] = boundary_of(cells[x].dim, cells[x].rep);
    if ((mode == CollapseMode::LowerFree || steps != nullptr) && has_dim(cells[x].dim + 1))
      cofaces[x] = coboundary_of(cells[x].dim, cells[x].rep);
    pos[{cells[x].dim, cells[x].label}] = x;
  }
  auto coef = [&](std::size_t u, std::size_t l) {
    for (const auto& [lab, v] : faces[u])
      if (lab == cells[l].label) return v;
    return 0;
  };
  std::vector<char> gone(count, 0);
  auto in_set_gone = [&](int dim, Label l) {
    auto it = pos.find({dim, l});
    return it != pos.end() && gone[it->second];
  };
  auto valid = [&](std::size_t l, std::size_t u) {
    if (gone[l] || gone[u] || cells[u].dim != cells[l].dim + 1) return false;
    const int e = coef(u, l);
    if (e != 1 && e != -1) return false;
    if (mode == CollapseMode::LowerFree) {
      for (const auto& [lab, v] : cofaces[l])
        if (lab != cells[u].label && !in_set_gone(cells[u].dim, lab)) return false;
    } else {
      for (const auto& [lab, v] : faces[u])
        if (lab != cells[l].label && !in_set_gone(cells[l].dim, lab)) return false;
    }
    return true;
  };

  std::vector<std::pair<std::size_t, std::size_t>> firsts;
  for (std::size_t l = 0; l < count; ++l)
    for (std::size_t u = 0; u < count; ++u)
      if (valid(l, u)) firsts.emplace_back(l, u);

  for (const auto& first : firsts) {
    std::fill(gone.begin(), gone.end(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> seq{first};
    gone[first.first] = gone[first.second] = 1;
    bool progress = true;
    while (seq.size() * 2 < count && progress) {
      progress = false;
      for (std::size_t l = 0; l < count && !progress; ++l)
        for (std::size_t u = 0; u < count && !progress; ++u)
          if (valid(l, u)) {
            seq.emplace_back(l, u);
            gone[l] = gone[u] = 1;
            progress = true;
          }
    }
    if (seq.size() * 2 != count) continue;
    if (steps != nullptr) {
      steps->clear();
      std::fill(gone.begin(), gone.end(), 0);
      for (const auto& [l, u] : seq) {
        ReductionStep st;
        st.lower_dim = cells[l].dim;
        st.lower = cells[l].label;
        st.upper = cells[u].label;
        st.incidence = coef(u, l);
        for (const auto& e : faces[u])
          if (!in_set_gone(cells[l].dim, e.first)) st.upper_boundary.push_back(e);
        for (const auto& e : cofaces[l])
          if (!in_set_gone(cells[u].dim, e.first)) st.lower_coboundary.push_back(e);
        steps->push_back(std::move(st));
        gone[l] = gone[u] = 1;
      }
    }
    return seq;
  }
  return std::nullopt;
}

OperationRecord WorkingMap::apply(Plan& p, bool record_chains) {
  OperationRecord r;
  r.kind = p.kind;
  r.dim = p.i;
  r.collapse = p.collapse;
  r.cell_darts = p.darts;
  r.cell = label_[static_cast<std::size_t>(p.i)][p.darts.front()];
  r.survivor = p.survivor;
  r.absorbed = p.absorbed;
  r.vanished = p.vanished;

  const auto m = static_cast<std::size_t>(p.m);
  DartId absorbed_rep = kNoDart, survivor_in_c = kNoDart, absorbed_in_c = kNoDart;
  if (p.absorbed != kNoDart) {
    for (const auto& [y, t] : p.relinks)
      if (label_[m][y] == p.absorbed) {
        absorbed_rep = y;
        break;
      }
    for (const auto& inc : p.incident[m]) {
      if (inc.label == p.absorbed) absorbed_in_c = inc.rep;
      if (inc.label == p.survivor) survivor_in_c = inc.rep;
    }
  }

  if (record_chains && has_signs()) {
    if (p.collapse) {
      r.steps = p.steps;
      r.chains_recorded = true;
    } else if (p.absorbed != kNoDart) {
      const int i = p.i;
      auto local = [&](int hi, DartId x) { return sign(hi, x) * sign(hi - 1, x); };
      ReductionStep st;
      if (p.kind == OpKind::Removal) {
        st.lower_dim = i;
        st.lower = r.cell;
        st.upper = p.absorbed;
        st.incidence = local(i + 1, absorbed_in_c);
        st.upper_boundary = boundary_of(i + 1, absorbed_in_c);
        st.lower_coboundary = {{p.survivor, local(i + 1, survivor_in_c)}, {p.absorbed, st.incidence}};
      } else {
        st.lower_dim = i - 1;
        st.lower = p.absorbed;
        st.upper = r.cell;
        st.incidence = local(i, absorbed_in_c);
        st.upper_boundary = {{p.absorbed, st.incidence}, {p.survivor, local(i, survivor_in_c)}};
        st.lower_coboundary = coboundary_of(i - 1, absorbed_in_c);
      }
      std::sort(st.lower_coboundary.begin(), st.lower_coboundary.end());
      std::sort(st.upper_boundary.begin(), st.upper_boundary.end());
      r.steps.push_back(std::move(st));
      r.chains_recorded = true;
    }
  }

  std::vector<DartId> absorbed_darts;
  if (absorbed_rep != kNoDart) {
    cell_darts(p.m, absorbed_rep, buf_);
    for (DartId x : buf_)
      if (!in_c(x)) absorbed_darts.push_back(x);
  }

  auto& ai = alpha_[static_cast<std::size_t>(p.i)];
  for (const auto& [y, t] : p.relinks) ai[y] = t;
  for (DartId x : p.darts) {
    alive_[x] = 0;
    --alive_count_;
    for (std::size_t k = 0; k < label_.size(); ++k) --cell_size_[k][label_[k][x]];
  }
  if (p.absorbed != kNoDart) {
    for (DartId x : absorbed_darts) {
      label_[m][x] = p.survivor;
      if (p.flip_absorbed && has_signs()) sign_[m][x] = static_cast<std::int8_t>(-sign_[m][x]);
    }
    cell_size_[m][p.survivor] += cell_size_[m][p.absorbed];
    cell_size_[m][p.absorbed] = 0;
  }
  return r;
}

Snapshot WorkingMap::snapshot() const {
  Snapshot s;
  std::vector<DartId> fresh(size_, kNoDart);
  for (DartId d = 0; d < size_; ++d)
    if (alive(d)) {
      fresh[d] = static_cast<DartId>(s.to_initial.size());
      s.to_initial.push_back(d);
    }
  const std::size_t count = s.to_initial.size();
  const auto levels = static_cast<std::size_t>(n_ + 1);
  std::vector<std::vector<DartId>> tables(levels, std::vector<DartId>(count));
  s.labels.assign(levels, std::vector<Label>(count));
  if (has_signs()) s.map.sg.assign(levels, std::vector<std::int8_t>(count));
  for (std::size_t k = 0; k < levels; ++k) {
    for (std::size_t j = 0; j < count; ++j) {
      const DartId d = s.to_initial[j];
      const DartId t = fresh[alpha_[k][d]];
      if (t == kNoDart)
        throw Error(ErrorKind::LogMismatch, "dart " + std::to_string(d) + " is linked to a deleted dart");
      tables[k][j] = t;
      s.labels[k][j] = label_[k][d];
      if (has_signs()) s.map.sg[k][j] = sign_[k][d];
    }
  }
  s.map.base = GMap(std::move(tables));
  return s;
}

}  // namespace gmh::detail
