#include "gmh/simplify.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "working_map.hpp"

namespace gmh {

using detail::Plan;
using detail::WorkingMap;

namespace {

void check_cell(const GMap& g, const Cell& c) {
  if (c.dim < 0 || c.dim > g.dimension() || c.darts.empty())
    throw Error(ErrorKind::OutOfRange, "cell does not belong to the map");
  if (c.darts.back() >= g.num_darts()) throw Error(ErrorKind::OutOfRange, "cell dart out of range");
}

bool commute_on(const GMap& g, const Cell& c, int a, int b) {
  return std::all_of(c.darts.begin(), c.darts.end(),
                     [&](DartId x) { return g.alpha(a, g.alpha(b, x)) == g.alpha(b, g.alpha(a, x)); });
}

std::pair<GMap, OperationRecord> single(const GMap& g, const Cell& c, OpKind kind) {
  WorkingMap w(g, nullptr);
  Plan p = w.gather(kind, c.dim, c.canonical());
  if (p.degree == 2 && !w.check_degree_two(p)) p.survivor = p.absorbed = kNoDart;
  OperationRecord r = w.apply(p, false);
  Snapshot s = w.snapshot();
  r.dart_index_map.assign(g.num_darts(), kNoDart);
  for (std::size_t j = 0; j < s.to_initial.size(); ++j) r.dart_index_map[s.to_initial[j]] = static_cast<DartId>(j);
  return {std::move(s.map.base), std::move(r)};
}

std::vector<CellRef> around(const GMap& g, const Cell& c, bool below) {
  check_cell(g, c);
  const auto cat = CellCatalog::build(g);
  std::set<CellRef> out{{c.dim, c.canonical()}};
  for (DartId d : c.darts) {
    const int lo = below ? 0 : c.dim + 1;
    const int hi = below ? c.dim - 1 : g.dimension();
    for (int k = lo; k <= hi; ++k) out.insert({k, cat.cells(k)[cat.cell_index(k, d)].canonical()});
  }
  return {out.begin(), out.end()};
}

class Runner {
 public:
  Runner(WorkingMap& w, OperationLog& log, bool record, const SimplifyOptions* options)
      : w_(w), log_(log), record_(record), options_(options) {}

  void pass(OpKind kind, int i) {
    std::vector<char> seen(w_.capacity(), 0);
    std::vector<DartId> stack;
    for (DartId d = 0; d < w_.capacity(); ++d) {
      if (!w_.alive(d)) continue;
      const Label l = w_.label(i, d);
      if (seen[l]) continue;
      seen[l] = 1;
      Plan p = w_.gather(kind, i, d);
      if (!w_.allowed(p)) continue;
      if (p.degree == 2) {
        if (w_.check_degree_two(p)) emit(p);
        continue;
      }
      if (p.degree != 1 || !w_.check_collapse(p, true, record_)) continue;
      push_neighbours(p, stack);
      emit(p);
      while (!stack.empty()) {
        const DartId x = stack.back();
        stack.pop_back();
        if (!w_.alive(x)) continue;
        Plan q = w_.gather(kind, i, x);
        if (!w_.allowed(q) || q.degree != 1 || !w_.check_collapse(q, true, record_)) continue;
        push_neighbours(q, stack);
        emit(q);
      }
    }
  }

 private:
  static void push_neighbours(const Plan& p, std::vector<DartId>& stack) {
    for (const auto& link : p.relinks) stack.push_back(link.first);
  }

  void emit(Plan& p) {
    log_.records.push_back(w_.apply(p, record_));
    if (options_ != nullptr && options_->on_step)
      options_->on_step(log_.records.size() - 1, log_.records.back(), [this] { return w_.snapshot(); });
  }

  WorkingMap& w_;
  OperationLog& log_;
  bool record_;
  const SimplifyOptions* options_;
};

void begin(const WorkingMap& w, OperationLog& log) {
  if (!log.records.empty() || log.initial_darts != 0) return;
  log.dimension = w.dimension();
  log.initial_darts = w.capacity();
  log.initial_cells = w.cell_counts();
}

SignedGMap finish(const WorkingMap& w, OperationLog& log) {
  Snapshot s = w.snapshot();
  log.final_to_initial = std::move(s.to_initial);
  log.final_labels = std::move(s.labels);
  log.final_cells = w.cell_counts();
  return std::move(s.map);
}

SignedGMap one_pass(const SignedGMap& s, int i, OperationLog& log, bool record_chains, OpKind kind) {
  WorkingMap w(s);
  begin(w, log);
  Runner(w, log, record_chains, nullptr).pass(kind, i);
  return finish(w, log);
}

}  // namespace

bool is_removable(const GMap& g, const Cell& c) {
  check_cell(g, c);
  const int n = g.dimension();
  if (c.dim >= n) return false;
  return c.dim == n - 1 || commute_on(g, c, c.dim + 1, c.dim + 2);
}

bool is_contractible(const GMap& g, const Cell& c) {
  check_cell(g, c);
  if (c.dim < 1) return false;
  return c.dim == 1 || commute_on(g, c, c.dim - 1, c.dim - 2);
}

std::pair<GMap, OperationRecord> remove_cell(const GMap& g, const Cell& c) {
  if (!is_removable(g, c))
    throw Error(ErrorKind::NotRemovable, "the " + std::to_string(c.dim) + "-cell of dart " +
                                             std::to_string(c.canonical()) + " is not removable");
  return single(g, c, OpKind::Removal);
}

std::pair<GMap, OperationRecord> contract_cell(const GMap& g, const Cell& c) {
  if (!is_contractible(g, c))
    throw Error(ErrorKind::NotContractible, "the " + std::to_string(c.dim) + "-cell of dart " +
                                                std::to_string(c.canonical()) + " is not contractible");
  return single(g, c, OpKind::Contraction);
}

std::vector<CellRef> closure(const GMap& g, const Cell& c) { return around(g, c, true); }
std::vector<CellRef> coclosure(const GMap& g, const Cell& c) { return around(g, c, false); }

std::optional<std::vector<std::pair<CellRef, CellRef>>> is_collapsible(const SignedGMap& s,
                                                                      const std::vector<CellRef>& cells,
                                                                      CollapseMode mode) {
  WorkingMap w(s);
  std::vector<detail::CollapseCell> set;
  for (const auto& c : cells) {
    if (c.dim < 0 || c.dim > w.dimension() || c.canonical >= w.capacity())
      throw Error(ErrorKind::OutOfRange, "cell does not belong to the map");
    set.push_back({c.dim, w.label(c.dim, c.canonical), c.canonical});
  }
  auto seq = w.find_collapse(set, mode, nullptr);
  if (!seq) return std::nullopt;
  std::vector<std::pair<CellRef, CellRef>> out;
  for (const auto& [l, u] : *seq)
    out.push_back({{set[l].dim, set[l].label}, {set[u].dim, set[u].label}});
  return out;
}

bool is_dangling(const SignedGMap& s, const Cell& c) {
  check_cell(s.base, c);
  if (c.dim < 1 || c.dim >= s.base.dimension()) return false;
  WorkingMap w(s);
  Plan p = w.gather(OpKind::Removal, c.dim, c.canonical(), false);
  return w.check_collapse(p, false, false);
}

bool is_codangling(const SignedGMap& s, const Cell& c) {
  check_cell(s.base, c);
  if (c.dim < 1 || c.dim >= s.base.dimension()) return false;
  WorkingMap w(s);
  Plan p = w.gather(OpKind::Contraction, c.dim, c.canonical(), false);
  return w.check_collapse(p, false, false);
}

bool cells_preserved(const GMap& g, const Cell& c, OpKind kind) {
  check_cell(g, c);
  WorkingMap w(g, nullptr);
  Plan p = w.gather(kind, c.dim, c.canonical());
  if (p.degree == 2) return w.check_degree_two(p);
  return w.check_all_preserved(p);
}

SignedGMap remove_i_cells(const SignedGMap& s, int i, OperationLog& log, bool record_chains) {
  return one_pass(s, i, log, record_chains, OpKind::Removal);
}

SignedGMap contract_i_cells(const SignedGMap& s, int i, OperationLog& log, bool record_chains) {
  return one_pass(s, i, log, record_chains, OpKind::Contraction);
}

SimplifyResult simplify(const SignedGMap& s, const SimplifyOptions& options) {
  WorkingMap w(s);
  SimplifyResult res;
  begin(w, res.log);
  Runner run(w, res.log, options.record_chains, &options);
  const int n = w.dimension();
  auto removals = [&] {
    if (!options.removals) return;
    for (int i = n - 1; i >= 0; --i) run.pass(OpKind::Removal, i);
  };
  auto contractions = [&] {
    if (!options.contractions) return;
    for (int i = 1; i <= n; ++i) run.pass(OpKind::Contraction, i);
  };
  if (options.contraction_first) {
    contractions();
    removals();
  } else {
    removals();
    contractions();
  }
  res.map = finish(w, res.log);
  return res;
}

SimplifyResult simplify(const GMap& g, const SimplifyOptions& options) { return simplify(assign_signs(g), options); }

GMap replay(const GMap& initial, const OperationLog& log) {
  if (log.initial_darts != 0 && log.initial_darts != initial.num_darts())
    throw Error(ErrorKind::LogMismatch, "log was recorded on a map with " + std::to_string(log.initial_darts) + " darts");
  WorkingMap w(initial, nullptr);
  for (std::size_t k = 0; k < log.records.size(); ++k) {
    const auto& rec = log.records[k];
    const std::string where = "record " + std::to_string(k);
    if (rec.cell_darts.empty() || rec.cell_darts.front() >= w.capacity() || !w.alive(rec.cell_darts.front()))
      throw Error(ErrorKind::LogMismatch, where + " names a dart that is not in the map");
    Plan p = w.gather(rec.kind, rec.dim, rec.cell_darts.front());
    if (p.darts != rec.cell_darts) throw Error(ErrorKind::LogMismatch, where + " does not match the cell in the map");
    p.survivor = rec.survivor;
    p.absorbed = rec.absorbed;
    w.apply(p, false);
  }
  return w.snapshot().map.base;
}

}  // namespace gmh
