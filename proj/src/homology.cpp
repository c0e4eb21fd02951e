#include "gmh/homology.hpp"

#include <algorithm>

namespace gmh {

std::optional<std::uint32_t> ChainComplex::index_of(int p, Label label) const {
  if (p < 0 || p > dimension) return std::nullopt;
  const auto& idx = label_index[static_cast<std::size_t>(p)];
  auto it = idx.find(label);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

ChainComplex build_chain_complex(const SignedGMap& s, const std::vector<std::vector<Label>>* labels) {
  const GMap& g = s.base;
  const int n = g.dimension();
  const auto cat = CellCatalog::build(g);
  ChainComplex cc;
  cc.dimension = n;
  cc.basis.resize(static_cast<std::size_t>(n) + 1);
  cc.labels.resize(static_cast<std::size_t>(n) + 1);
  cc.label_index.resize(static_cast<std::size_t>(n) + 1);
  cc.boundary.resize(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) {
    const auto pu = static_cast<std::size_t>(p);
    for (const auto& c : cat.cells(p)) {
      cc.basis[pu].push_back(c.canonical());
      const Label lab = labels ? (*labels)[pu][c.canonical()] : c.canonical();
      cc.label_index[pu].emplace(lab, static_cast<std::uint32_t>(cc.labels[pu].size()));
      cc.labels[pu].push_back(lab);
    }
  }
  cc.boundary[0].rows = 0;
  cc.boundary[0].columns.resize(cc.size(0));

  OrbitScratch slice_scratch(g.num_darts());
  OrbitScratch part_scratch(g.num_darts());
  std::vector<std::uint32_t> seen(g.num_darts(), 0);
  std::uint32_t stamp = 0;
  std::vector<DartId> slice, part;
  std::unordered_map<std::uint32_t, std::int64_t> acc;
  for (int p = 1; p <= n; ++p) {
    auto& m = cc.boundary[static_cast<std::size_t>(p)];
    m.rows = cc.size(p - 1);
    m.columns.resize(cc.size(p));
    for (std::size_t j = 0; j < cc.size(p); ++j) {
      ++stamp;
      acc.clear();
      slice_scratch.orbit(g, cc.basis[static_cast<std::size_t>(p)][j], indices_below(p), slice);
      for (DartId x : slice) {
        if (seen[x] == stamp) continue;
        part_scratch.orbit(g, x, indices_below(p - 1), part);
        for (DartId y : part) seen[y] = stamp;
        acc[cat.cell_index(p - 1, x)] += s.sign(p, x) * s.sign(p - 1, x);
      }
      auto& col = m.columns[j];
      for (const auto& [r, v] : acc)
        if (v != 0) col.emplace_back(r, v);
      std::sort(col.begin(), col.end());
    }
  }
  if (auto w = boundary_square_witness(cc)) {
    throw Error(ErrorKind::BoundaryNotNilpotent,
                "boundary of boundary is not zero on the " + std::to_string(w->first) + "-cell at dart " +
                    std::to_string(cc.basis[static_cast<std::size_t>(w->first)][w->second]));
  }
  return cc;
}

std::optional<std::pair<int, std::size_t>> boundary_square_witness(const ChainComplex& cc) {
  for (int p = 2; p <= cc.dimension; ++p) {
    const auto prod = multiply(cc.boundary[static_cast<std::size_t>(p - 1)], cc.boundary[static_cast<std::size_t>(p)]);
    for (std::size_t j = 0; j < prod.cols(); ++j)
      if (!prod.columns[j].empty()) return std::make_pair(p, j);
  }
  return std::nullopt;
}

namespace {

std::vector<mpz_class> column_of(const IntMatrix& m, std::size_t j) {
  std::vector<mpz_class> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m(i, j);
  return out;
}

}  // namespace

HomologyResult homology(const ChainComplex& cc, bool with_generators) {
  const int n = cc.dimension;
  HomologyResult out;
  if (n < 0) return out;
  const auto nu = static_cast<std::size_t>(n) + 1;
  out.betti.assign(nu, 0);
  out.torsion.resize(nu);
  out.generators.resize(nu);
  for (int p = 0; p <= n; ++p) {
    const auto pu = static_cast<std::size_t>(p);
    const std::size_t sp = cc.size(p);
    // Kernel of the boundary on p-chains: last columns of V.
    std::size_t rank_p = 0;
    IntMatrix V, Vinv;
    if (p == 0 || cc.size(p - 1) == 0) {
      V = IntMatrix::identity(sp);
      Vinv = IntMatrix::identity(sp);
    } else {
      auto snf = smith_normal_form(cc.boundary[pu].dense());
      rank_p = snf.rank;
      V = std::move(snf.V);
      Vinv = std::move(snf.Vinv);
    }
    const std::size_t k = sp - rank_p;
    IntMatrix Z(sp, k);
    for (std::size_t i = 0; i < sp; ++i)
      for (std::size_t j = 0; j < k; ++j) Z(i, j) = V(i, rank_p + j);
    // Boundaries of (p+1)-chains in the coordinates of Z.
    std::size_t next_cols = p < n ? cc.size(p + 1) : 0;
    IntMatrix K(k, next_cols);
    if (next_cols > 0 && k > 0) {
      const IntMatrix img = Vinv * cc.boundary[pu + 1].dense();
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < next_cols; ++j) K(i, j) = img(rank_p + i, j);
    }
    auto snf = smith_normal_form(K);
    out.betti[pu] = static_cast<long>(k - snf.rank);
    for (std::size_t j = 0; j < snf.rank; ++j)
      if (snf.diagonal[j] > 1) out.torsion[pu].push_back(snf.diagonal[j]);
    if (!with_generators) continue;
    const IntMatrix W = Z * snf.Uinv;
    for (std::size_t j = 0; j < k; ++j) {
      if (j < snf.rank && snf.diagonal[j] == 1) continue;
      Generator gen;
      gen.chain = column_of(W, j);
      gen.order = j < snf.rank ? snf.diagonal[j] : mpz_class(0);
      out.generators[pu].push_back(std::move(gen));
    }
  }
  return out;
}

HomologyResult homology_invariants(const ChainComplex& cc) {
  const int n = cc.dimension;
  HomologyResult out;
  if (n < 0) return out;
  const auto nu = static_cast<std::size_t>(n) + 1;
  std::vector<RankProfile> prof(nu + 1);
  for (int p = 1; p <= n; ++p) prof[static_cast<std::size_t>(p)] = sparse_rank_profile(cc.boundary[static_cast<std::size_t>(p)]);
  out.betti.assign(nu, 0);
  out.torsion.resize(nu);
  out.generators.resize(nu);
  for (int p = 0; p <= n; ++p) {
    const auto pu = static_cast<std::size_t>(p);
    out.betti[pu] = static_cast<long>(cc.size(p)) - static_cast<long>(prof[pu].rank) -
                    static_cast<long>(prof[pu + 1].rank);
    out.torsion[pu] = prof[pu + 1].torsion;
  }
  return out;
}

std::vector<long> betti_numbers(const GMap& g) {
  const auto s = assign_signs(g);
  return homology_invariants(build_chain_complex(s)).betti;
}

LabeledChain to_labeled(const ChainComplex& cc, int p, const std::vector<mpz_class>& chain) {
  LabeledChain out;
  const auto& labels = cc.labels[static_cast<std::size_t>(p)];
  for (std::size_t j = 0; j < chain.size(); ++j)
    if (chain[j] != 0) out[labels[j]] = chain[j];
  return out;
}

std::vector<mpz_class> to_dense(const ChainComplex& cc, int p, const LabeledChain& chain) {
  std::vector<mpz_class> out(cc.size(p));
  for (const auto& [lab, v] : chain) {
    if (v == 0) continue;
    auto idx = cc.index_of(p, lab);
    if (!idx) {
      throw Error(ErrorKind::LogMismatch, "chain refers to a " + std::to_string(p) + "-cell labelled " +
                                              std::to_string(lab) + " that is not in the complex");
    }
    out[*idx] = v;
  }
  return out;
}

std::vector<mpz_class> apply_boundary(const ChainComplex& cc, int p, const std::vector<mpz_class>& chain) {
  if (p == 0) return {};
  const auto& m = cc.boundary[static_cast<std::size_t>(p)];
  std::vector<mpz_class> out(m.rows);
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (chain[j] == 0) continue;
    for (const auto& [r, v] : m.columns[j]) out[r] += chain[j] * static_cast<long>(v);
  }
  return out;
}

namespace {

void require_chains(const OperationLog& log) {
  for (const auto& rec : log.records) {
    if (!rec.chains_recorded) {
      throw Error(ErrorKind::LogMismatch, "operation log was recorded without chain data");
    }
  }
}

void add_to(LabeledChain& z, Label lab, const mpz_class& v) {
  if (v == 0) return;
  auto [it, inserted] = z.emplace(lab, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) z.erase(it);
  }
}

}  // namespace

LabeledChain pull_back(const OperationLog& log, int p, LabeledChain z) {
  require_chains(log);
  for (auto rit = log.records.rbegin(); rit != log.records.rend(); ++rit) {
    for (auto sit = rit->steps.rbegin(); sit != rit->steps.rend(); ++sit) {
      const auto& st = *sit;
      if (p != st.lower_dim + 1) continue;
      mpz_class s = 0;
      for (const auto& [x, inc] : st.lower_coboundary) {
        if (x == st.upper) continue;
        auto it = z.find(x);
        if (it != z.end()) s += it->second * inc;
      }
      add_to(z, st.upper, -s * st.incidence);
    }
  }
  return z;
}

LabeledChain push_forward(const OperationLog& log, int p, LabeledChain z) {
  require_chains(log);
  for (const auto& rec : log.records) {
    for (const auto& st : rec.steps) {
      if (p == st.lower_dim + 1) {
        z.erase(st.upper);
      } else if (p == st.lower_dim) {
        auto it = z.find(st.lower);
        if (it == z.end()) continue;
        const mpz_class coef = it->second;
        z.erase(it);
        for (const auto& [y, inc] : st.upper_boundary) {
          if (y == st.lower) continue;
          add_to(z, y, -coef * st.incidence * inc);
        }
      }
    }
  }
  return z;
}

std::vector<std::vector<std::vector<mpz_class>>> project_generators(const HomologyResult& result,
                                                                     const ChainComplex& simplified,
                                                                     const OperationLog& log,
                                                                     const ChainComplex& original) {
  if (simplified.dimension != original.dimension || log.dimension != original.dimension) {
    throw Error(ErrorKind::LogMismatch, "complexes and log disagree on the dimension");
  }
  std::vector<std::vector<std::vector<mpz_class>>> out(result.generators.size());
  for (std::size_t p = 0; p < result.generators.size(); ++p) {
    for (const auto& gen : result.generators[p]) {
      auto z = to_labeled(simplified, static_cast<int>(p), gen.chain);
      z = pull_back(log, static_cast<int>(p), std::move(z));
      out[p].push_back(to_dense(original, static_cast<int>(p), z));
    }
  }
  return out;
}

std::size_t column_rank(const std::vector<std::vector<mpz_class>>& columns, std::size_t rows) {
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) a[i][j] = columns[j][i];
  std::size_t rank = 0;
  for (std::size_t j = 0; j < columns.size() && rank < rows; ++j) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][j] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][j] == 0) continue;
      const mpq_class f = a[i][j] / a[rank][j];
      for (std::size_t k = j; k < columns.size(); ++k) a[i][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace gmh
