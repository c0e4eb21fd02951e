#include <algorithm>
#include <unordered_map>

#include "gmh/homology.hpp"

namespace gmh {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& x) { return x == 0; });
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product of incompatible shapes");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpz_class& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j) != 0) out(i, j) += x * b(k, j);
      }
    }
  }
  return out;
}

mpz_class determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Classic Smith reduction with a minimal-magnitude pivot. When Track is set
// every operation is mirrored on U, Uinv (rows) and V, Vinv (columns).
template <bool Track>
struct Reducer {
  IntMatrix D, U, Uinv, V, Vinv;
  std::size_t m, n;

  explicit Reducer(const IntMatrix& a) : D(a), m(a.rows()), n(a.cols()) {
    if constexpr (Track) {
      U = IntMatrix::identity(m);
      Uinv = IntMatrix::identity(m);
      V = IntMatrix::identity(n);
      Vinv = IntMatrix::identity(n);
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(D(a, j), D(b, j));
    if constexpr (Track) {
      for (std::size_t j = 0; j < m; ++j) std::swap(U(a, j), U(b, j));
      for (std::size_t i = 0; i < m; ++i) std::swap(Uinv(i, a), Uinv(i, b));
    }
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(D(i, a), D(i, b));
    if constexpr (Track) {
      for (std::size_t i = 0; i < n; ++i) std::swap(V(i, a), V(i, b));
      for (std::size_t j = 0; j < n; ++j) std::swap(Vinv(a, j), Vinv(b, j));
    }
  }

  // row r -= q * row t
  void sub_row(std::size_t r, std::size_t t, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < n; ++j)
      if (D(t, j) != 0) D(r, j) -= q * D(t, j);
    if constexpr (Track) {
      for (std::size_t j = 0; j < m; ++j)
        if (U(t, j) != 0) U(r, j) -= q * U(t, j);
      for (std::size_t i = 0; i < m; ++i)
        if (Uinv(i, r) != 0) Uinv(i, t) += q * Uinv(i, r);
    }
  }

  // col c -= q * col t
  void sub_col(std::size_t c, std::size_t t, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m; ++i)
      if (D(i, t) != 0) D(i, c) -= q * D(i, t);
    if constexpr (Track) {
      for (std::size_t i = 0; i < n; ++i)
        if (V(i, t) != 0) V(i, c) -= q * V(i, t);
      for (std::size_t j = 0; j < n; ++j)
        if (Vinv(c, j) != 0) Vinv(t, j) += q * Vinv(c, j);
    }
  }

  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < n; ++j) D(r, j) = -D(r, j);
    if constexpr (Track) {
      for (std::size_t j = 0; j < m; ++j) U(r, j) = -U(r, j);
      for (std::size_t i = 0; i < m; ++i) Uinv(i, r) = -Uinv(i, r);
    }
  }

  bool min_entry(std::size_t t, std::size_t& bi, std::size_t& bj) const {
    bool found = false;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (D(i, j) == 0) continue;
        if (!found || abs(D(i, j)) < abs(D(bi, bj))) {
          bi = i;
          bj = j;
          found = true;
          if (abs(D(i, j)) == 1) return true;
        }
      }
    }
    return found;
  }

  std::size_t run() {
    std::size_t t = 0;
    const std::size_t lim = std::min(m, n);
    for (; t < lim; ++t) {
      std::size_t pi = t, pj = t;
      if (!min_entry(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (D(i, t) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
          sub_row(i, t, q);
          if (D(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (D(t, j) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
          sub_col(j, t, q);
          if (D(t, j) != 0) clean = false;
        }
        if (!clean) {
          // Bring the smallest leftover of row/column t to the pivot.
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < m; ++i)
            if (D(i, t) != 0 && abs(D(i, t)) < abs(D(bi, bj))) { bi = i; bj = t; }
          for (std::size_t j = t + 1; j < n; ++j)
            if (D(t, j) != 0 && abs(D(t, j)) < abs(D(bi, bj))) { bi = t; bj = j; }
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i) {
          for (std::size_t j = t + 1; j < n; ++j) {
            if (D(i, j) != 0 && !mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
              sub_row(t, i, -1);
              divides = false;
              break;
            }
          }
        }
        if (divides) break;
      }
      if (D(t, t) < 0) negate_row(t);
    }
    return t;
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  Reducer<true> r(a);
  SmithForm out;
  out.rank = r.run();
  const std::size_t lim = std::min(a.rows(), a.cols());
  for (std::size_t k = 0; k < lim; ++k) out.diagonal.push_back(r.D(k, k));
  out.D = std::move(r.D);
  out.U = std::move(r.U);
  out.Uinv = std::move(r.Uinv);
  out.V = std::move(r.V);
  out.Vinv = std::move(r.Vinv);
  return out;
}

std::vector<mpz_class> invariant_factors(const IntMatrix& a) {
  Reducer<false> r(a);
  r.run();
  std::vector<mpz_class> out;
  const std::size_t lim = std::min(a.rows(), a.cols());
  for (std::size_t k = 0; k < lim; ++k) out.push_back(r.D(k, k));
  return out;
}

IntMatrix SparseMatrix::dense() const {
  IntMatrix out(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [r, v] : columns[j]) out(r, j) = static_cast<long>(v);
  return out;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows) throw Error(ErrorKind::DimensionMismatch, "sparse product of incompatible shapes");
  SparseMatrix out;
  out.rows = a.rows;
  out.columns.resize(b.cols());
  std::unordered_map<std::uint32_t, std::int64_t> acc;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    acc.clear();
    for (const auto& [k, v] : b.columns[j])
      for (const auto& [r, w] : a.columns[k]) acc[r] += v * w;
    auto& col = out.columns[j];
    for (const auto& [r, v] : acc)
      if (v != 0) col.emplace_back(r, v);
    std::sort(col.begin(), col.end());
  }
  return out;
}

namespace {

bool checked_axpy(std::int64_t x, std::int64_t f, std::int64_t y, std::int64_t& out) {
  // out = x - f * y
  std::int64_t prod;
  if (__builtin_mul_overflow(f, y, &prod)) return false;
  return !__builtin_sub_overflow(x, prod, &out);
}

}  // namespace

RankProfile sparse_rank_profile(const SparseMatrix& m) {
  RankProfile out;
  const std::size_t ncols = m.cols();
  std::vector<SparseColumn> cols = m.columns;
  std::vector<std::vector<std::uint32_t>> rows(m.rows);
  for (std::uint32_t j = 0; j < ncols; ++j)
    for (const auto& [r, v] : cols[j]) rows[r].push_back(j);
  std::vector<std::uint8_t> col_dead(ncols, 0);
  std::vector<std::uint8_t> row_dead(m.rows, 0);

  auto entry = [&](std::uint32_t j, std::uint32_t r) -> std::int64_t {
    const auto& c = cols[j];
    auto it = std::lower_bound(c.begin(), c.end(), std::make_pair(r, std::int64_t{INT64_MIN}));
    return (it != c.end() && it->first == r) ? it->second : 0;
  };

  bool overflow = false;
  SparseColumn merged;
  bool progress = true;
  while (progress && !overflow) {
    progress = false;
    std::vector<std::uint32_t> order;
    for (std::uint32_t j = 0; j < ncols; ++j)
      if (!col_dead[j] && !cols[j].empty()) order.push_back(j);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return cols[a].size() < cols[b].size(); });
    for (std::uint32_t p : order) {
      if (col_dead[p] || cols[p].empty()) continue;
      std::uint32_t best_row = 0;
      std::size_t best_len = SIZE_MAX;
      std::int64_t a = 0;
      for (const auto& [r, v] : cols[p]) {
        if ((v == 1 || v == -1) && rows[r].size() < best_len) {
          best_len = rows[r].size();
          best_row = r;
          a = v;
        }
      }
      if (best_len == SIZE_MAX) continue;
      const std::uint32_t r = best_row;
      std::vector<std::uint32_t> touching = rows[r];
      std::sort(touching.begin(), touching.end());
      touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
      for (std::uint32_t k : touching) {
        if (k == p || col_dead[k]) continue;
        const std::int64_t v = entry(k, r);
        if (v == 0) continue;
        const std::int64_t f = v * a;
        merged.clear();
        auto ik = cols[k].begin();
        auto ip = cols[p].begin();
        while (ik != cols[k].end() || ip != cols[p].end()) {
          if (ip == cols[p].end() || (ik != cols[k].end() && ik->first < ip->first)) {
            merged.push_back(*ik++);
          } else if (ik == cols[k].end() || ip->first < ik->first) {
            std::int64_t val;
            if (!checked_axpy(0, f, ip->second, val)) { overflow = true; break; }
            merged.emplace_back(ip->first, val);
            rows[ip->first].push_back(k);
            ++ip;
          } else {
            std::int64_t val;
            if (!checked_axpy(ik->second, f, ip->second, val)) { overflow = true; break; }
            if (val != 0) merged.emplace_back(ik->first, val);
            ++ik;
            ++ip;
          }
        }
        if (overflow) break;
        cols[k].swap(merged);
      }
      if (overflow) break;
      col_dead[p] = 1;
      row_dead[r] = 1;
      rows[r].clear();
      cols[p].clear();
      ++out.rank;
      progress = true;
    }
  }

  // Whatever remains has no unit entry (or overflowed): finish densely.
  std::vector<std::uint32_t> live_cols;
  std::vector<std::int64_t> row_pos(m.rows, -1);
  std::size_t live_rows = 0;
  for (std::uint32_t j = 0; j < ncols; ++j) {
    if (col_dead[j] || cols[j].empty()) continue;
    live_cols.push_back(j);
    for (const auto& [r, v] : cols[j])
      if (row_pos[r] < 0) row_pos[r] = static_cast<std::int64_t>(live_rows++);
  }
  if (!live_cols.empty()) {
    IntMatrix rest(live_rows, live_cols.size());
    for (std::size_t c = 0; c < live_cols.size(); ++c)
      for (const auto& [r, v] : cols[live_cols[c]]) rest(static_cast<std::size_t>(row_pos[r]), c) = static_cast<long>(v);
    for (const auto& d : invariant_factors(rest)) {
      if (d == 0) continue;
      ++out.rank;
      if (d > 1) out.torsion.push_back(d);
    }
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

}  // namespace gmh
