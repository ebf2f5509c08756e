#include "tdi/simplex.hpp"

#include <stdexcept>

namespace tdi {

namespace {

struct Tableau {
  size_t m, n;                             // rows, structural + artificial columns
  std::vector<std::vector<mpq_class>> T;   // m rows of n+1 (last: rhs)
  std::vector<mpq_class> d;                // reduced costs, n+1 (last: -value)
  std::vector<size_t> basis;

  void pivot(size_t r, size_t c) {
    mpq_class inv = 1 / T[r][c];
    for (auto& v : T[r]) v *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || T[i][c] == 0) continue;
      mpq_class f = T[i][c];
      for (size_t j = 0; j <= n; ++j)
        if (T[r][j] != 0) T[i][j] -= f * T[r][j];
    }
    if (d[c] != 0) {
      mpq_class f = d[c];
      for (size_t j = 0; j <= n; ++j)
        if (T[r][j] != 0) d[j] -= f * T[r][j];
    }
    basis[r] = c;
  }

  void set_costs(const std::vector<mpq_class>& cost) {
    d.assign(n + 1, 0);
    for (size_t j = 0; j < n; ++j) d[j] = cost[j];
    for (size_t i = 0; i < m; ++i) {
      const mpq_class& cb = cost[basis[i]];
      if (cb == 0) continue;
      for (size_t j = 0; j <= n; ++j) d[j] -= cb * T[i][j];
    }
  }

  // true: optimal, false: unbounded. Columns >= limit never enter.
  bool run(size_t limit) {
    for (;;) {
      size_t c = limit;
      for (size_t j = 0; j < limit; ++j)
        if (d[j] > 0) {
          c = j;
          break;
        }
      if (c == limit) return true;
      size_t r = m;
      mpq_class best;
      for (size_t i = 0; i < m; ++i) {
        if (T[i][c] <= 0) continue;
        mpq_class ratio = T[i][n] / T[i][c];
        if (r == m || ratio < best || (ratio == best && basis[i] < basis[r])) r = i, best = ratio;
      }
      if (r == m) return false;
      pivot(r, c);
    }
  }
};

} // namespace

LPResult solve_lp(const QMatrix& A, const std::vector<mpq_class>& b, const std::vector<mpq_class>& c) {
  const size_t m = A.size();
  const size_t ns = c.size();
  if (b.size() != m) throw std::invalid_argument("solve_lp: b has wrong length");
  for (auto& row : A)
    if (row.size() != ns) throw std::invalid_argument("solve_lp: A has wrong width");

  Tableau tb;
  tb.m = m;
  tb.n = ns + m;
  tb.T.assign(m, std::vector<mpq_class>(tb.n + 1));
  std::vector<int> flip(m, 1);
  for (size_t i = 0; i < m; ++i) {
    if (b[i] < 0) flip[i] = -1;
    for (size_t j = 0; j < ns; ++j) tb.T[i][j] = flip[i] * A[i][j];
    tb.T[i][ns + i] = 1;
    tb.T[i][tb.n] = flip[i] * b[i];
    tb.basis.push_back(ns + i);
  }

  // phase 1: maximize -sum of artificials
  std::vector<mpq_class> cost1(tb.n, 0);
  for (size_t i = 0; i < m; ++i) cost1[ns + i] = -1;
  tb.set_costs(cost1);
  tb.run(tb.n);
  LPResult res;
  if (tb.d[tb.n] != 0) {  // -value of phase 1, nonzero means sum of artificials > 0
    res.status = LPResult::Status::infeasible;
    return res;
  }
  // drive artificials out; rows where that is impossible are redundant
  std::vector<bool> redundant(m, false);
  for (size_t i = 0; i < m; ++i) {
    if (tb.basis[i] < ns) continue;
    size_t c = ns;
    for (size_t j = 0; j < ns; ++j)
      if (tb.T[i][j] != 0) {
        c = j;
        break;
      }
    if (c < ns) tb.pivot(i, c);
    else redundant[i] = true;
  }

  std::vector<mpq_class> cost2(tb.n, 0);
  for (size_t j = 0; j < ns; ++j) cost2[j] = c[j];
  tb.set_costs(cost2);
  if (!tb.run(ns)) {
    res.status = LPResult::Status::unbounded;
    return res;
  }
  res.status = LPResult::Status::optimal;
  res.x.assign(ns, 0);
  for (size_t i = 0; i < m; ++i)
    if (tb.basis[i] < ns) res.x[tb.basis[i]] = tb.T[i][tb.n];
  res.value = -tb.d[tb.n];

  // duals from y B = c_B on the non-redundant rows
  std::vector<size_t> rows;
  for (size_t i = 0; i < m; ++i)
    if (!redundant[i]) rows.push_back(i);
  std::vector<size_t> cols;
  for (size_t i = 0; i < m; ++i)
    if (!redundant[i]) cols.push_back(tb.basis[i]);
  QMatrix B(rows.size(), std::vector<mpq_class>(cols.size()));
  std::vector<mpq_class> cb(cols.size());
  for (size_t k = 0; k < cols.size(); ++k) cb[k] = c[cols[k]];
  for (size_t a = 0; a < rows.size(); ++a)
    for (size_t k = 0; k < cols.size(); ++k) B[a][k] = flip[rows[a]] * A[rows[a]][cols[k]];
  auto y = solve_left(B, cb);
  if (!y) throw std::logic_error("solve_lp: singular basis");
  res.y.assign(m, 0);
  for (size_t a = 0; a < rows.size(); ++a) res.y[rows[a]] = flip[rows[a]] * (*y)[a];
  return res;
}

} // namespace tdi
