#include "tdi/intlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdi {

ZMatrix to_z(const IntMatrix& m) {
  ZMatrix z(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (auto v : m[i]) z[i].emplace_back(static_cast<long>(v));
  return z;
}

IntMatrix select_rows(const IntMatrix& m, const std::vector<int>& rows) {
  IntMatrix out;
  for (int r : rows) out.push_back(m.at(size_t(r)));
  return out;
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hcat: row counts differ");
  IntMatrix out = a;
  for (size_t i = 0; i < a.size(); ++i) out[i].insert(out[i].end(), b[i].begin(), b[i].end());
  return out;
}

int rank(const ZMatrix& in) {
  ZMatrix m = in;
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  // fraction-free elimination
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      mpz_class a = m[r][c], b = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] * a - m[r][j] * b;
      mpz_class g = 0;
      for (size_t j = c; j < cols; ++j) g = gcd(g, m[i][j]);
      if (g > 1)
        for (size_t j = c; j < cols; ++j) m[i][j] /= g;
    }
    ++r;
  }
  return int(r);
}

std::vector<mpz_class> smith_invariants(ZMatrix m) {
  std::vector<mpz_class> d;
  if (m.empty()) return d;
  const size_t rows = m.size(), cols = m[0].size();
  for (size_t t = 0; t < std::min(rows, cols); ++t) {
    // pivot: smallest nonzero magnitude in the remaining block
    for (;;) {
      size_t pi = rows, pj = cols;
      for (size_t i = t; i < rows; ++i)
        for (size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) pi = i, pj = j;
      if (pi == rows) goto done;
      std::swap(m[t], m[pi]);
      for (auto& row : m) std::swap(row[t], row[pj]);
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide the rest of the block
      bool divides = true;
      for (size_t i = t + 1; i < rows && divides; ++i)
        for (size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    d.push_back(abs(m[t][t]));
  }
done:
  return d;
}

std::optional<std::vector<mpq_class>> solve_left(const QMatrix& M, const std::vector<mpq_class>& b) {
  // x M = b  <=>  M^T x^T = b^T; reduce [M^T | b]
  const size_t n = M.size();
  const size_t cols = b.size();
  QMatrix a(cols, std::vector<mpq_class>(n + 1));
  for (size_t i = 0; i < cols; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = M[j][i];
    a[i][n] = b[i];
  }
  std::vector<size_t> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < n && r < cols; ++c) {
    size_t piv = r;
    while (piv < cols && a[piv][c] == 0) ++piv;
    if (piv == cols) continue;
    std::swap(a[r], a[piv]);
    mpq_class inv = 1 / a[r][c];
    for (size_t j = c; j <= n; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < cols; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (size_t j = c; j <= n; ++j) a[i][j] -= f * a[r][j];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (size_t i = r; i < cols; ++i)
    if (a[i][n] != 0) return std::nullopt;
  std::vector<mpq_class> x(n);
  for (size_t i = 0; i < r; ++i) x[pivcol[i]] = a[i][n];
  return x;
}

} // namespace tdi
