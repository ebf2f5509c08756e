#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "tdi/formats.hpp"

namespace oracle {

void trim(Poly& p, int64_t order_h) {
  for (auto it = p.begin(); it != p.end();) {
    if (it->first > order_h || it->second == 0) it = p.erase(it);
    else ++it;
  }
}

Poly mul(const Poly& a, const Poly& b, int64_t order_h) {
  Poly r;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b)
      if (ea + eb <= order_h) r[ea + eb] += ca * cb;
  trim(r, order_h);
  return r;
}

Poly add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (auto& [e, c] : b) r[e] += c;
  trim(r, INT64_MAX);
  return r;
}

bool same(const Poly& p, const tdi::TruncatedSeries& s, int64_t order_h) {
  if (s.order_h() < order_h) return false;
  Poly q;
  for (auto& [e, c] : s.terms())
    if (e <= order_h) q[e] = c;
  Poly pp = p;
  trim(pp, order_h);
  trim(q, order_h);
  return pp == q;
}

tdi::TruncatedSeries to_series(const Poly& p, int64_t order_h) {
  Poly q = p;
  trim(q, order_h);
  return tdi::TruncatedSeries::from_terms(q, order_h);
}

namespace {

// 1/(q)_n through order_h (half units, so q^i is exponent 2i).
Poly inv_qpoch(int64_t n, int64_t order_h) {
  Poly r{{0, 1}};
  for (int64_t i = 1; i <= n; ++i) {
    Poly geo;
    for (int64_t j = 0; 2 * i * j <= order_h; ++j) geo[2 * i * j] = 1;
    r = mul(r, geo, order_h);
  }
  return r;
}

} // namespace

Poly tet_index(int64_t m, int64_t e, int64_t order_h) {
  Poly sum;
  const int64_t nmax = order_h + 4 + 2 * (std::abs(m) + std::abs(e));
  for (int64_t n = std::max<int64_t>(0, -e); n <= nmax; ++n) {
    // exponent n(n+1)/2 - (n + e/2) m, in half units
    int64_t ex = n * (n + 1) - (2 * n + e) * m;
    if (ex > order_h) continue;
    Poly term{{ex, (n % 2) ? -1 : 1}};
    int64_t rest = order_h - ex;
    Poly a = inv_qpoch(n, rest), b = inv_qpoch(n + e, rest);
    Poly ab = mul(a, b, rest);
    Poly shifted;
    for (auto& [k, c] : ab) shifted[k + ex] = c * term.begin()->second;
    sum = add(sum, shifted);
  }
  trim(sum, order_h);
  return sum;
}

std::vector<int> edge_classes(const tdi::CombTriangulation& t) {
  const int n = t.size();
  std::vector<int> parent(static_cast<size_t>(6 * n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[size_t(x)] != x) x = parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
    return x;
  };
  static const int ev[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  auto eidx = [](int u, int v) {
    if (u > v) std::swap(u, v);
    for (int k = 0; k < 6; ++k)
      if (ev[k][0] == u && ev[k][1] == v) return k;
    return -1;
  };
  for (int j = 0; j < n; ++j)
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.gluing(j, f);
      for (int k = 0; k < 6; ++k) {
        int u = ev[k][0], v = ev[k][1];
        if (u == f || v == f) continue;
        int a = find(6 * j + k), b = find(6 * g.tet + eidx(g.perm[u], g.perm[v]));
        if (a != b) parent[size_t(std::max(a, b))] = std::min(a, b);
      }
    }
  std::vector<int> root(static_cast<size_t>(6 * n)), label(size_t(6 * n), -1), out(size_t(6 * n));
  int next = 0;
  for (int s = 0; s < 6 * n; ++s) {
    int r = find(s);
    if (label[size_t(r)] < 0) label[size_t(r)] = next++;
    out[size_t(s)] = label[size_t(r)];
  }
  return out;
}

BoxSum index_I_form(const tdi::GluingData& g, const tdi::QuadChoice& qc, const std::vector<int>& basic,
                    const tdi::PeripheralVector& w, int64_t radius, int64_t order_h) {
  const int N = g.N;
  // Eliminating quad el leaves A from quad el+2 and B from quad el+1 (cyclically), both minus el;
  // for all-q' this is A = Abar - Bbar, B = Cbar - Bbar.
  auto mat = [&](int k) -> const tdi::IntMatrix& { return k == 0 ? g.abar : k == 1 ? g.bbar : g.cbar; };
  std::vector<std::vector<int64_t>> A(static_cast<size_t>(N), std::vector<int64_t>(static_cast<size_t>(N))), B = A;
  std::vector<int64_t> nu(static_cast<size_t>(N), 2), aw(static_cast<size_t>(N)), bw(static_cast<size_t>(N));
  int64_t nuw = 0;
  for (int j = 0; j < N; ++j) {
    const int el = int(qc.choice[size_t(j)]), ka = (el + 2) % 3, kb = (el + 1) % 3;
    for (int i = 0; i < N; ++i) {
      A[size_t(i)][size_t(j)] = mat(ka)[size_t(i)][size_t(j)] - mat(el)[size_t(i)][size_t(j)];
      B[size_t(i)][size_t(j)] = mat(kb)[size_t(i)][size_t(j)] - mat(el)[size_t(i)][size_t(j)];
      nu[size_t(i)] -= mat(el)[size_t(i)][size_t(j)];
    }
    const int64_t x[3] = {w.abar[size_t(j)], w.bbar[size_t(j)], w.cbar[size_t(j)]};
    aw[size_t(j)] = x[ka] - x[el];
    bw[size_t(j)] = x[kb] - x[el];
    nuw -= x[el];
  }
  BoxSum out;
  out.boundary_min_h = INT64_MAX;
  const size_t d = basic.size();
  std::vector<int64_t> t(d, -radius);
  Poly total;
  std::map<std::tuple<int64_t, int64_t, int64_t>, Poly> memo;
  for (;;) {
    std::vector<int64_t> k(static_cast<size_t>(N), 0);
    bool boundary = false;
    for (size_t i = 0; i < d; ++i) {
      k[size_t(basic[i])] = t[i];
      if (std::abs(t[i]) == radius) boundary = true;
    }
    int64_t pre = nuw;
    for (int i = 0; i < N; ++i) pre += k[size_t(i)] * nu[size_t(i)];
    Poly term{{pre, (pre % 2 != 0) ? -1 : 1}};
    for (int j = 0; j < N && !term.empty(); ++j) {
      int64_t kb = 0, ka = 0;
      for (int i = 0; i < N; ++i) {
        kb += k[size_t(i)] * B[size_t(i)][size_t(j)];
        ka += k[size_t(i)] * A[size_t(i)][size_t(j)];
      }
      int64_t m = -bw[size_t(j)] - kb, e = aw[size_t(j)] + ka;
      // every factor has nonnegative degree, so order_h - pre suffices for each
      const int64_t need = order_h - std::min<int64_t>(pre, 0);
      auto key = std::make_tuple(m, e, need);
      auto it = memo.find(key);
      if (it == memo.end()) it = memo.emplace(key, tet_index(m, e, need)).first;
      term = mul(term, it->second, order_h);
    }
    trim(term, order_h);
    if (boundary && !term.empty()) out.boundary_min_h = std::min(out.boundary_min_h, term.begin()->first);
    total = add(total, term);
    size_t i = 0;
    while (i < d && t[i] == radius) t[i++] = -radius;
    if (i == d) break;
    ++t[i];
  }
  out.value = total;
  return out;
}

std::string fixture(const std::string& name) { return std::string(TDI_FIXTURE_DIR) + "/" + name; }

tdi::CombTriangulation load_tri(const std::string& name) { return tdi::parse_tri(tdi::read_file(fixture(name))); }

tdi::GluingData load_gluing(const std::string& name) { return tdi::load_input(fixture(name)).gluing; }

} // namespace oracle
