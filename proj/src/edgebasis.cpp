#include "tdi/edgebasis.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "tdi/errors.hpp"
#include "tdi/intlinalg.hpp"

namespace tdi {

EdgeCuspGraph EdgeCuspGraph::from(const GluingData& g) {
  EdgeCuspGraph G;
  G.vertices = g.r;
  for (int i = 0; i < g.N; ++i) {
    EdgeCuspGraph::Edge e;
    for (int h = 0; h < g.r; ++h) {
      int64_t c = g.cusp[size_t(h)][size_t(i)];
      if (c == 2) e.u = e.v = h;
      else if (c == 1) (e.u < 0 ? e.u : e.v) = h;
    }
    if (e.u < 0 || e.v < 0) throw NoValidCycle("edge " + std::to_string(i) + " does not have two cusp ends");
    G.edges.push_back(e);
  }
  return G;
}

BasisSelection BasisSelection::from_excluded(int N, std::vector<int> excluded) {
  BasisSelection s;
  std::sort(excluded.begin(), excluded.end());
  if (std::adjacent_find(excluded.begin(), excluded.end()) != excluded.end())
    throw InputError("excluded edges repeat");
  for (int x : excluded)
    if (x < 0 || x >= N) throw InputError("excluded edge " + std::to_string(x) + " out of range");
  s.excluded = excluded;
  for (int i = 0; i < N; ++i)
    if (!std::binary_search(excluded.begin(), excluded.end(), i)) s.basic.push_back(i);
  return s;
}

std::string BasisSelection::str() const {
  auto list = [](const std::vector<int>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", e" : "e") + std::to_string(v[i]);
    return s + "}";
  };
  return "excluded " + list(excluded) + "\nbasic " + list(basic) + "\n";
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(size_t(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[size_t(x)] == x ? x : parent[size_t(x)] = find(parent[size_t(x)]); }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[size_t(a)] = b;
    return true;
  }
};

// Spanning forest scanning edges from the highest index down, after the seeds.
std::vector<int> spanning_tree(const EdgeCuspGraph& G, const std::vector<int>& seeds) {
  DisjointSets ds(G.vertices);
  std::vector<int> tree;
  for (int s : seeds)
    if (ds.unite(G.edges[size_t(s)].u, G.edges[size_t(s)].v)) tree.push_back(s);
  for (int i = int(G.edges.size()) - 1; i >= 0; --i) {
    const auto& e = G.edges[size_t(i)];
    if (!e.loop() && ds.unite(e.u, e.v)) tree.push_back(i);
  }
  return tree;
}

} // namespace

BasisSelection select_basis(const GluingData& g) {
  EdgeCuspGraph G = EdgeCuspGraph::from(g);
  const int N = int(G.edges.size());
  for (int i = N - 1; i >= 0; --i) {
    if (!G.edges[size_t(i)].loop()) continue;
    std::vector<int> X = spanning_tree(G, {});
    if (int(X.size()) != G.vertices - 1) throw NoValidCycle("edge-cusp graph is disconnected");
    X.push_back(i);
    return BasisSelection::from_excluded(N, X);
  }
  // no loops: a triangle on three distinct cusps, largest edge indices first
  for (int a = N - 1; a >= 0; --a)
    for (int b = a - 1; b >= 0; --b)
      for (int c = b - 1; c >= 0; --c) {
        const auto &ea = G.edges[size_t(a)], &eb = G.edges[size_t(b)], &ec = G.edges[size_t(c)];
        std::set<int> verts{ea.u, ea.v, eb.u, eb.v, ec.u, ec.v};
        if (verts.size() != 3) continue;
        auto count = [&](int v) {
          int k = 0;
          for (auto* e : {&ea, &eb, &ec}) k += (e->u == v) + (e->v == v);
          return k;
        };
        bool cycle = true;
        for (int v : verts) cycle = cycle && count(v) == 2;
        if (!cycle) continue;
        std::vector<int> X = spanning_tree(G, {a, b});
        if (int(X.size()) != G.vertices - 1) throw NoValidCycle("edge-cusp graph is disconnected");
        X.push_back(c);
        return BasisSelection::from_excluded(N, X);
      }
  throw NoValidCycle("edge-cusp graph has neither a loop nor a triangle");
}

namespace {
mpz_class invariant_product(const IntMatrix& m) {
  mpz_class p = 1;
  for (auto& d : smith_invariants(to_z(m))) p *= d;
  return p;
}

IntMatrix row_matrix(const GluingData& g) {
  ReducedNZ red = eliminate_quad(g, all_qprime(g.N));
  return hcat(red.A, red.B);
}
} // namespace

BasisValidation validate_basis(const GluingData& g, const BasisSelection& sel) {
  IntMatrix rows = row_matrix(g);
  IntMatrix basic = select_rows(rows, sel.basic);
  const int want = g.N - g.r;
  if (int(sel.basic.size()) != want || rank(basic) != want)
    throw RankDeficient("selected rows span rank " + std::to_string(rank(basic)) + ", need " + std::to_string(want));
  BasisValidation v;
  v.index = invariant_product(basic) / invariant_product(rows);
  v.valid = v.index == 1;
  return v;
}

std::string ExcludedRow::str() const {
  std::ostringstream os;
  os << "E" << edge << " =";
  bool any = false;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    int64_t c = coeffs[i];
    if (c == 0) continue;
    os << (c < 0 ? (any ? " - " : " -") : (any ? " + " : " "));
    int64_t a = c < 0 ? -c : c;
    if (a != 1) os << a << "*";
    os << "E" << i;
    any = true;
  }
  if (!any) os << " 0";
  return os.str();
}

std::vector<ExcludedRow> express_excluded_rows(const GluingData& g, const BasisSelection& sel) {
  const int N = g.N;
  EdgeCuspGraph G = EdgeCuspGraph::from(g);
  // relation at each (merged) vertex: sum_i R[v][i] E_i = 0
  std::vector<std::vector<int64_t>> R = g.cusp;
  std::vector<bool> alive(size_t(g.r), true);
  std::set<int> S(sel.excluded.begin(), sel.excluded.end());
  std::vector<ExcludedRow> out;

  auto s_ends = [&](int v, int* which) {
    int64_t total = 0;
    for (int s : S) {
      int64_t c = R[size_t(v)][size_t(s)];
      if (c != 0) *which = s;
      total += c < 0 ? -c : c;
    }
    return total;
  };

  for (;;) {
    int alive_count = int(std::count(alive.begin(), alive.end(), true));
    int v = -1, s = -1;
    if (alive_count > 1)
      for (int x = 0; x < g.r && v < 0; ++x)
        if (alive[size_t(x)] && s_ends(x, &s) == 1) v = x;
    if (v < 0) break;
    const auto& e = G.edges[size_t(s)];
    // the other end: the live vertex other than v still carrying s
    int w = -1;
    for (int x = 0; x < g.r; ++x)
      if (x != v && alive[size_t(x)] && R[size_t(x)][size_t(s)] != 0) w = x;
    if (w < 0 || e.loop()) throw NoValidCycle("collapse met an edge without a second end");
    const int64_t cv = R[size_t(v)][size_t(s)];  // +-1
    ExcludedRow row{s, std::vector<int64_t>(size_t(N), 0)};
    for (int i = 0; i < N; ++i)
      if (i != s) row.coeffs[size_t(i)] = -cv * R[size_t(v)][size_t(i)];
    out.push_back(row);
    const int64_t cw = R[size_t(w)][size_t(s)];
    for (int i = 0; i < N; ++i) R[size_t(w)][size_t(i)] -= cw * cv * R[size_t(v)][size_t(i)];
    alive[size_t(v)] = false;
    S.erase(s);
  }

  // endgame: one vertex with a loop, or a triangle; solve the small square system
  std::vector<int> V;
  for (int x = 0; x < g.r; ++x)
    if (alive[size_t(x)]) V.push_back(x);
  std::vector<int> Sv(S.begin(), S.end());
  if (V.size() != Sv.size()) throw NoValidCycle("collapse left " + std::to_string(V.size()) + " vertices and " +
                                                std::to_string(Sv.size()) + " excluded edges");
  if (!Sv.empty()) {
    const size_t k = Sv.size();
    QMatrix M(k, std::vector<mpq_class>(k));
    for (size_t a = 0; a < k; ++a)
      for (size_t b = 0; b < k; ++b) M[a][b] = mpq_class(static_cast<long>(R[size_t(V[a])][size_t(Sv[b])]));
    for (int s : Sv) out.push_back(ExcludedRow{s, std::vector<int64_t>(size_t(N), 0)});
    for (int i = 0; i < N; ++i) {
      if (S.count(i)) continue;
      // E_S M^T = -rest: solve for the column of coefficients of E_i
      std::vector<mpq_class> rhs(k);
      for (size_t a = 0; a < k; ++a) rhs[a] = mpq_class(static_cast<long>(-R[size_t(V[a])][size_t(i)]));
      QMatrix Mt(k, std::vector<mpq_class>(k));
      for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) Mt[b][a] = M[a][b];
      auto x = solve_left(Mt, rhs);
      if (!x) throw NoValidCycle("endgame system is singular");
      for (size_t b = 0; b < k; ++b) {
        mpq_class val = (*x)[b];
        val.canonicalize();
        if (val.get_den() != 1)
          throw OddCoefficient("coefficient " + val.get_str() + " of E" + std::to_string(i) + " in E" +
                               std::to_string(Sv[b]) + " is not an integer");
        for (auto& r : out)
          if (r.edge == Sv[b]) r.coeffs[size_t(i)] = val.get_num().get_si();
      }
    }
  }

  // rows expressed via other excluded rows get those substituted
  std::sort(out.begin(), out.end(), [](const ExcludedRow& a, const ExcludedRow& b) { return a.edge < b.edge; });
  IntMatrix rows = row_matrix(g);
  for (auto& r : out) {
    for (int x : sel.excluded)
      if (r.coeffs[size_t(x)] != 0) throw Error("excluded row expressed through another excluded row");
    for (size_t col = 0; col < rows[0].size(); ++col) {
      int64_t s = 0;
      for (int i = 0; i < N; ++i) s += r.coeffs[size_t(i)] * rows[size_t(i)][col];
      if (s != rows[size_t(r.edge)][col]) throw Error("expression for E" + std::to_string(r.edge) + " does not verify");
    }
  }
  return out;
}

} // namespace tdi
