#include "tdi/triangulation.hpp"

#include <sstream>

#include "tdi/errors.hpp"

namespace tdi {

void CombTriangulation::glue(int tet, int face, int target, Perm4 perm) {
  g_.at(size_t(tet))[size_t(face)] = FaceGluing{target, perm};
  g_.at(size_t(target))[size_t(perm[face])] = FaceGluing{tet, perm.inverse()};
}

void CombTriangulation::unglue(int tet, int face) {
  FaceGluing& g = g_.at(size_t(tet))[size_t(face)];
  if (g.tet >= 0) g_.at(size_t(g.tet))[size_t(g.perm[face])] = FaceGluing{};
  g = FaceGluing{};
}

int CombTriangulation::add_tets(int count) {
  int first = size();
  g_.resize(g_.size() + size_t(count));
  return first;
}

void CombTriangulation::validate() const {
  if (g_.empty()) throw InvariantViolation("triangulation has no tetrahedra");
  const int n = size();
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = gluing(t, f);
      std::string at = "face " + std::to_string(t) + ":" + std::to_string(f);
      if (g.tet < 0) throw InvariantViolation(at + " is not glued");
      if (g.tet >= n) throw InvariantViolation(at + " glued to missing tet " + std::to_string(g.tet));
      if (g.tet == t && g.perm[f] == f) throw InvariantViolation(at + " glued to itself");
      const FaceGluing& back = gluing(g.tet, g.perm[f]);
      if (back.tet != t || back.perm != g.perm.inverse())
        throw InvariantViolation(at + " gluing is not involutive");
      if (g.perm.even()) throw InvariantViolation(at + " gluing preserves orientation (even permutation)");
    }
  }
}

bool CombTriangulation::oriented() const {
  for (int t = 0; t < size(); ++t)
    for (int f = 0; f < 4; ++f)
      if (gluing(t, f).tet >= 0 && gluing(t, f).perm.even()) return false;
  return true;
}

std::vector<int> EdgeClass::quad_sequence() const {
  std::vector<int> s;
  for (auto& i : inc) s.push_back(quad_of_edge(i.edge()));
  return s;
}

std::vector<EdgeIncidence> walk_edge(const CombTriangulation& t, EdgeIncidence start) {
  std::vector<EdgeIncidence> out;
  EdgeIncidence cur = start;
  const size_t guard = size_t(6 * t.size()) + 1;
  do {
    out.push_back(cur);
    if (out.size() > guard) throw InvariantViolation("edge walk does not close up");
    const FaceGluing& g = t.gluing(cur.tet, cur.a);
    if (g.tet < 0) throw InvariantViolation("edge walk reached an unglued face");
    const Perm4& p = g.perm;
    cur = EdgeIncidence{g.tet, p[cur.u], p[cur.v], p[cur.b], p[cur.a]};
  } while (!(cur.tet == start.tet && cur.u == start.u && cur.v == start.v && cur.a == start.a));
  return out;
}

namespace {
EdgeIncidence incidence_of_slot(int tet, int e) {
  auto [u, v] = edge_vertices(e);
  int others[2], k = 0;
  for (int x = 0; x < 4; ++x)
    if (x != u && x != v) others[k++] = x;
  return EdgeIncidence{tet, u, v, others[0], others[1]};
}
} // namespace

EdgeTable derive_edge_classes(const CombTriangulation& t, bool require_count) {
  t.validate();
  EdgeTable tab;
  tab.slot_class.assign(size_t(6 * t.size()), -1);
  for (int slot = 0; slot < 6 * t.size(); ++slot) {
    if (tab.slot_class[size_t(slot)] >= 0) continue;
    EdgeClass c;
    c.inc = walk_edge(t, incidence_of_slot(slot / 6, slot % 6));
    for (auto& i : c.inc) {
      // an edge met twice in the same tet slot would mean it is glued to itself reversed
      if (tab.slot_class[size_t(i.slot())] >= 0) throw InvariantViolation("edge identified with itself in reverse");
      tab.slot_class[size_t(i.slot())] = int(tab.classes.size());
    }
    tab.classes.push_back(std::move(c));
  }
  if (require_count && int(tab.classes.size()) != t.size())
    throw EdgeCountMismatch("found " + std::to_string(tab.classes.size()) + " edge classes for " +
                            std::to_string(t.size()) + " tetrahedra; cusps are not all tori");
  return tab;
}

CuspTable derive_cusps(const CombTriangulation& t) {
  CuspTable c;
  c.vertex_cusp.assign(size_t(4 * t.size()), -1);
  for (int s = 0; s < 4 * t.size(); ++s) {
    if (c.vertex_cusp[size_t(s)] >= 0) continue;
    std::vector<int> stack{s};
    c.vertex_cusp[size_t(s)] = c.count;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      int tet = x / 4, v = x % 4;
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        const FaceGluing& g = t.gluing(tet, f);
        if (g.tet < 0) continue;
        int y = 4 * g.tet + g.perm[v];
        if (c.vertex_cusp[size_t(y)] < 0) {
          c.vertex_cusp[size_t(y)] = c.count;
          stack.push_back(y);
        }
      }
    }
    ++c.count;
  }
  return c;
}

std::string QuadChoice::str() const {
  std::string s;
  for (auto q : choice) {
    if (!s.empty()) s += ' ';
    s += q == Quad::q ? "q" : q == Quad::qp ? "q'" : "q''";
  }
  return s;
}

std::vector<int64_t> GluingData::degrees() const {
  std::vector<int64_t> d(size_t(N), 0);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) d[size_t(i)] += abar[size_t(i)][size_t(j)] + bbar[size_t(i)][size_t(j)] + cbar[size_t(i)][size_t(j)];
  return d;
}

void GluingData::validate() const {
  auto fail = [](const std::string& m) { throw InvariantViolation(m); };
  if (N <= 0) fail("N must be positive");
  if (r <= 0) fail("cusp count must be positive");
  auto shape = [&](const IntMatrix& m, int rows, const char* name) {
    if (int(m.size()) != rows) fail(std::string(name) + " has wrong row count");
    for (auto& row : m)
      if (int(row.size()) != N) fail(std::string(name) + " has wrong column count");
  };
  shape(abar, N, "Abar");
  shape(bbar, N, "Bbar");
  shape(cbar, N, "Cbar");
  shape(cusp, r, "C");
  for (int k = 0; k < 3; ++k) {
    const IntMatrix& m = quad_matrix(Quad(k));
    const char* name = k == 0 ? "Abar" : k == 1 ? "Bbar" : "Cbar";
    for (int j = 0; j < N; ++j) {
      int64_t s = 0;
      for (int i = 0; i < N; ++i) {
        if (m[size_t(i)][size_t(j)] < 0) fail(std::string(name) + " has a negative entry");
        s += m[size_t(i)][size_t(j)];
      }
      if (s != 2) fail(std::string(name) + " column " + std::to_string(j) + " does not sum to 2");
    }
  }
  for (int i = 0; i < N; ++i) {
    int64_t s = 0;
    for (int h = 0; h < r; ++h) {
      int64_t c = cusp[size_t(h)][size_t(i)];
      if (c < 0 || c > 2) fail("C has an entry outside 0..2");
      s += c;
    }
    if (s != 2) fail("C column " + std::to_string(i) + " does not sum to 2");
  }
  for (int i = 0; i < N; ++i)
    if (degrees()[size_t(i)] == 0) fail("edge " + std::to_string(i) + " has degree 0");
  ReducedNZ red = eliminate_quad(*this, all_qprime(N));
  IntMatrix AB = hcat(red.A, red.B);
  for (int h = 0; h < r; ++h) {
    for (int col = 0; col < 2 * N; ++col) {
      int64_t s = 0;
      for (int i = 0; i < N; ++i) s += cusp[size_t(h)][size_t(i)] * AB[size_t(i)][size_t(col)];
      if (s != 0) fail("cusp relation " + std::to_string(h) + " fails");
    }
  }
  if (rank(AB) != N - r) fail("rank of (A|B) is " + std::to_string(rank(AB)) + ", expected N - r = " + std::to_string(N - r));
}

GluingData derive_gluing_data(const CombTriangulation& t) {
  EdgeTable edges = derive_edge_classes(t);
  CuspTable cusps = derive_cusps(t);
  const int N = t.size();
  GluingData g;
  g.N = N;
  g.r = cusps.count;
  g.abar.assign(size_t(N), std::vector<int64_t>(size_t(N), 0));
  g.bbar = g.cbar = g.abar;
  g.cusp.assign(size_t(g.r), std::vector<int64_t>(size_t(N), 0));
  for (int tet = 0; tet < N; ++tet)
    for (int e = 0; e < 6; ++e) {
      int cls = edges.slot_class[size_t(6 * tet + e)];
      IntMatrix& m = quad_of_edge(e) == 0 ? g.abar : quad_of_edge(e) == 1 ? g.bbar : g.cbar;
      ++m[size_t(cls)][size_t(tet)];
    }
  std::vector<int64_t> link_vertices(size_t(g.r), 0), link_triangles(size_t(g.r), 0);
  for (int i = 0; i < N; ++i) {
    const EdgeIncidence& x = edges.classes[size_t(i)].inc[0];
    for (int end : {x.u, x.v}) {
      int h = cusps.vertex_cusp[size_t(4 * x.tet + end)];
      ++g.cusp[size_t(h)][size_t(i)];
      ++link_vertices[size_t(h)];
    }
  }
  for (int s = 0; s < 4 * N; ++s) ++link_triangles[size_t(cusps.vertex_cusp[size_t(s)])];
  for (int h = 0; h < g.r; ++h) {
    // V - E + F with E = 3F/2
    int64_t chi2 = 2 * link_vertices[size_t(h)] - link_triangles[size_t(h)];
    if (chi2 != 0)
      throw InvariantViolation("cusp " + std::to_string(h) + " link is not a torus (2*chi = " + std::to_string(chi2) + ")");
  }
  g.validate();
  return g;
}

QuadChoice all_qprime(int N) { return QuadChoice{std::vector<Quad>(size_t(N), Quad::qp)}; }

ReducedNZ eliminate_quad(const GluingData& g, const QuadChoice& qc) {
  const size_t N = size_t(g.N);
  if (qc.choice.size() != N) throw InputError("quad-choice has wrong length");
  ReducedNZ r;
  r.A.assign(N, std::vector<int64_t>(N));
  r.B = r.A;
  r.nu.assign(N, 2);
  for (size_t j = 0; j < N; ++j) {
    // the remaining two quads in cyclic order after the eliminated one
    const Quad k = qc.choice[j];
    const IntMatrix& E = g.quad_matrix(k);
    const IntMatrix& X = k == Quad::qp ? g.abar : k == Quad::q ? g.cbar : g.bbar;
    const IntMatrix& Y = k == Quad::qp ? g.cbar : k == Quad::q ? g.bbar : g.abar;
    for (size_t i = 0; i < N; ++i) {
      r.A[i][j] = X[i][j] - E[i][j];
      r.B[i][j] = Y[i][j] - E[i][j];
      r.nu[i] -= E[i][j];
    }
  }
  return r;
}

PeripheralVector PeripheralVector::zero(int N) {
  std::vector<int64_t> z(size_t(N), 0);
  return PeripheralVector{z, z, z};
}

std::vector<int64_t> PeripheralVector::a() const {
  std::vector<int64_t> out(abar.size());
  for (size_t j = 0; j < abar.size(); ++j) out[j] = abar[j] - bbar[j];
  return out;
}

std::vector<int64_t> PeripheralVector::b() const {
  std::vector<int64_t> out(abar.size());
  for (size_t j = 0; j < abar.size(); ++j) out[j] = cbar[j] - bbar[j];
  return out;
}

int64_t PeripheralVector::nu() const {
  int64_t s = 0;
  for (auto x : bbar) s -= x;
  return s;
}

void PeripheralVector::validate(int N) const {
  if (int(abar.size()) != N || int(bbar.size()) != N || int(cbar.size()) != N)
    throw InvariantViolation("peripheral vector has length " + std::to_string(abar.size()) + ", expected " +
                             std::to_string(N));
}

} // namespace tdi
