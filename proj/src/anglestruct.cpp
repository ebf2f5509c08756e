#include "tdi/anglestruct.hpp"

#include <atomic>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "tdi/errors.hpp"
#include "tdi/simplex.hpp"

namespace tdi {

std::string to_string(AngleClass c) {
  switch (c) {
  case AngleClass::not_a_structure: return "not an angle structure";
  case AngleClass::generalised: return "generalised";
  case AngleClass::semi: return "semi";
  case AngleClass::taut: return "taut";
  case AngleClass::strict: return "strict";
  }
  return "?";
}

QMatrix angle_matrix(const GluingData& g) {
  const int N = g.N;
  QMatrix M(size_t(2 * N), std::vector<mpq_class>(size_t(3 * N)));
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < 3; ++k) {
      const IntMatrix& q = g.quad_matrix(Quad(k));
      for (int i = 0; i < N; ++i) M[size_t(i)][size_t(3 * j + k)] = static_cast<long>(q[size_t(i)][size_t(j)]);
      M[size_t(N + j)][size_t(3 * j + k)] = 1;
    }
  return M;
}

std::vector<mpq_class> angle_rhs(const GluingData& g) {
  std::vector<mpq_class> b(size_t(2 * g.N), 1);
  for (int i = 0; i < g.N; ++i) b[size_t(i)] = 2;
  return b;
}

AngleClass classify_angle_vector(const GluingData& g, const AngleVector& v) {
  if (int(v.angles.size()) != 3 * g.N) return AngleClass::not_a_structure;
  QMatrix M = angle_matrix(g);
  auto b = angle_rhs(g);
  for (size_t i = 0; i < M.size(); ++i) {
    mpq_class s = 0;
    for (size_t j = 0; j < v.angles.size(); ++j) s += M[i][j] * v.angles[j];
    if (s != b[i]) return AngleClass::not_a_structure;
  }
  bool strict = true, semi = true, taut = true;
  for (auto& a : v.angles) {
    strict = strict && a > 0 && a < 1;
    semi = semi && a >= 0 && a <= 1;
    taut = taut && (a == 0 || a == 1);
  }
  if (strict) return AngleClass::strict;
  if (taut) return AngleClass::taut;
  if (semi) return AngleClass::semi;
  return AngleClass::generalised;
}

void NormalClass::add(const NormalClass& o, const mpq_class& c) {
  for (size_t i = 0; i < coords.size(); ++i) coords[i] += c * o.coords[i];
}

bool NormalClass::admissible() const {
  for (auto& x : coords)
    if (x < 0) return false;
  for (size_t t = 0; t < coords.size() / 7; ++t) {
    int nz = 0;
    for (int k = 0; k < 3; ++k) nz += quad(int(t), k) != 0;
    if (nz > 1) return false;
  }
  return true;
}

bool satisfies_matching(const CombTriangulation& t, const NormalClass& c) {
  for (int tet = 0; tet < t.size(); ++tet)
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = t.gluing(tet, f);
      if (g.tet < 0) continue;
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        int pv = g.perm[v], pf = g.perm[f];
        mpq_class lhs = c.tri(tet, v) + c.quad(tet, quad_of_edge(edge_index(v, f)));
        mpq_class rhs = c.tri(g.tet, pv) + c.quad(g.tet, quad_of_edge(edge_index(pv, pf)));
        if (lhs != rhs) return false;
      }
    }
  return true;
}

std::vector<NormalClass> kang_rubinstein_basis(const CombTriangulation& t, const EdgeTable& edges) {
  const int N = t.size();
  std::vector<NormalClass> out;
  for (auto& cls : edges.classes) {
    NormalClass e = NormalClass::zero(N);
    for (auto& i : cls.inc) {
      e.quad(i.tet, quad_of_edge(i.edge())) -= 1;
      e.tri(i.tet, i.u) += 1;
      e.tri(i.tet, i.v) += 1;
    }
    out.push_back(std::move(e));
  }
  for (int j = 0; j < N; ++j) {
    NormalClass e = NormalClass::zero(N);
    for (int v = 0; v < 4; ++v) e.tri(j, v) = 1;
    for (int k = 0; k < 3; ++k) e.quad(j, k) = -1;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<NormalClass> vertex_link_classes(const CombTriangulation& t) {
  CuspTable cusps = derive_cusps(t);
  std::vector<NormalClass> out(size_t(cusps.count), NormalClass::zero(t.size()));
  for (int s = 0; s < 4 * t.size(); ++s) out[size_t(cusps.vertex_cusp[size_t(s)])].tri(s / 4, s % 4) = 1;
  return out;
}

mpq_class generalized_euler_characteristic(const GluingData& g, const NormalClass&, const FarkasCertificate& dual) {
  mpq_class s = 0;
  for (int i = 0; i < g.N; ++i) s += 2 * dual.z[size_t(i)] + dual.w[size_t(i)];
  return s;
}

mpq_class euler_characteristic_from_angles(const NormalClass& cls, const AngleVector& alpha) {
  mpq_class s = 0;
  for (size_t j = 0; j < alpha.angles.size() / 3; ++j)
    for (int k = 0; k < 3; ++k) s -= cls.quad(int(j), k) * alpha.angles[3 * j + size_t(k)];
  return s;
}

QuadChoice quad_choice_at(int N, size_t k) {
  QuadChoice qc{std::vector<Quad>(size_t(N))};
  for (int j = N - 1; j >= 0; --j) {
    qc.choice[size_t(j)] = Quad(k % 3);
    k /= 3;
  }
  return qc;
}

namespace {

mpz_class ceil_q(const mpq_class& x) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Obstruction build_obstruction(const GluingData& g, const QuadChoice& qc, const std::vector<mpq_class>& y,
                              const CombTriangulation* t) {
  const int N = g.N;
  Obstruction ob;
  ob.choice = qc;
  for (int i = 0; i < N; ++i) {
    ob.dual.z.push_back(-y[size_t(i)]);
    ob.dual.w.push_back(-y[size_t(N + i)]);
  }
  QMatrix M = angle_matrix(g);
  auto b = angle_rhs(g);
  ob.chi = 0;
  for (int i = 0; i < 2 * N; ++i) ob.chi -= y[size_t(i)] * b[size_t(i)];
  ob.quad_coords.assign(size_t(3 * N), 0);
  bool support = true, strict = false;
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < 3; ++k) {
      mpq_class s = 0;
      for (int i = 0; i < 2 * N; ++i) s += y[size_t(i)] * M[size_t(i)][size_t(3 * j + k)];
      ob.quad_coords[size_t(3 * j + k)] = s;
      if (Quad(k) == qc.choice[size_t(j)]) {
        support = support && s >= 0;
        strict = strict || s > 0;
      } else {
        support = support && s == 0;
      }
    }
  ob.supported_on_choice = support && strict;
  if (t) {
    EdgeTable edges = derive_edge_classes(*t);
    auto basis = kang_rubinstein_basis(*t, edges);
    NormalClass W = NormalClass::zero(N);
    for (int i = 0; i < N; ++i) W.add(basis[size_t(i)], ob.dual.z[size_t(i)]);
    for (int j = 0; j < N; ++j) W.add(basis[size_t(N + j)], ob.dual.w[size_t(j)]);
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < 3; ++k)
        if (W.quad(j, k) != ob.quad_coords[size_t(3 * j + k)]) throw Error("normal class quad coordinates disagree with the dual");
    CuspTable cusps = derive_cusps(*t);
    auto links = vertex_link_classes(*t);
    for (int h = 0; h < cusps.count; ++h) {
      mpq_class lo = 0;
      for (int s = 0; s < 4 * N; ++s)
        if (cusps.vertex_cusp[size_t(s)] == h && W.tri(s / 4, s % 4) < lo) lo = W.tri(s / 4, s % 4);
      mpz_class copies = ceil_q(-lo);
      ob.torus_copies.push_back(copies.get_si());
      W.add(links[size_t(h)], mpq_class(copies));
    }
    ob.matched = satisfies_matching(*t, W);
    ob.cls = std::move(W);
  }
  return ob;
}

} // namespace

ChoiceStatus check_quad_choice(const GluingData& g, const QuadChoice& qc, std::optional<Obstruction>* obstruction,
                               const CombTriangulation* t) {
  const int N = g.N;
  QMatrix M = angle_matrix(g);
  auto b = angle_rhs(g);
  // columns: s (N, chosen quads), t+, t-, x+ (2N), x- (2N), v
  const size_t cs = 0, ctp = size_t(N), ctm = ctp + 1, cxp = ctm + 1, cxm = cxp + size_t(2 * N), cv = cxm + size_t(2 * N);
  const size_t ncols = cv + 1, nrows = size_t(2 * N + 1);
  QMatrix A(nrows, std::vector<mpq_class>(ncols));
  std::vector<size_t> free_quads;
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < 3; ++k)
      if (Quad(k) != qc.choice[size_t(j)]) free_quads.push_back(size_t(3 * j + k));
  for (size_t i = 0; i < size_t(2 * N); ++i) {
    mpq_class tsum = 0;
    for (int j = 0; j < N; ++j) {
      const mpq_class& m = M[i][size_t(3 * j + int(qc.choice[size_t(j)]))];
      A[i][cs + size_t(j)] = m;
      tsum += m;
    }
    A[i][ctp] = tsum;
    A[i][ctm] = -tsum;
    for (size_t u = 0; u < free_quads.size(); ++u) {
      A[i][cxp + u] = M[i][free_quads[u]];
      A[i][cxm + u] = -M[i][free_quads[u]];
    }
  }
  A[nrows - 1][ctp] = 1;
  A[nrows - 1][ctm] = -1;
  A[nrows - 1][cv] = 1;
  std::vector<mpq_class> rhs = b;
  rhs.push_back(1);
  std::vector<mpq_class> c(ncols, 0);
  c[ctp] = 1;
  c[ctm] = -1;

  LPResult lp = solve_lp(A, rhs, c);
  ChoiceStatus st;
  st.choice = qc;
  if (lp.status != LPResult::Status::optimal)
    throw InputError("no generalised angle structure exists; the cusps cannot all be tori");
  st.best_min_angle = lp.value;
  st.feasible = lp.value > 0;
  st.witness.angles.assign(size_t(3 * N), 0);
  mpq_class tv = lp.x[ctp] - lp.x[ctm];
  for (int j = 0; j < N; ++j) st.witness.angles[size_t(3 * j + int(qc.choice[size_t(j)]))] = lp.x[cs + size_t(j)] + tv;
  for (size_t u = 0; u < free_quads.size(); ++u) st.witness.angles[free_quads[u]] = lp.x[cxp + u] - lp.x[cxm + u];
  if (!st.feasible && obstruction) *obstruction = build_obstruction(g, qc, lp.y, t);
  return st;
}

EfficiencyReport has_index_structure(const GluingData& g, const CombTriangulation* t, const EfficiencyOptions& opt) {
  if (g.N > opt.cap && !opt.force)
    throw CapExceeded("N = " + std::to_string(g.N) + " exceeds the quad-choice cap " + std::to_string(opt.cap) +
                      " (3^N systems); pass --force to run anyway");
  size_t total = 1;
  for (int j = 0; j < g.N; ++j) total *= 3;

  std::vector<std::optional<ChoiceStatus>> status(total);
  std::vector<std::optional<Obstruction>> obs(total);
  std::atomic<size_t> next{0}, first_bad{std::numeric_limits<size_t>::max()};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    try {
      for (;;) {
        size_t k = next.fetch_add(1);
        if (k >= total) return;
        if (!opt.all_certificates && k > first_bad.load()) continue;
        std::optional<Obstruction> ob;
        ChoiceStatus st = check_quad_choice(g, quad_choice_at(g.N, k), &ob, t);
        if (!st.feasible) {
          size_t cur = first_bad.load();
          while (k < cur && !first_bad.compare_exchange_weak(cur, k)) {
          }
          obs[k] = std::move(ob);
        }
        status[k] = std::move(st);
      }
    } catch (...) {
      std::lock_guard lk(err_mu);
      if (!err) err = std::current_exception();
      next.store(total);
    }
  };
  const int nt = std::max(1, opt.threads);
  if (nt == 1) worker();
  else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);

  EfficiencyReport rep;
  rep.total = total;
  const size_t bad = first_bad.load();
  const size_t last = opt.all_certificates || bad >= total ? total : bad + 1;
  for (size_t k = 0; k < last; ++k) {
    rep.feasible += status[k]->feasible;
    if (obs[k]) rep.obstructions.push_back(std::move(*obs[k]));
    rep.choices.push_back(std::move(*status[k]));
  }
  rep.index_structure = rep.obstructions.empty();
  return rep;
}

namespace {
template <class V>
std::string row(const V& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    if constexpr (std::is_same_v<typename V::value_type, mpq_class>) s += v[i].get_str();
    else s += std::to_string(v[i]);
  }
  return s;
}
} // namespace

std::string EfficiencyReport::str() const {
  std::ostringstream os;
  if (index_structure) {
    os << "INDEX STRUCTURE: yes (" << feasible << "/" << total << " quad-choices feasible)\n";
  } else {
    os << "INDEX STRUCTURE: no (quad-choice [" << obstructions.front().choice.str() << "] infeasible; " << feasible
       << " of the " << choices.size() << " choices checked are feasible, " << total << " in all)\n";
  }
  for (size_t k = 0; k < choices.size(); ++k) {
    const auto& c = choices[k];
    os << "choice " << k << " [" << c.choice.str() << "]: " << (c.feasible ? "feasible" : "infeasible")
       << ", best least chosen angle " << c.best_min_angle.get_str() << "\n";
  }
  for (const auto& ob : obstructions) {
    os << "certificate for [" << ob.choice.str() << "]\n";
    os << "z " << row(ob.dual.z) << "\n";
    os << "w " << row(ob.dual.w) << "\n";
    os << "quads " << row(ob.quad_coords) << "\n";
    os << "chi* " << ob.chi.get_str() << "\n";
    os << "supported on choice: " << (ob.supported_on_choice ? "yes" : "no") << "\n";
    if (ob.cls) {
      os << "normal class " << row(ob.cls->coords) << "\n";
      os << "vertex-link copies " << row(ob.torus_copies) << "\n";
      os << "matched: " << (ob.matched ? "yes" : "no") << "\n";
    }
  }
  return os.str();
}

} // namespace tdi
