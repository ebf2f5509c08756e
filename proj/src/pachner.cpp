#include "tdi/pachner.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "tdi/errors.hpp"

namespace tdi {

std::string to_string(MoveKind k) {
  switch (k) {
  case MoveKind::two_three: return "two_three";
  case MoveKind::three_two: return "three_two";
  case MoveKind::zero_two: return "zero_two";
  case MoveKind::two_zero: return "two_zero";
  }
  return "?";
}

MoveKind parse_move_kind(const std::string& s) {
  if (s == "two_three" || s == "2-3" || s == "23") return MoveKind::two_three;
  if (s == "three_two" || s == "3-2" || s == "32") return MoveKind::three_two;
  if (s == "zero_two" || s == "0-2" || s == "02") return MoveKind::zero_two;
  if (s == "two_zero" || s == "2-0" || s == "20") return MoveKind::two_zero;
  throw InputError("unknown move kind '" + s + "' (two_three, three_two, zero_two, two_zero)");
}

std::string MoveSpec::str() const {
  std::string s = to_string(kind) + " at ";
  for (size_t i = 0; i < at.size(); ++i) s += (i ? "," : "") + std::to_string(at[i]);
  return s;
}

MoveSpec parse_move(const std::string& kind, const std::string& at) {
  MoveSpec mv;
  mv.kind = parse_move_kind(kind);
  std::istringstream is(at);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      size_t pos = 0;
      mv.at.push_back(std::stoi(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("bad move location '" + at + "'");
    }
  }
  size_t want = mv.kind == MoveKind::two_three ? 2 : mv.kind == MoveKind::zero_two ? 3 : 1;
  if (mv.at.size() != want)
    throw InputError(to_string(mv.kind) + " needs " + std::to_string(want) + " comma-separated integers");
  return mv;
}

namespace {

// Symbols are small integers; a new tet is a map symbol -> vertex label.
using Labels = std::map<int, int>;

struct NewTet {
  Labels lambda;
  int symbol_at(int label) const {
    for (auto& [s, l] : lambda)
      if (l == label) return s;
    return -1;
  }
  unsigned mask() const {
    unsigned m = 0;
    for (auto& [s, l] : lambda) m |= 1u << s;
    return m;
  }
};

struct OldTet {
  int tet;
  std::array<int, 4> sym;  // label -> symbol
  unsigned mask() const { return (1u << sym[0]) | (1u << sym[1]) | (1u << sym[2]) | (1u << sym[3]); }
};

// Replaces the old tets by the new ones; faces are matched through their symbol sets.
// Kept tets keep their order, the new tets are appended.
CombTriangulation retriangulate(const CombTriangulation& t, const std::vector<OldTet>& old, std::vector<NewTet>& fresh) {
  const int n = t.size();
  std::vector<int> idx(size_t(n), -1);
  std::vector<bool> removed(size_t(n), false);
  for (auto& o : old) removed[size_t(o.tet)] = true;
  int kept = 0;
  for (int i = 0; i < n; ++i)
    if (!removed[size_t(i)]) idx[size_t(i)] = kept++;

  struct OldFace {
    size_t o;
    int f;
  };
  auto old_face_of = [&](unsigned m) -> std::optional<OldFace> {
    std::optional<OldFace> hit;
    for (size_t o = 0; o < old.size(); ++o)
      for (int f = 0; f < 4; ++f)
        if ((old[o].mask() & ~(1u << old[o].sym[size_t(f)])) == m) {
          if (hit) throw PreconditionFailed("retriangulation: face matched twice");
          hit = OldFace{o, f};
        }
    return hit;
  };
  // old labels of (o,f) -> labels of new tet k, face opposite label L
  auto nu = [&](const OldFace& of, size_t k, int L) {
    Perm4 p;
    for (int l = 0; l < 4; ++l)
      p.p[size_t(l)] = uint8_t(l == of.f ? L : fresh[k].lambda.at(old[of.o].sym[size_t(l)]));
    return p;
  };
  auto face_mask = [&](size_t k, int L) { return fresh[k].mask() & ~(1u << fresh[k].symbol_at(L)); };

  // orientation: every face map into a new tet must be even
  for (size_t k = 0; k < fresh.size(); ++k)
    for (int L = 0; L < 4; ++L) {
      auto of = old_face_of(face_mask(k, L));
      if (!of) continue;
      if (!nu(*of, k, L).even()) {
        int s2 = fresh[k].symbol_at(2), s3 = fresh[k].symbol_at(3);
        std::swap(fresh[k].lambda[s2], fresh[k].lambda[s3]);
      }
      break;
    }

  CombTriangulation out(kept + int(fresh.size()));
  for (int i = 0; i < n; ++i) {
    if (removed[size_t(i)]) continue;
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = t.gluing(i, f);
      if (!removed[size_t(g.tet)]) out.glue(idx[size_t(i)], f, idx[size_t(g.tet)], g.perm);
    }
  }
  for (size_t k = 0; k < fresh.size(); ++k) {
    const int nk = kept + int(k);
    for (int L = 0; L < 4; ++L) {
      const unsigned m = face_mask(k, L);
      // internal face shared with another new tet
      bool internal = false;
      for (size_t j = 0; j < fresh.size() && !internal; ++j) {
        if (j == k) continue;
        for (int L2 = 0; L2 < 4; ++L2)
          if (face_mask(j, L2) == m) {
            Perm4 p;
            for (int l = 0; l < 4; ++l) p.p[size_t(l)] = uint8_t(l == L ? L2 : fresh[j].lambda.at(fresh[k].symbol_at(l)));
            out.glue(nk, L, kept + int(j), p);
            internal = true;
            break;
          }
      }
      if (internal) continue;
      auto of = old_face_of(m);
      if (!of) throw PreconditionFailed("retriangulation: new face has no old counterpart");
      Perm4 v = nu(*of, k, L);
      const FaceGluing& g = t.gluing(old[of->o].tet, of->f);
      if (!removed[size_t(g.tet)]) {
        out.glue(nk, L, idx[size_t(g.tet)], g.perm * v.inverse());
        continue;
      }
      // the neighbour is another face of the region
      const int f2 = g.perm[of->f];
      bool done = false;
      for (size_t o2 = 0; o2 < old.size() && !done; ++o2) {
        if (old[o2].tet != g.tet) continue;
        unsigned m2 = old[o2].mask() & ~(1u << old[o2].sym[size_t(f2)]);
        for (size_t j = 0; j < fresh.size() && !done; ++j)
          for (int L2 = 0; L2 < 4; ++L2)
            if (face_mask(j, L2) == m2) {
              Perm4 v2 = nu(OldFace{o2, f2}, j, L2);
              out.glue(nk, L, kept + int(j), v2 * g.perm * v.inverse());
              done = true;
              break;
            }
      }
      if (!done) throw PreconditionFailed("retriangulation: region face glued to an interior face");
    }
  }
  return out;
}

const EdgeClass& edge_at(const EdgeTable& e, int edge) {
  if (edge < 0 || edge >= int(e.classes.size())) throw PreconditionFailed("edge " + std::to_string(edge) + " does not exist");
  return e.classes[size_t(edge)];
}

std::optional<std::string> check_2_3(const CombTriangulation& t, const MoveSpec& mv) {
  int T0 = mv.at[0], f0 = mv.at[1];
  if (T0 < 0 || T0 >= t.size() || f0 < 0 || f0 > 3) return "location is not a face of the triangulation";
  if (t.gluing(T0, f0).tet == T0) return "the two tetrahedra across the face are not distinct";
  return std::nullopt;
}

std::optional<std::string> check_3_2(const CombTriangulation& t, const EdgeTable& e, const MoveSpec& mv) {
  if (mv.at[0] < 0 || mv.at[0] >= int(e.classes.size())) return "edge does not exist";
  const EdgeClass& c = e.classes[size_t(mv.at[0])];
  if (c.degree() != 3) return "edge has degree " + std::to_string(c.degree()) + ", not 3";
  if (c.inc[0].tet == c.inc[1].tet || c.inc[1].tet == c.inc[2].tet || c.inc[0].tet == c.inc[2].tet)
    return "the three tetrahedra incident to the edge are not distinct";
  (void)t;
  return std::nullopt;
}

std::optional<std::string> check_2_0(const CombTriangulation& t, const EdgeTable& e, const MoveSpec& mv) {
  if (mv.at[0] < 0 || mv.at[0] >= int(e.classes.size())) return "edge does not exist";
  const EdgeClass& c = e.classes[size_t(mv.at[0])];
  if (c.degree() != 2) return "edge has degree " + std::to_string(c.degree()) + ", not 2";
  const EdgeIncidence &x = c.inc[0], &y = c.inc[1];
  if (x.tet == y.tet) return "the two tetrahedra at the edge are not distinct";
  std::array<std::pair<int, int>, 4> ext{{{x.tet, x.u}, {x.tet, x.v}, {y.tet, y.u}, {y.tet, y.v}}};
  for (auto& [tt, f] : ext) {
    const FaceGluing& g = t.gluing(tt, f);
    for (auto& [t2, f2] : ext)
      if (g.tet == t2 && g.perm[f] == f2) return "there is a face pairing between the four external faces";
  }
  int ex = e.slot_class[size_t(6 * x.tet + edge_index(x.a, x.b))];
  int ey = e.slot_class[size_t(6 * y.tet + edge_index(y.a, y.b))];
  if (ex == ey) return "the two edges opposite the degree 2 edge are identified";
  return std::nullopt;
}

struct BookFace {
  int tet_a, face_a, tet_b, face_b;  // the face between incidence k and k+1, from both sides
};

BookFace book_face(const EdgeClass& c, int k) {
  const EdgeIncidence& x = c.inc[size_t(k)];
  const EdgeIncidence& y = c.inc[size_t((k + 1) % c.degree())];
  return BookFace{x.tet, x.a, y.tet, y.b};
}

std::optional<std::string> check_0_2(const EdgeTable& e, const MoveSpec& mv) {
  if (mv.at[0] < 0 || mv.at[0] >= int(e.classes.size())) return "edge does not exist";
  const EdgeClass& c = e.classes[size_t(mv.at[0])];
  int i = mv.at[1], j = mv.at[2];
  if (i < 0 || j < 0 || i >= c.degree() || j >= c.degree()) return "face positions out of range for the edge degree";
  if (i == j) return "the two faces are the same";
  BookFace a = book_face(c, i), b = book_face(c, j);
  auto same = [](int t1, int f1, int t2, int f2) { return t1 == t2 && f1 == f2; };
  if (same(a.tet_a, a.face_a, b.tet_a, b.face_a) || same(a.tet_a, a.face_a, b.tet_b, b.face_b) ||
      same(a.tet_b, a.face_b, b.tet_a, b.face_a) || same(a.tet_b, a.face_b, b.tet_b, b.face_b))
    return "the two triangles are not distinct (this variant of the move is not supported)";
  return std::nullopt;
}

MoveResult do_2_3(const CombTriangulation& t, int T0, int f0) {
  const FaceGluing& g = t.gluing(T0, f0);
  const int T1 = g.tet;
  const Perm4 p = g.perm;
  const int X = 4, Y = 5;
  OldTet o0{T0, {}}, o1{T1, {}};
  for (int z = 0; z < 4; ++z) {
    o0.sym[size_t(z)] = z == f0 ? X : z;
    if (z != f0) o1.sym[size_t(p[z])] = z;
  }
  o1.sym[size_t(p[f0])] = Y;
  std::vector<NewTet> fresh;
  std::vector<int> ws;
  for (int w = 0; w < 4; ++w) {
    if (w == f0) continue;
    NewTet nt;
    nt.lambda[X] = f0;
    nt.lambda[Y] = w;
    for (int z = 0; z < 4; ++z)
      if (z != w && z != f0) nt.lambda[z] = z;
    fresh.push_back(nt);
    ws.push_back(w);
  }
  MoveResult r;
  r.tri = retriangulate(t, {o0, o1}, fresh);
  r.tri.validate();
  // the edge XY, seen in the first new tet
  EdgeTable e = derive_edge_classes(r.tri, false);
  const int first = r.tri.size() - 3;
  r.new_edge = e.slot_class[size_t(6 * first + edge_index(std::min(fresh[0].lambda[X], fresh[0].lambda[Y]),
                                                          std::max(fresh[0].lambda[X], fresh[0].lambda[Y])))];
  return r;
}

MoveResult do_3_2(const CombTriangulation& t, const EdgeClass& c) {
  const int X = 4, Y = 5;
  std::vector<OldTet> old;
  for (int k = 0; k < 3; ++k) {
    const EdgeIncidence& x = c.inc[size_t(k)];
    OldTet o{x.tet, {}};
    o.sym[size_t(x.u)] = X;
    o.sym[size_t(x.v)] = Y;
    o.sym[size_t(x.a)] = k;
    o.sym[size_t(x.b)] = (k + 1) % 3;
    old.push_back(o);
  }
  std::vector<NewTet> fresh(2);
  fresh[0].lambda = {{X, 0}, {0, 1}, {1, 2}, {2, 3}};
  fresh[1].lambda = {{Y, 0}, {0, 1}, {1, 2}, {2, 3}};
  MoveResult r;
  r.tri = retriangulate(t, old, fresh);
  return r;
}

MoveResult do_0_2(const CombTriangulation& t, const EdgeClass& c, int i, int j) {
  const int d = c.degree();
  const EdgeIncidence& Ti = c.inc[size_t(i)];
  const EdgeIncidence& Ti1 = c.inc[size_t((i + 1) % d)];
  const EdgeIncidence& Tj = c.inc[size_t(j)];
  const EdgeIncidence& Tj1 = c.inc[size_t((j + 1) % d)];
  CombTriangulation out = t;
  out.unglue(Ti.tet, Ti.a);
  out.unglue(Tj.tet, Tj.a);
  const int X = out.add_tets(2), Y = X + 1;
  // symbols: 0 = u, 1 = v, 2 = p_i, 3 = p_j; lambda maps symbols to labels
  struct Side {
    const EdgeIncidence* inc;
    int sym_a, sym_b;  // which symbols land on inc->a and inc->b
    int opposite;      // symbol opposite the glued face
  };
  auto to_target = [](const Perm4& lambda, const Side& s) {
    // new labels -> labels of the neighbouring tet
    Perm4 sig;
    int img[4];
    img[0] = s.inc->u, img[1] = s.inc->v;
    img[s.sym_a] = s.inc->a;
    img[s.sym_b] = s.inc->b;
    for (int sym = 0; sym < 4; ++sym) sig.p[size_t(lambda[sym])] = uint8_t(img[sym]);
    return sig;
  };
  // X: F_i copy to T_{i+1} opposite b (p_i -> a), F_j copy to T_j opposite a (p_j -> b)
  std::array<Side, 2> sx{{{&Ti1, 2, 3, 3}, {&Tj, 2, 3, 2}}};
  // Y: F_i copy to T_i opposite a (p_i -> b), F_j copy to T_{j+1} opposite b (p_j -> a)
  std::array<Side, 2> sy{{{&Ti, 3, 2, 3}, {&Tj1, 3, 2, 2}}};
  auto orient = [&](const std::array<Side, 2>& s) {
    Perm4 lambda = Perm4::identity();
    if (to_target(lambda, s[0]).even()) lambda = Perm4::swap(0, 1);
    return lambda;
  };
  const Perm4 lx = orient(sx), ly = orient(sy);
  for (const Side& s : sx) out.glue(X, lx[s.opposite], s.inc->tet, to_target(lx, s));
  for (const Side& s : sy) out.glue(Y, ly[s.opposite], s.inc->tet, to_target(ly, s));
  // X and Y share the faces opposite u and opposite v, identity on symbols
  const Perm4 xy = ly * lx.inverse();
  out.glue(X, lx[0], Y, xy);
  out.glue(X, lx[1], Y, xy);
  MoveResult r;
  r.tri = std::move(out);
  r.tri.validate();
  EdgeTable e = derive_edge_classes(r.tri, false);
  r.new_edge = e.slot_class[size_t(6 * X + edge_index(std::min(lx[2], lx[3]), std::max(lx[2], lx[3])))];
  return r;
}

MoveResult do_2_0(const CombTriangulation& t, const EdgeClass& c) {
  const EdgeIncidence &x = c.inc[0], &y = c.inc[1];
  const Perm4 phi = t.gluing(x.tet, x.a).perm;  // X labels -> Y labels
  const int n = t.size();
  std::vector<int> idx(size_t(n), -1);
  int kept = 0;
  for (int i = 0; i < n; ++i)
    if (i != x.tet && i != y.tet) idx[size_t(i)] = kept++;
  CombTriangulation out(kept);
  for (int i = 0; i < n; ++i) {
    if (idx[size_t(i)] < 0) continue;
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = t.gluing(i, f);
      if (idx[size_t(g.tet)] >= 0) out.glue(idx[size_t(i)], f, idx[size_t(g.tet)], g.perm);
    }
  }
  for (int end : {x.u, x.v}) {
    const FaceGluing& A = t.gluing(x.tet, end);          // alpha: X -> A
    const FaceGluing& B = t.gluing(y.tet, phi[end]);     // beta: Y -> B
    const int fa = A.perm[end];
    const Perm4 m = B.perm * phi * A.perm.inverse();
    out.glue(idx[size_t(A.tet)], fa, idx[size_t(B.tet)], m);
  }
  MoveResult r;
  r.tri = std::move(out);
  return r;
}

} // namespace

std::optional<std::string> check_preconditions(const CombTriangulation& t, const MoveSpec& mv) {
  size_t want = mv.kind == MoveKind::two_three ? 2 : mv.kind == MoveKind::zero_two ? 3 : 1;
  if (mv.at.size() != want) return "location needs " + std::to_string(want) + " integers";
  if (mv.kind == MoveKind::two_three) return check_2_3(t, mv);
  EdgeTable e = derive_edge_classes(t, false);
  switch (mv.kind) {
  case MoveKind::three_two: return check_3_2(t, e, mv);
  case MoveKind::two_zero: return check_2_0(t, e, mv);
  case MoveKind::zero_two: return check_0_2(e, mv);
  default: return std::nullopt;
  }
}

MoveResult apply_move_ex(const CombTriangulation& t, const MoveSpec& mv) {
  t.validate();
  if (auto v = check_preconditions(t, mv)) throw PreconditionFailed(mv.str() + ": " + *v);
  MoveResult r;
  if (mv.kind == MoveKind::two_three) {
    r = do_2_3(t, mv.at[0], mv.at[1]);
  } else {
    EdgeTable e = derive_edge_classes(t, false);
    const EdgeClass& c = edge_at(e, mv.at[0]);
    if (mv.kind == MoveKind::three_two) r = do_3_2(t, c);
    else if (mv.kind == MoveKind::two_zero) r = do_2_0(t, c);
    else r = do_0_2(t, c, mv.at[1], mv.at[2]);
  }
  try {
    r.tri.validate();
  } catch (const InvariantViolation& ex) {
    throw PreconditionFailed(mv.str() + " produced an invalid triangulation: " + ex.what());
  }
  return r;
}

CombTriangulation apply_move(const CombTriangulation& t, const MoveSpec& mv) { return apply_move_ex(t, mv).tri; }

std::string MoveInvarianceReport::str() const {
  std::ostringstream os;
  os << "before: " << before.str() << "\n";
  os << "after:  " << after.str() << "\n";
  os << (equal ? "INVARIANT: yes" : "INVARIANT: no (" + first_difference + ")") << "\n";
  return os.str();
}

MoveInvarianceReport verify_move_invariance(const CombTriangulation& t, const MoveSpec& mv, HalfInt order,
                                            const IndexOptions& opt) {
  CombTriangulation moved = apply_move(t, mv);
  MoveInvarianceReport rep;
  rep.before = compute_index(make_job(derive_gluing_data(t), order, opt));
  rep.after = compute_index(make_job(derive_gluing_data(moved), order, opt));
  rep.equal = rep.before == rep.after;
  if (!rep.equal) {
    int64_t lo = std::min(rep.before.min_exp_h(), rep.after.min_exp_h());
    for (int64_t k = lo; k <= order.twice; ++k)
      if (rep.before.coeff(k) != rep.after.coeff(k)) {
        rep.first_difference = "coefficient of " + render_exponent_h(k) + ": " + rep.before.coeff(k).get_str() +
                               " vs " + rep.after.coeff(k).get_str();
        break;
      }
  }
  return rep;
}

std::vector<int> canonical_form(const CombTriangulation& t) {
  const int n = t.size();
  auto rank_of = [](const Perm4& p) {
    const auto& all = Perm4::all();
    return int(std::find(all.begin(), all.end(), p) - all.begin());
  };
  std::vector<int> best;
  for (int s = 0; s < n; ++s)
    for (const Perm4& s0 : Perm4::all()) {
      if (!s0.even()) continue;
      std::vector<int> newidx(size_t(n), -1);
      std::vector<Perm4> sigma(static_cast<size_t>(n));
      std::vector<int> order{s};
      newidx[size_t(s)] = 0;
      sigma[size_t(s)] = s0;
      std::vector<int> code;
      for (size_t i = 0; i < order.size(); ++i) {
        const int tt = order[i];
        const Perm4 inv = sigma[size_t(tt)].inverse();
        for (int fp = 0; fp < 4; ++fp) {
          const FaceGluing& g = t.gluing(tt, inv[fp]);
          if (newidx[size_t(g.tet)] < 0) {
            newidx[size_t(g.tet)] = int(order.size());
            sigma[size_t(g.tet)] = sigma[size_t(tt)] * g.perm.inverse();
            order.push_back(g.tet);
          }
          code.push_back(newidx[size_t(g.tet)]);
          code.push_back(rank_of(sigma[size_t(g.tet)] * g.perm * inv));
        }
      }
      code.insert(code.begin(), int(order.size()));
      if (best.empty() || code < best) best = std::move(code);
    }
  return best;
}

bool isomorphic(const CombTriangulation& a, const CombTriangulation& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

} // namespace tdi
