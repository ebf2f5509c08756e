#include <set>

#include <doctest.h>

#include "oracles.hpp"
#include "tdi/errors.hpp"
#include "tdi/pachner.hpp"

using namespace tdi;

namespace {

// Tet j becomes sigma[j] and its vertices are renamed by frame[j] (even).
CombTriangulation relabel(const CombTriangulation& t, const std::vector<int>& sigma, const std::vector<Perm4>& frame) {
  CombTriangulation r(t.size());
  for (int j = 0; j < t.size(); ++j)
    for (int f = 0; f < 4; ++f) {
      auto g = t.gluing(j, f);
      Perm4 p = frame[size_t(g.tet)] * g.perm * frame[size_t(j)].inverse();
      r.glue(sigma[size_t(j)], frame[size_t(j)][f], sigma[size_t(g.tet)], p);
    }
  return r;
}

int degree_of(const CombTriangulation& t, int edge) { return derive_edge_classes(t).classes[size_t(edge)].degree(); }

} // namespace

TEST_SUITE("pachner") {

TEST_CASE("move kinds and locations parse") {
  CHECK(parse_move_kind("2-3") == MoveKind::two_three);
  CHECK(parse_move_kind("two_zero") == MoveKind::two_zero);
  CHECK_THROWS_AS(parse_move_kind("4-4"), InputError);
  auto mv = parse_move("0-2", "0,0,1");
  CHECK(mv.kind == MoveKind::zero_two);
  CHECK(mv.at == std::vector<int>{0, 0, 1});
  CHECK_THROWS_AS(parse_move("2-3", "0"), InputError);
  CHECK_THROWS_AS(parse_move("2-3", "a,b"), InputError);
}

TEST_CASE("preconditions") {
  auto fig8 = oracle::load_tri("m004.tri");
  for (int e = 0; e < 2; ++e) CHECK(check_preconditions(fig8, {MoveKind::three_two, {e}}).has_value());
  for (int j = 0; j < 2; ++j)
    for (int f = 0; f < 4; ++f) CHECK_FALSE(check_preconditions(fig8, {MoveKind::two_three, {j, f}}).has_value());
  CHECK(check_preconditions(fig8, {MoveKind::two_three, {5, 0}}).has_value());
  CHECK_THROWS_AS(apply_move(fig8, {MoveKind::three_two, {0}}), PreconditionFailed);

  // trefoil: the two edges opposite the degree-2 edge are identified
  auto tre = oracle::load_tri("trefoil.tri");
  auto table = derive_edge_classes(tre);
  int e2 = table.classes[0].degree() == 2 ? 0 : 1;
  auto uf = oracle::edge_classes(tre);
  const auto& inc = table.classes[size_t(e2)].inc;
  CHECK(uf[size_t(6 * inc[0].tet + edge_index(inc[0].a, inc[0].b))] ==
        uf[size_t(6 * inc[1].tet + edge_index(inc[1].a, inc[1].b))]);
  CHECK(check_preconditions(tre, {MoveKind::two_zero, {e2}}).has_value());
}

TEST_CASE("2-3 moves on the figure-eight") {
  auto t = oracle::load_tri("m004.tri");
  for (int j = 0; j < 2; ++j)
    for (int f = 0; f < 4; ++f) {
      CAPTURE(j);
      CAPTURE(f);
      MoveResult r = apply_move_ex(t, {MoveKind::two_three, {j, f}});
      CHECK(r.tri.size() == 3);
      CHECK_NOTHROW(r.tri.validate());
      CHECK(r.tri.oriented());
      auto g = derive_gluing_data(r.tri);
      CHECK(g.N == 3);
      CHECK(g.r == 1);
      CHECK_NOTHROW(g.validate());
      REQUIRE(r.new_edge >= 0);
      auto table = derive_edge_classes(r.tri);
      const auto& c = table.classes[size_t(r.new_edge)];
      CHECK(c.degree() == 3);
      std::set<int> tets;
      for (auto& x : c.inc) tets.insert(x.tet);
      CHECK(tets.size() == 3);
      auto back = apply_move(r.tri, {MoveKind::three_two, {r.new_edge}});
      CHECK(isomorphic(back, t));
    }
}

TEST_CASE("0-2 moves on the figure-eight") {
  auto t = oracle::load_tri("m004.tri");
  int done = 0;
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        MoveSpec mv{MoveKind::zero_two, {e, i, j}};
        if (check_preconditions(t, mv)) continue;
        CAPTURE(mv.str());
        MoveResult r = apply_move_ex(t, mv);
        CHECK(r.tri.size() == 4);
        CHECK_NOTHROW(r.tri.validate());
        auto g = derive_gluing_data(r.tri);
        CHECK_NOTHROW(g.validate());
        REQUIRE(r.new_edge >= 0);
        CHECK(degree_of(r.tri, r.new_edge) == 2);
        auto back = apply_move(r.tri, {MoveKind::two_zero, {r.new_edge}});
        CHECK(isomorphic(back, t));
        ++done;
      }
  CHECK(done > 0);
}

TEST_CASE("index is unchanged by moves") {
  auto t = oracle::load_tri("m004.tri");
  auto r23 = verify_move_invariance(t, {MoveKind::two_three, {0, 0}}, HalfInt::from_int(30));
  CHECK(r23.equal);
  CHECK(r23.str().find("INVARIANT: yes") != std::string::npos);
  auto r02 = verify_move_invariance(t, {MoveKind::zero_two, {0, 0, 1}}, HalfInt::from_int(30));
  CHECK(r02.equal);

  // two consecutive 2-3 moves
  MoveResult once = apply_move_ex(t, {MoveKind::two_three, {0, 0}});
  std::optional<MoveSpec> next;
  for (int j = 0; j < 3 && !next; ++j)
    for (int f = 0; f < 4 && !next; ++f) {
      MoveSpec mv{MoveKind::two_three, {j, f}};
      if (!check_preconditions(once.tri, mv)) next = mv;
    }
  REQUIRE(next);
  auto r2 = verify_move_invariance(once.tri, *next, HalfInt::from_int(20));
  CHECK(r2.equal);
  CHECK(r2.before.truncated(40) == compute_index(make_job(derive_gluing_data(t), HalfInt::from_int(20))));
}

TEST_CASE("moves on the Whitehead link") {
  auto t = oracle::load_tri("m129.tri");
  auto r = verify_move_invariance(t, {MoveKind::two_three, {0, 1}}, HalfInt::from_int(8));
  CHECK(r.equal);
}

TEST_CASE("isomorphism") {
  auto t = oracle::load_tri("m129.tri");
  std::vector<int> sigma{2, 0, 3, 1};
  std::vector<Perm4> frame{Perm4::from(1, 2, 0, 3), Perm4::identity(), Perm4::from(1, 0, 3, 2),
                           Perm4::from(0, 2, 3, 1)};
  auto r = relabel(t, sigma, frame);
  CHECK_NOTHROW(r.validate());
  CHECK_FALSE(r == t);
  CHECK(isomorphic(r, t));
  CHECK(canonical_form(r) == canonical_form(t));
  CHECK_FALSE(isomorphic(oracle::load_tri("m003.tri"), oracle::load_tri("m004.tri")));
  CHECK_FALSE(isomorphic(oracle::load_tri("m004.tri"), oracle::load_tri("trefoil.tri")));
}

}
