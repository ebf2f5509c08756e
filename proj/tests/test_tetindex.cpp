#include <numeric>
#include <thread>

#include <doctest.h>

#include "oracles.hpp"
#include "tdi/errors.hpp"
#include "tdi/tetindex.hpp"

using namespace tdi;

TEST_SUITE("tetindex") {

TEST_CASE("agrees with direct summation for small charges") {
  for (int m = -5; m <= 5; ++m)
    for (int e = -5; e <= 5; ++e) {
      CAPTURE(m);
      CAPTURE(e);
      auto s = tet_index(m, e, HalfInt::from_int(8));
      CHECK(oracle::same(oracle::tet_index(m, e, 16), s, 16));
    }
}

TEST_CASE("degree is the least exponent") {
  for (int m = -5; m <= 5; ++m)
    for (int e = -5; e <= 5; ++e) {
      CAPTURE(m);
      CAPTURE(e);
      auto brute = oracle::tet_index(m, e, 24 + degree_h(m, e));
      REQUIRE(!brute.empty());
      CHECK(brute.begin()->first == degree_h(m, e));
      if (degree_h(m, e) <= 24) CHECK(tet_index(m, e, HalfInt::from_int(12)).min_exp_h() == degree_h(m, e));
      else CHECK(tet_index(m, e, HalfInt::from_int(12)).is_zero());
    }
}

TEST_CASE("named values") {
  auto i00 = tet_index(0, 0, HalfInt::from_int(6));
  CHECK(i00.min_exp_h() == 0);
  CHECK(i00.coeff(0) == 1);
  CHECK(degree(0, 0) == HalfInt{0});
  CHECK(degree(1, 1) == HalfInt{3});
  CHECK(tet_index(1, 1, HalfInt::from_int(4)).min_exp_h() == 3);
  // (0,-5): only the (-e)(-e-m) and max terms contribute: (25 + 5)/2
  CHECK(degree(0, -5) == HalfInt::from_int(15));
  for (int m = 0; m <= 6; ++m)
    for (int e = 0; e <= 6; ++e) CHECK(degree_h(m, e) == m * (e + m) + m);
}

TEST_CASE("degree is convex along rays from the origin") {
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      if (std::gcd(a, b) != 1) continue;
      for (int r = 1; r < 6; ++r)
        CHECK(degree_h((r - 1) * a, (r - 1) * b) + degree_h((r + 1) * a, (r + 1) * b) >=
              2 * degree_h(r * a, r * b));
    }
}

TEST_CASE("truncation consistency") {
  for (int m = -3; m <= 3; ++m)
    for (int e = -3; e <= 3; ++e) {
      auto hi = compute_tet_index(m, e, 30), lo = compute_tet_index(m, e, 11);
      CHECK(hi.truncated(11) == lo);
    }
  TetIndexCache cache;
  auto big = cache.get(2, -1, 40);
  CHECK(cache.get(2, -1, 10) == big.truncated(10));
  CHECK(cache.size() == 1);
}

TEST_CASE("J form") {
  const HalfInt ord = HalfInt::from_int(8);
  auto H = [](int v) { return HalfInt::from_int(v); };
  CHECK(tet_index_J(H(0), H(0), H(0), ord) == tet_index(0, 0, ord));
  // common shift by s multiplies by (-q^{1/2})^{-s}
  auto j = tet_index_J(H(2), H(1), H(0), ord);
  auto js = tet_index_J(H(5), H(4), H(3), ord);
  CHECK(js.agrees_with(scale_by_signed_half_power(j, -3)));
  // all permutations of the arguments
  int p[3] = {0, 1, 2};
  do {
    CHECK(tet_index_J(H(2 - p[0]), H(2 - p[1]), H(2 - p[2]), ord).agrees_with(j));
  } while (std::next_permutation(p, p + 3));
  CHECK_THROWS_AS(tet_index_J(HalfInt{1}, HalfInt{0}, HalfInt{0}, ord), NonIntegralDifference);
}

TEST_CASE("quadratic identity for J, summed directly") {
  const int64_t T = 20;
  TetIndexCache cache;
  for (int b = -3; b <= 3; ++b)
    for (int c = -3; c <= 3; ++c)
      for (int x = -3; x <= 3; ++x) {
        TruncatedSeries acc = TruncatedSeries::zero(T);
        for (int a = -25; a <= 25; ++a) {
          auto t = tet_index_J_h(a, b, c, T + 80, cache) * tet_index_J_h(a + x, b, c, T + 80, cache);
          add_into(acc, shift_h(t, 2 * a).truncated(T));
        }
        CAPTURE(b);
        CAPTURE(c);
        CAPTURE(x);
        CHECK(acc.truncated(T) == (x == 0 ? TruncatedSeries::one(T) : TruncatedSeries::zero(T)).truncated(T));
      }
}

TEST_CASE("identity report") {
  IdentityReport rep = verify_identities(2, HalfInt::from_int(10));
  CHECK(rep.all_pass());
  CHECK(rep.results.size() == 10);
  for (auto& r : rep.results) CHECK(r.checked > 0);
  // the named instances
  auto ord = HalfInt::from_int(10);
  CHECK(tet_index(2, -1, ord) == tet_index(1, -2, ord));
}

TEST_CASE("diagonal n-ranges") {
  auto printed = check_diagonal_range(DiagonalRange::printed, 30, 8);
  auto corrected = check_diagonal_range(DiagonalRange::corrected, 30, 8);
  CHECK_FALSE(printed.pass);
  CHECK(corrected.pass);
  // n = 2 at k = 1 has exponent 1/2, inside order 1, above the printed upper end
  auto [lo, hi] = diagonal_range(DiagonalRange::printed, 1, 1);
  CHECK(lo <= 2);
  CHECK(hi == 1);
  CHECK(diagonal_range(DiagonalRange::corrected, 1, 1).second >= 2);
}

TEST_CASE("shared cache under concurrent use") {
  TetIndexCache cache;
  std::vector<std::thread> ts;
  std::vector<TruncatedSeries> out(8);
  for (int i = 0; i < 8; ++i)
    ts.emplace_back([&, i] { out[size_t(i)] = cache.get(i % 3, -(i % 4), 20 + 2 * i); });
  for (auto& t : ts) t.join();
  for (int i = 0; i < 8; ++i) CHECK(out[size_t(i)] == compute_tet_index(i % 3, -(i % 4), 20 + 2 * i));
}

}
