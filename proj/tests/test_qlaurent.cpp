#include <random>

#include <doctest.h>

#include "tdi/errors.hpp"
#include "tdi/qlaurent.hpp"

using namespace tdi;

namespace {

TruncatedSeries poly(std::initializer_list<int> c, int64_t order_h = kExactOrder) {
  std::vector<mpz_class> v;
  for (int x : c) v.emplace_back(x);
  return TruncatedSeries::from_coeffs(v, order_h);
}

TruncatedSeries random_series(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 6), coef(-5, 5), low(-4, 4), ord(8, 20);
  std::map<int64_t, mpz_class> t;
  int lo = low(rng), n = len(rng);
  for (int i = 0; i < n; ++i) t[lo + i] = coef(rng);
  return TruncatedSeries::from_terms(t, ord(rng));
}

} // namespace

TEST_SUITE("qlaurent") {

TEST_CASE("half integers parse and print") {
  CHECK(parse_half("7").twice == 14);
  CHECK(parse_half("-3").twice == -6);
  CHECK(parse_half("5/2").twice == 5);
  CHECK(parse_half("2.5").twice == 5);
  CHECK(HalfInt{5}.str() == "5/2");
  CHECK(HalfInt{-3}.floor() == -2);
  CHECK_THROWS(parse_half("1/3"));
}

TEST_CASE("canonical rendering") {
  CHECK(poly({1, -2, -3}, 5).str() == "1 - 2*q^1 - 3*q^2 + O(q^3)");
  CHECK(poly({1, -2, -3}, 4).str() == "1 - 2*q^1 - 3*q^2 + O(q^(5/2))");
  CHECK(TruncatedSeries::monomial(-1, 3).str() == "-q^(3/2)");
  CHECK(TruncatedSeries::one().str() == "1");
  CHECK(TruncatedSeries::zero(3).str() == "O(q^2)");
}

TEST_CASE("inverse of a unit power series") {
  CHECK(invert_unit_power_series(poly({1, -1}, 7)).truncated(6) == poly({1, 1, 1, 1}, 6));
  CHECK(invert_unit_power_series(poly({1}, 7)).truncated(6) == poly({1}, 6));
  CHECK(invert_unit_power_series(poly({-1, 1}, 5)).truncated(4) == poly({-1, -1, -1}, 4));
  CHECK_THROWS_AS(invert_unit_power_series(poly({2, 1}, 5)), NotAUnit);
  CHECK_THROWS_AS(invert_unit_power_series(shift_h(poly({1, 1}, 5), 1)), NotAUnit);
}

TEST_CASE("ring laws on random series") {
  std::mt19937 rng(7);
  for (int it = 0; it < 300; ++it) {
    auto a = random_series(rng), b = random_series(rng), c = random_series(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    // cancellation in b + c can only raise the guaranteed order of the left side
    CHECK((a * (b + c)).agrees_with(a * b + a * c));
    CHECK((a * (b + c)).order_h() >= (a * b + a * c).order_h());
  }
}

TEST_CASE("unit times inverse is one") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int it = 0; it < 100; ++it) {
    std::vector<mpz_class> v{(it % 2) ? 1 : -1};
    for (int i = 0; i < 6; ++i) v.emplace_back(coef(rng));
    auto s = TruncatedSeries::from_coeffs(v, 30);
    auto p = s * invert_unit_power_series(s);
    CHECK(p.agrees_with(TruncatedSeries::one()));
  }
}

TEST_CASE("signed half powers round trip") {
  std::mt19937 rng(3);
  for (int it = 0; it < 100; ++it) {
    auto s = random_series(rng);
    for (int k : {-3, -1, 0, 2, 5}) {
      auto back = scale_by_signed_half_power(scale_by_signed_half_power(s, k), -k);
      CHECK(back == s);
    }
  }
  CHECK(scale_by_signed_half_power(TruncatedSeries::one(), 3).str() == "-q^(3/2)");
}

TEST_CASE("truncation tracks the exact order") {
  auto a = poly({1, 1}, 6);           // exact through q^3
  auto b = shift_h(poly({1}, 4), 2);  // q, exact through q^3
  auto p = a * b;
  CHECK(p.order_h() == 6);
  CHECK(p.str() == "q^1 + q^2 + O(q^(7/2))");
  CHECK(add(a, TruncatedSeries::zero(3)).order_h() == 3);
}

TEST_CASE("integer coefficients") {
  auto c = poly({1, -2, 0, 5}, 10).integer_coeffs(4);
  REQUIRE(c.size() == 5);
  CHECK(c[1] == -2);
  CHECK(c[4] == 0);
  CHECK_THROWS(TruncatedSeries::monomial(1, 1).integer_coeffs(2));
}

}
