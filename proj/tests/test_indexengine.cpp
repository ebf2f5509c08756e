#include <cmath>
#include <set>

#include <doctest.h>

#include "oracles.hpp"
#include "tdi/errors.hpp"
#include "tdi/anglestruct.hpp"
#include "tdi/indexengine.hpp"

using namespace tdi;

namespace {

std::vector<mpz_class> coeffs(const TruncatedSeries& s, int n) { return s.integer_coeffs(n); }

std::vector<mpz_class> ints(std::initializer_list<long> v) {
  std::vector<mpz_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

TruncatedSeries index_of(const char* name, int order, int threads = 1) {
  IndexOptions opt;
  opt.threads = threads;
  return compute_index(make_job(oracle::load_gluing(name), HalfInt::from_int(order), opt));
}

int64_t cross(std::pair<int, int> a, std::pair<int, int> b) { return int64_t(a.first) * b.second - int64_t(a.second) * b.first; }

} // namespace

TEST_SUITE("indexengine") {

TEST_CASE("named series") {
  CHECK(coeffs(index_of("m004.tri", 10), 10) == ints({1, -2, -3, 2, 8, 18, 18, 14, -12, -52, -106}));
  CHECK(coeffs(index_of("5_2.nz", 5), 5) == ints({1, -4, -1, 16, 26, 23}));
}

TEST_CASE("figure-eight summands") {
  auto job = make_job(oracle::load_gluing("m004.tri"), HalfInt::from_int(12));
  const int64_t T = 24;
  for (int k = -4; k <= 4; ++k) {
    CAPTURE(k);
    auto ikk = tet_index(k, k, HalfInt::from_int(12));
    CHECK(summand(job, {k}).agrees_with(ikk * ikk));
    CHECK(summand_degree(job, {k}) == HalfInt::from_int(2 * k * k + std::abs(k)));
    auto s = summand(job, {k});
    if (2 * (2 * k * k + std::abs(k)) > T) CHECK(s.is_zero());
  }
  CHECK(summand(job, {0}).agrees_with(tet_index(0, 0, HalfInt::from_int(12)) * tet_index(0, 0, HalfInt::from_int(12))));
  CHECK(summand_degree(job, {0}) == HalfInt{0});
}

TEST_CASE("5_2 summand degree follows the printed case table") {
  auto job = make_job(oracle::load_gluing("5_2.nz"), HalfInt::from_int(10));
  const std::pair<int, int> rho[6] = {{2, 1}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
  // twice the degree on each cone C_{i,i+1}
  auto piece = [](int c, int64_t a, int64_t b) -> int64_t {
    switch (c) {
      case 0: return a + a * a;
      case 1: return -a - a * a + 2 * b + 2 * b * b;
      case 2: return 2 * (-a + a * a + b - 2 * a * b + b * b);
      case 3: return 2 * (-a + a * a);
      case 4: return 2 * (a * a - b - 2 * a * b + 2 * b * b);
      default: return 2 * (a + 2 * a * a - b - 4 * a * b + 2 * b * b);
    }
  };
  int checked = 0;
  for (int a = -6; a <= 6; ++a)
    for (int b = -6; b <= 6; ++b)
      for (int c = 0; c < 6; ++c) {
        auto lo = rho[c], hi = rho[(c + 1) % 6];
        if (cross(lo, {a, b}) < 0 || cross({a, b}, hi) < 0) continue;
        CAPTURE(a);
        CAPTURE(b);
        CHECK(summand_degree(job, {a, b}).twice == piece(c, a, b));
        ++checked;
      }
  CHECK(checked > 169);
}

TEST_CASE("degree is a sound lower bound on every enumerated point") {
  for (auto name : {"m004.tri", "m003.tri", "m129.tri", "trefoil.tri", "5_2.nz", "6_1.nz", "7_2.nz", "pretzel_m2_3_7.nz"}) {
    CAPTURE(name);
    auto job = make_job(oracle::load_gluing(name), HalfInt::from_int(20));
    for (auto& k : enumerate_support(job)) {
      auto s = summand(job, k);
      CHECK(s.min_exp_h() >= summand_degree(job, k).twice);
    }
  }
}

TEST_CASE("support sets") {
  auto fig8 = make_job(oracle::load_gluing("m004.tri"), HalfInt::from_int(12));
  std::set<int64_t> ks;
  for (auto& k : enumerate_support(fig8)) ks.insert(k[0]);
  CHECK(ks == std::set<int64_t>{-2, -1, 0, 1, 2});
  const double N = 12;
  CHECK(*ks.begin() >= std::floor((-1 - std::sqrt(1 + 8 * N)) / 4));
  CHECK(*ks.rbegin() <= std::ceil((-1 + std::sqrt(1 + 8 * N)) / 4));

  for (int n : {5, 10, 20, 30}) {
    auto job = make_job(oracle::load_gluing("5_2.nz"), HalfInt::from_int(n));
    const double lo = (1 - std::sqrt(1 + 4.0 * n)) / 2, hi = (1 + std::sqrt(1 + 8.0 * n)) / 2;
    for (auto& k : enumerate_support(job)) {
      CHECK(k[0] >= lo);
      CHECK(k[0] <= hi);
      CHECK(k[1] >= lo);
      CHECK(k[1] <= hi);
    }
  }

  // 6_1: the third coordinate grows linearly with the order
  for (int n : {10, 20, 40}) {
    auto job = make_job(oracle::load_gluing("6_1.nz"), HalfInt::from_int(n));
    int64_t k3 = 0;
    for (auto& k : enumerate_support(job)) k3 = std::max(k3, std::abs(k[2]));
    CHECK(k3 == n);
  }
}

TEST_CASE("a wider margin finds the same points") {
  for (auto name : {"5_2.nz", "6_1.nz", "m129.tri"}) {
    auto job = make_job(oracle::load_gluing(name), HalfInt::from_int(15));
    auto pts = enumerate_support(job);
    job.options.shell_margin = 12;
    auto wide = enumerate_support(job);
    std::sort(pts.begin(), pts.end());
    std::sort(wide.begin(), wide.end());
    CHECK(pts == wide);
  }
}

TEST_CASE("agrees with the original I-form sum") {
  struct Case {
    const char* name;
    int order;
    int radius;
  };
  for (auto c : {Case{"m004.tri", 12, 4}, Case{"m129.tri", 6, 9}, Case{"5_2.nz", 8, 6}, Case{"m003.tri", 10, 4}}) {
    CAPTURE(c.name);
    auto g = oracle::load_gluing(c.name);
    auto sel = select_basis(g);
    auto mine = compute_index(make_job(g, HalfInt::from_int(c.order)));
    for (size_t code : {size_t(0), size_t(1), size_t(5)}) {
      auto qc = quad_choice_at(g.N, code % size_t(std::pow(3, g.N)));
      auto box = oracle::index_I_form(g, qc, sel.basic, PeripheralVector::zero(g.N), c.radius, 2 * c.order);
      CHECK(box.boundary_min_h > 2 * c.order);
      CHECK(oracle::same(box.value, mine, 2 * c.order));
    }
  }
}

TEST_CASE("nonzero peripheral vector matches the I-form sum") {
  auto g = oracle::load_gluing("m004.tri");
  PeripheralVector w{{1, 0}, {0, 1}, {0, 0}};
  auto job = make_job(g, HalfInt::from_int(8));
  job.peripheral = w;
  auto mine = compute_index(job);
  auto box = oracle::index_I_form(g, all_qprime(2), {0}, w, 6, 16);
  CHECK(box.boundary_min_h > 16);
  CHECK(oracle::same(box.value, mine, 16));
  auto box2 = oracle::index_I_form(g, quad_choice_at(2, 4), {0}, w, 6, 16);
  CHECK(oracle::same(box2.value, mine, 16));
}

TEST_CASE("trefoil against a plain box sum") {
  auto g = oracle::load_gluing("trefoil.tri");
  auto sel = select_basis(g);
  auto mine = compute_index(make_job(g, HalfInt::from_int(10)));
  auto box = oracle::index_I_form(g, all_qprime(2), sel.basic, PeripheralVector::zero(2), 40, 20);
  CHECK(oracle::same(box.value, mine, 20));
}

TEST_CASE("basis and coset independence") {
  auto f = oracle::load_gluing("m004.tri");
  const HalfInt ord = HalfInt::from_int(15);
  auto a = compute_index_coset_sum(f, PeripheralVector::zero(2), LatticeMap::basic_edges(2, BasisSelection::from_excluded(2, {1})), ord);
  auto b = compute_index_coset_sum(f, PeripheralVector::zero(2), LatticeMap::basic_edges(2, BasisSelection::from_excluded(2, {0})), ord);
  CHECK(a == b);
  CHECK(a == compute_index(make_job(f, ord)));

  auto w = oracle::load_gluing("m129.tri");
  auto job = make_job(w, HalfInt::from_int(8));
  auto first = compute_index(job);
  job.basis = BasisSelection::from_excluded(4, {0, 1});
  CHECK(compute_index(job) == first);
  job.basis = BasisSelection::from_excluded(4, {1, 3});
  CHECK_THROWS_AS(compute_index(job), InputError);
  job.options.require_valid_basis = false;
  CHECK_FALSE(compute_index(job) == first);
}

TEST_CASE("divergence is reported") {
  auto job = make_job(oracle::load_gluing("deg1_deg2.tri"), HalfInt::from_int(4));
  CHECK_THROWS_AS(compute_index(job), Divergent);
}

TEST_CASE("thread count does not change the result") {
  for (auto name : {"6_1.nz", "m129.tri"}) {
    auto one = index_of(name, 20, 1);
    CHECK(index_of(name, 20, 2) == one);
    CHECK(index_of(name, 20, 8) == one);
  }
}

TEST_CASE("half-integer orders") {
  auto job = make_job(oracle::load_gluing("m004.tri"), HalfInt{21});
  auto s = compute_index(job);
  CHECK(s.order_h() == 21);
  CHECK(s.truncated(20) == index_of("m004.tri", 10).truncated(20));
}

}
