#include <cmath>
#include <functional>
#include <sstream>

#include "tdi/tetindex.hpp"

namespace tdi {

namespace {

struct Ctx {
  int64_t T;
  TetIndexCache& cache;

  // q^(shift/2) I(m,e)
  TruncatedSeries I(int64_t m, int64_t e, int64_t shift = 0) const {
    return tet_product({{m, e}}, shift, T, cache);
  }
  // (-q^(1/2))^k I(m,e)
  TruncatedSeries signedI(int64_t m, int64_t e, int64_t k) const {
    return scale_by_signed_half_power(cache.get(m, e, T - k), k);
  }
  TruncatedSeries prod(const std::vector<ChargePair>& f, int64_t shift = 0) const {
    return tet_product(f, shift, T, cache);
  }
  TruncatedSeries zero() const { return TruncatedSeries::zero(T); }
  TruncatedSeries one() const { return TruncatedSeries::one(T); }
};

std::string tuple_str(std::initializer_list<std::pair<const char*, int64_t>> xs) {
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : xs) {
    os << (first ? "" : ", ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

void record(IdentityResult& r, const TruncatedSeries& lhs, const TruncatedSeries& rhs, int64_t T,
            const std::string& where) {
  ++r.checked;
  if (!r.pass) return;
  if (lhs.truncated(T) == rhs.truncated(T) && lhs.order_h() >= T && rhs.order_h() >= T) return;
  r.pass = false;
  r.counterexample = where + ": lhs " + lhs.truncated(T).str() + " vs rhs " + rhs.truncated(T).str();
}

// sum over x of q^(x) * prod of I(m_i, e_i + x)
TruncatedSeries sum_over_shift(const Ctx& c, const std::vector<ChargePair>& base, int64_t extra_shift_h) {
  auto f = [&](int64_t x) {
    int64_t d = 2 * x + extra_shift_h;
    for (auto& p : base) d += degree_h(p.m, p.e + x);
    return d;
  };
  TruncatedSeries acc = c.zero();
  for (int64_t x : convex_window(f, c.T)) {
    std::vector<ChargePair> fs = base;
    for (auto& p : fs) p.e += x;
    add_into(acc, c.prod(fs, 2 * x + extra_shift_h));
  }
  return acc;
}

} // namespace

bool IdentityReport::all_pass() const {
  for (auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string IdentityReport::str() const {
  std::ostringstream os;
  for (auto& r : results) {
    os << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.checked << " cases)";
    if (!r.pass) os << " first counterexample " << r.counterexample;
    os << "\n";
  }
  return os.str();
}

IdentityReport verify_identities(int range, HalfInt order) {
  Ctx c{order.twice, global_tet_cache()};
  const int64_t R = range;
  const int64_t T = c.T;
  IdentityReport rep;

  IdentityResult dual{"duality", true, 0, {}}, tri{"triality", true, 0, {}}, r1{"recursion (m+1,e)/(m,e+1)", true, 0, {}}, r2{"recursion (m-1,e)/(m,e-1)", true, 0, {}},
      r1a{"three-term recursion in e", true, 0, {}}, r2a{"three-term recursion in m", true, 0, {}};
  for (int64_t m = -R; m <= R; ++m) {
    for (int64_t e = -R; e <= R; ++e) {
      std::string at = tuple_str({{"m", m}, {"e", e}});
      TruncatedSeries I = c.I(m, e);
      record(dual, I, c.I(-e, -m), T, at);
      record(tri, I, c.signedI(e, -e - m, -e), T, at + " (first form)");
      record(tri, I, c.signedI(-e - m, m, m), T, at + " (second form)");
      record(r1, add(c.I(m + 1, e, e), c.I(m, e + 1, -m)), I, T, at);
      record(r2, add(c.I(m - 1, e, e), c.I(m, e - 1, -m)), I, T, at);
      {
        TruncatedSeries lhs = add(c.I(m, e + 1), c.I(m, e - 1));
        lhs = add(lhs, c.I(m, e, 2 * e + m));
        TruncatedSeries rhs = add(c.I(m, e, -m), c.I(m, e, m));
        record(r1a, lhs, rhs, T, at);
      }
      {
        TruncatedSeries lhs = add(c.I(m + 1, e), c.I(m - 1, e));
        lhs = add(lhs, c.I(m, e, -e - 2 * m));
        TruncatedSeries rhs = add(c.I(m, e, -e), c.I(m, e, e));
        record(r2a, lhs, rhs, T, at);
      }
    }
  }
  for (auto* r : {&dual, &tri, &r1, &r2, &r1a, &r2a}) rep.results.push_back(*r);

  IdentityResult pent{"pentagon", true, 0, {}};
  for (int64_t m1 = -R; m1 <= R; ++m1)
    for (int64_t m2 = -R; m2 <= R; ++m2)
      for (int64_t e1 = -R; e1 <= R; ++e1)
        for (int64_t e2 = -R; e2 <= R; ++e2) {
          TruncatedSeries lhs = c.prod({{m1 - e2, e1}, {m2 - e1, e2}});
          TruncatedSeries rhs = sum_over_shift(c, {{m1, e1}, {m2, e2}, {m1 + m2, 0}}, 0);
          record(pent, lhs, rhs, T, tuple_str({{"m1", m1}, {"m2", m2}, {"e1", e1}, {"e2", e2}}));
        }
  rep.results.push_back(pent);

  IdentityResult pent2{"pentagon (shifted-sum form)", true, 0, {}};
  for (int64_t m1 = -R; m1 <= R; ++m1)
    for (int64_t m2 = -R; m2 <= R; ++m2)
      for (int64_t x1 = -R; x1 <= R; ++x1)
        for (int64_t x2 = -R; x2 <= R; ++x2)
          for (int64_t x3 = -R; x3 <= R; ++x3) {
            TruncatedSeries lhs = sum_over_shift(c, {{m1, x1}, {m2, x2}, {m1 + m2, x3}}, 0);
            TruncatedSeries rhs = c.prod({{m1 - x2 + x3, x1 - x3}, {m2 - x1 + x3, x2 - x3}}, -2 * x3);
            record(pent2, lhs, rhs, T,
                   tuple_str({{"m1", m1}, {"m2", m2}, {"x1", x1}, {"x2", x2}, {"x3", x3}}));
          }
  rep.results.push_back(pent2);

  IdentityResult quad{"quadratic", true, 0, {}};
  for (int64_t m = -R; m <= R; ++m)
    for (int64_t cc = -R; cc <= R; ++cc) {
      TruncatedSeries lhs = sum_over_shift(c, {{m, 0}, {m, cc}}, 0);
      record(quad, lhs, cc == 0 ? c.one() : c.zero(), T, tuple_str({{"m", m}, {"c", cc}}));
    }
  rep.results.push_back(quad);

  IdentityResult jquad{"quadratic (J form)", true, 0, {}};
  for (int64_t b = -R; b <= R; ++b)
    for (int64_t cc = -R; cc <= R; ++cc)
      for (int64_t x = -R; x <= R; ++x) {
        // J(a,b,c) J(a+x,b,c) q^a = q^(a-b) I(b-c,a-b) I(b-c,a-b+x); sum over e = a-b
        TruncatedSeries lhs = sum_over_shift(c, {{b - cc, 0}, {b - cc, x}}, 0);
        record(jquad, lhs, x == 0 ? c.one() : c.zero(), T, tuple_str({{"b", b}, {"c", cc}, {"x", x}}));
      }
  rep.results.push_back(jquad);
  return rep;
}

namespace {

// floor((a - sqrt(D)) / d), d > 0, D >= 0
int64_t floor_minus_sqrt(int64_t a, int64_t D, int64_t d) {
  auto ok = [&](int64_t x) {  // d*x <= a - sqrt(D)
    int64_t t = a - d * x;
    return t >= 0 && t * t >= D;
  };
  int64_t x = int64_t(std::floor((double(a) - std::sqrt(double(D))) / double(d)));
  while (!ok(x)) --x;
  while (ok(x + 1)) ++x;
  return x;
}

// ceil((a + sqrt(D)) / d), d > 0, D >= 0
int64_t ceil_plus_sqrt(int64_t a, int64_t D, int64_t d) {
  auto ok = [&](int64_t x) {  // d*x >= a + sqrt(D)
    int64_t t = d * x - a;
    return t >= 0 && t * t >= D;
  };
  int64_t x = int64_t(std::ceil((double(a) + std::sqrt(double(D))) / double(d)));
  while (!ok(x)) ++x;
  while (ok(x - 1)) --x;
  return x;
}

} // namespace

std::pair<int64_t, int64_t> diagonal_range(DiagonalRange which, int64_t k, int64_t N) {
  const int64_t disc = 1 - 4 * k + 8 * k * k + 8 * N;
  int64_t lo = floor_minus_sqrt(2 * k - 1, disc, 2);
  int64_t hi = which == DiagonalRange::printed ? ceil_plus_sqrt(-1, 1 + 8 * N, 4) : ceil_plus_sqrt(2 * k - 1, disc, 2);
  return {lo, hi};
}

RangeCheck check_diagonal_range(DiagonalRange which, int max_order, int max_k) {
  RangeCheck r;
  r.name = which == DiagonalRange::printed ? "diagonal n-range, printed bounds" : "diagonal n-range, larger-root upper bound";
  for (int64_t N = 0; N <= max_order; ++N) {
    for (int64_t k = -max_k; k <= max_k; ++k) {
      auto [lo, hi] = diagonal_range(which, k, N);
      const int64_t n0 = k < 0 ? -k : 0;
      for (int64_t n = n0;; ++n) {
        int64_t E = n * (n + 1) - (2 * n + k) * k;  // half units
        if (n >= k && E > 2 * N) break;
        if (E > 2 * N) continue;
        ++r.checked;
        if ((n < lo || n > hi) && r.pass) {
          r.pass = false;
          std::ostringstream os;
          os << "N=" << N << " k=" << k << " n=" << n << " has exponent " << HalfInt{E}.str()
             << " <= N but lies outside [" << lo << ", " << hi << "]";
          r.counterexample = os.str();
        }
      }
    }
  }
  return r;
}

} // namespace tdi
