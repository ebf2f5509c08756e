#include "tdi/tetindex.hpp"

#include <algorithm>
#include <mutex>

#include "tdi/errors.hpp"

namespace tdi {

namespace {
int64_t pos(int64_t x) { return x > 0 ? x : 0; }

// exponent of the n-th term, half units
int64_t term_exp(int64_t n, int64_t m, int64_t e) { return n * (n + 1) - (2 * n + e) * m; }

// s /= (1 - q^k) on integer powers
void divide_one_minus(std::vector<mpz_class>& s, size_t k) {
  for (size_t i = k; i < s.size(); ++i) s[i] += s[i - k];
}
} // namespace

int64_t degree_h(int64_t m, int64_t e) {
  return pos(m) * pos(m + e) + pos(-m) * pos(e) + pos(-e) * pos(-e - m) + std::max<int64_t>({0, m, -e});
}

HalfInt degree(int64_t m, int64_t e) { return HalfInt{degree_h(m, e)}; }

int64_t degree_J_h(int64_t a, int64_t b, int64_t c) { return -b + degree_h(b - c, a - b); }

TruncatedSeries compute_tet_index(int64_t m, int64_t e, int64_t T) {
  if (T >= kExactOrder) throw Error("tet_index needs a finite order");
  if (degree_h(m, e) > T) return TruncatedSeries::zero(T);

  const int64_t n0 = pos(-e);
  // Terms past n = m have increasing exponent, so stop at the first one above T.
  std::vector<int64_t> exps;
  for (int64_t n = n0;; ++n) {
    int64_t E = term_exp(n, m, e);
    if (n >= m && E > T) break;
    exps.push_back(E);
  }
  const size_t count = exps.size();
  // longest tail each term still needs, as a suffix max
  std::vector<int64_t> need(count + 1, -1);
  for (size_t i = count; i-- > 0;) {
    int64_t L = exps[i] <= T ? (T - exps[i]) / 2 : -1;
    need[i] = std::max(need[i + 1], L);
  }
  if (need[0] < 0) return TruncatedSeries::zero(T);

  int64_t lo = INT64_MAX;
  for (auto E : exps)
    if (E <= T) lo = std::min(lo, E);
  std::vector<mpz_class> out(size_t(T - lo + 1));

  // s = 1/((q)_n (q)_{n+e}) on integer powers
  std::vector<mpz_class> s(size_t(need[0] + 1));
  s[0] = 1;
  for (int64_t i = 1; i <= n0; ++i) divide_one_minus(s, size_t(i));
  for (int64_t i = 1; i <= n0 + e; ++i) divide_one_minus(s, size_t(i));

  for (size_t idx = 0; idx < count; ++idx) {
    const int64_t n = n0 + int64_t(idx);
    const int64_t E = exps[idx];
    if (E <= T) {
      int64_t L = (T - E) / 2;
      mpz_class* o = out.data() + (E - lo);
      if (n % 2 == 0)
        for (int64_t i = 0; i <= L; ++i) o[2 * i] += s[size_t(i)];
      else
        for (int64_t i = 0; i <= L; ++i) o[2 * i] -= s[size_t(i)];
    }
    if (idx + 1 == count) break;
    if (need[idx + 1] + 1 < int64_t(s.size())) s.resize(size_t(need[idx + 1] + 1));
    divide_one_minus(s, size_t(n + 1));
    divide_one_minus(s, size_t(n + 1 + e));
  }
  return TruncatedSeries::from_dense(lo, std::move(out), T);
}

TruncatedSeries TetIndexCache::get(int64_t m, int64_t e, int64_t order_h) {
  auto key = std::make_pair(m, e);
  {
    std::shared_lock lk(mu_);
    auto it = table_.find(key);
    if (it != table_.end() && it->second.order_h() >= order_h) return it->second.truncated(order_h);
  }
  TruncatedSeries s = compute_tet_index(m, e, order_h);
  {
    std::unique_lock lk(mu_);
    auto it = table_.find(key);
    if (it == table_.end()) table_.emplace(key, s);
    else if (it->second.order_h() < order_h) it->second = s;
  }
  return s;
}

size_t TetIndexCache::size() const {
  std::shared_lock lk(mu_);
  return table_.size();
}

void TetIndexCache::clear() {
  std::unique_lock lk(mu_);
  table_.clear();
}

TetIndexCache& global_tet_cache() {
  static TetIndexCache cache;
  return cache;
}

TruncatedSeries tet_index_h(int64_t m, int64_t e, int64_t order_h, TetIndexCache& cache) {
  return cache.get(m, e, order_h);
}

TruncatedSeries tet_index(int64_t m, int64_t e, HalfInt order) {
  return global_tet_cache().get(m, e, order.twice);
}

TruncatedSeries tet_index_J_h(int64_t a, int64_t b, int64_t c, int64_t order_h, TetIndexCache& cache) {
  // exponents of J are those of I shifted by -b half units
  return scale_by_signed_half_power(cache.get(b - c, a - b, order_h + b), -b);
}

TruncatedSeries tet_index_J(HalfInt a, HalfInt b, HalfInt c, HalfInt order) {
  if ((a - b).twice % 2 != 0 || (b - c).twice % 2 != 0)
    throw NonIntegralDifference("J arguments " + a.str() + ", " + b.str() + ", " + c.str() +
                                " do not differ by integers");
  if (!b.is_integer())
    throw OffGrid("J with half-integer arguments leaves the q^(1/2) grid: (-q^(1/2))^(-" + b.str() + ")");
  return tet_index_J_h(a.twice / 2, b.twice / 2, c.twice / 2, order.twice, global_tet_cache());
}

TruncatedSeries tet_product(const std::vector<ChargePair>& factors, int64_t shift_h, int64_t order_h,
                            TetIndexCache& cache) {
  int64_t total = shift_h;
  std::vector<int64_t> deg(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) {
    deg[i] = degree_h(factors[i].m, factors[i].e);
    total += deg[i];
  }
  if (total > order_h) return TruncatedSeries::zero(order_h);
  // each factor is needed up to its own degree plus the slack left by the others
  const int64_t slack = order_h - total;
  TruncatedSeries acc = TruncatedSeries::monomial(1, shift_h);
  for (size_t i = 0; i < factors.size(); ++i) {
    TruncatedSeries f = cache.get(factors[i].m, factors[i].e, deg[i] + slack);
    acc = mul(acc, f, order_h);
  }
  return acc.truncated(order_h);
}

} // namespace tdi
