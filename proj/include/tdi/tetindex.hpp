#pragma once

#include <cstdint>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "tdi/qlaurent.hpp"

namespace tdi {

struct ChargePair {
  int64_t m = 0;
  int64_t e = 0;
};

// delta(m,e), the exact minimum q-degree of I(m,e).
HalfInt degree(int64_t m, int64_t e);
// 2*delta(m,e).
int64_t degree_h(int64_t m, int64_t e);
// Minimum exponent of J(a,b,c) in half units, integer arguments.
int64_t degree_J_h(int64_t a, int64_t b, int64_t c);

// Direct evaluation of I(m,e) through order_h (half units), no memo.
TruncatedSeries compute_tet_index(int64_t m, int64_t e, int64_t order_h);

// Memo table keyed by (m,e). Keeps the highest order computed and truncates on lookup.
class TetIndexCache {
public:
  TruncatedSeries get(int64_t m, int64_t e, int64_t order_h);
  size_t size() const;
  void clear();

private:
  struct KeyHash {
    size_t operator()(const std::pair<int64_t, int64_t>& k) const {
      return std::hash<int64_t>()(k.first * 1000003 + k.second);
    }
  };
  mutable std::shared_mutex mu_;
  std::unordered_map<std::pair<int64_t, int64_t>, TruncatedSeries, KeyHash> table_;
};

TetIndexCache& global_tet_cache();

TruncatedSeries tet_index(int64_t m, int64_t e, HalfInt order);
TruncatedSeries tet_index_h(int64_t m, int64_t e, int64_t order_h, TetIndexCache& cache);

// J(a,b,c) = (-q^(1/2))^(-b) I(b-c, a-b).
TruncatedSeries tet_index_J(HalfInt a, HalfInt b, HalfInt c, HalfInt order);
TruncatedSeries tet_index_J_h(int64_t a, int64_t b, int64_t c, int64_t order_h, TetIndexCache& cache);

// q^(shift_h/2) * prod_i I(m_i, e_i), exact through order_h.
TruncatedSeries tet_product(const std::vector<ChargePair>& factors, int64_t shift_h, int64_t order_h,
                            TetIndexCache& cache);

// Identity checks.

struct IdentityResult {
  std::string name;
  bool pass = true;
  size_t checked = 0;
  std::string counterexample;
};

struct IdentityReport {
  std::vector<IdentityResult> results;
  bool all_pass() const;
  std::string str() const;
};

IdentityReport verify_identities(int range, HalfInt order);

// Integers x with f(x) <= bound for a convex f that tends to infinity both ways.
template <class F>
std::vector<int64_t> convex_window(F f, int64_t bound, int64_t start = 0);

// Check of an explicit n-range for the I(k,k) summation: for every k and order N <= max_order,
// report whether the range [lo(k,N), hi(k,N)] contains every n whose term has exponent <= N.
struct RangeCheck {
  std::string name;
  bool pass = true;
  size_t checked = 0;
  std::string counterexample;
};

enum class DiagonalRange { printed, corrected };
RangeCheck check_diagonal_range(DiagonalRange which, int max_order, int max_k);
// [lo, hi] for n at the given k and order N.
std::pair<int64_t, int64_t> diagonal_range(DiagonalRange which, int64_t k, int64_t N);

} // namespace tdi

#include "tdi/detail/window.hpp"
