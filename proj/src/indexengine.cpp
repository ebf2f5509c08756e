#include "tdi/indexengine.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "tdi/errors.hpp"

namespace tdi {

IndexJob make_job(const GluingData& g, HalfInt order, const IndexOptions& opt) {
  return IndexJob{g, select_basis(g), PeripheralVector::zero(g.N), order, opt};
}

LatticeMap LatticeMap::basic_edges(int N, const BasisSelection& sel) {
  LatticeMap m;
  m.offset.assign(size_t(N), 0);
  for (int i : sel.basic) {
    std::vector<int64_t> c(size_t(N), 0);
    c[size_t(i)] = 1;
    m.cols.push_back(std::move(c));
  }
  return m;
}

std::vector<int64_t> LatticeMap::apply(const std::vector<int64_t>& t) const {
  std::vector<int64_t> k = offset;
  for (size_t c = 0; c < cols.size(); ++c)
    if (t[c] != 0)
      for (size_t i = 0; i < k.size(); ++i) k[i] += t[c] * cols[c][i];
  return k;
}

namespace {

struct Charges {
  std::vector<ChargePair> factors;
  int64_t shift_h = 0;
  bool negative = false;
};

Charges charges(const GluingData& g, const PeripheralVector& w, const std::vector<int64_t>& k) {
  const size_t N = size_t(g.N);
  Charges c;
  int64_t ksum = 0, bsum = 0;
  for (size_t i = 0; i < N; ++i) ksum += k[i];
  for (size_t j = 0; j < N; ++j) {
    int64_t a = w.abar[j], b = w.bbar[j], cc = w.cbar[j];
    for (size_t i = 0; i < N; ++i) {
      if (k[i] == 0) continue;
      a += k[i] * g.abar[i][j];
      b += k[i] * g.bbar[i][j];
      cc += k[i] * g.cbar[i][j];
    }
    // J(a,b,c) = (-q^(1/2))^(-b) I(b-c, a-b)
    c.factors.push_back({b - cc, a - b});
    bsum += b;
  }
  c.shift_h = 2 * ksum - bsum;
  c.negative = bsum % 2 != 0;
  return c;
}

} // namespace

TruncatedSeries summand_full(const GluingData& g, const PeripheralVector& w, const std::vector<int64_t>& k,
                             int64_t order_h, TetIndexCache& cache) {
  Charges c = charges(g, w, k);
  TruncatedSeries s = tet_product(c.factors, c.shift_h, order_h, cache);
  return c.negative ? negate(s) : s;
}

int64_t summand_degree_full_h(const GluingData& g, const PeripheralVector& w, const std::vector<int64_t>& k) {
  Charges c = charges(g, w, k);
  int64_t d = c.shift_h;
  for (auto& f : c.factors) d += degree_h(f.m, f.e);
  return d;
}

namespace {
std::vector<int64_t> full_k(const IndexJob& job, const std::vector<int64_t>& k_basic) {
  if (k_basic.size() != job.basis.basic.size()) throw InputError("k has the wrong number of coordinates");
  std::vector<int64_t> k(size_t(job.gluing.N), 0);
  for (size_t i = 0; i < k_basic.size(); ++i) k[size_t(job.basis.basic[i])] = k_basic[i];
  return k;
}
} // namespace

TruncatedSeries summand(const IndexJob& job, const std::vector<int64_t>& k_basic) {
  return summand_full(job.gluing, job.peripheral, full_k(job, k_basic), job.order.twice, global_tet_cache());
}

HalfInt summand_degree(const IndexJob& job, const std::vector<int64_t>& k_basic) {
  return HalfInt{summand_degree_full_h(job.gluing, job.peripheral, full_k(job, k_basic))};
}

std::vector<std::vector<int64_t>> enumerate_lattice(const GluingData& g, const PeripheralVector& w,
                                                    const LatticeMap& map, HalfInt order, const IndexOptions& opt) {
  const int64_t T = order.twice;
  const size_t d = map.cols.size();
  const int64_t guard = opt.guard_radius ? *opt.guard_radius : 16 * (order.floor() + 1);
  std::vector<std::vector<int64_t>> out;
  auto test = [&](const std::vector<int64_t>& t) {
    if (summand_degree_full_h(g, w, map.apply(t)) <= T) {
      out.push_back(t);
      return true;
    }
    return false;
  };
  if (d == 0) {
    test({});
    if (out.empty()) throw Divergent("no lattice point has degree <= order");
    return out;
  }
  int empty_run = 0;
  for (int64_t s = 0;; ++s) {
    if (s > guard)
      throw Divergent("summation region not closed within radius " + std::to_string(guard) +
                      "; the triangulation may not be 1-efficient (see the efficiency command)");
    bool hit = false;
    std::vector<int64_t> t(d);
    if (s == 0) {
      hit = test(t);
    } else {
      // face by face: i is the first coordinate with |t_i| = s
      for (size_t i = 0; i < d; ++i)
        for (int64_t sign : {-1, 1}) {
          std::vector<int64_t> lo(d), hi(d);
          for (size_t c = 0; c < d; ++c) {
            if (c < i) lo[c] = -(s - 1), hi[c] = s - 1;
            else if (c == i) lo[c] = hi[c] = sign * s;
            else lo[c] = -s, hi[c] = s;
          }
          t = lo;
          for (;;) {
            hit = test(t) || hit;
            size_t c = d;
            while (c-- > 0) {
              if (t[c] < hi[c]) {
                ++t[c];
                break;
              }
              t[c] = lo[c];
            }
            if (c == size_t(-1)) break;
          }
        }
    }
    if (hit) empty_run = 0;
    else ++empty_run;
    if (!out.empty() && empty_run >= opt.shell_margin) break;
  }
  return out;
}

std::vector<std::vector<int64_t>> enumerate_support(const IndexJob& job) {
  return enumerate_lattice(job.gluing, job.peripheral, LatticeMap::basic_edges(job.gluing.N, job.basis), job.order,
                           job.options);
}

TruncatedSeries compute_index_coset_sum(const GluingData& g, const PeripheralVector& w, const LatticeMap& reps,
                                        HalfInt order, const IndexOptions& opt) {
  w.validate(g.N);
  auto points = enumerate_lattice(g, w, reps, order, opt);
  const int64_t T = order.twice;
  const size_t nt = size_t(std::max(1, opt.threads));
  // fixed chunking, independent of the thread count
  const size_t chunk = 64;
  const size_t nchunks = (points.size() + chunk - 1) / chunk;
  std::vector<TruncatedSeries> partial(nchunks, TruncatedSeries::zero(T));
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    try {
      for (;;) {
        size_t c = next.fetch_add(1);
        if (c >= nchunks) return;
        TruncatedSeries acc = TruncatedSeries::zero(T);
        for (size_t p = c * chunk; p < std::min(points.size(), (c + 1) * chunk); ++p)
          add_into(acc, summand_full(g, w, reps.apply(points[p]), T, global_tet_cache()));
        partial[c] = std::move(acc);
      }
    } catch (...) {
      std::lock_guard lk(err_mu);
      if (!err) err = std::current_exception();
      next.store(nchunks);
    }
  };
  if (nt == 1) worker();
  else {
    std::vector<std::thread> pool;
    for (size_t i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
  // pairwise tree reduction in chunk order
  for (size_t step = 1; step < nchunks; step *= 2)
    for (size_t i = 0; i + step < nchunks; i += 2 * step) add_into(partial[i], partial[i + step]);
  return nchunks ? partial[0] : TruncatedSeries::zero(T);
}

TruncatedSeries compute_index(const IndexJob& job) {
  if (job.options.require_valid_basis) {
    BasisValidation v = validate_basis(job.gluing, job.basis);
    if (!v.valid)
      throw InputError("basic edges span a sublattice of index " + v.index.get_str() + "; choose another basis");
  }
  return compute_index_coset_sum(job.gluing, job.peripheral, LatticeMap::basic_edges(job.gluing.N, job.basis),
                                 job.order, job.options);
}

} // namespace tdi
