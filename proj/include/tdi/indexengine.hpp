#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tdi/edgebasis.hpp"
#include "tdi/qlaurent.hpp"
#include "tdi/tetindex.hpp"
#include "tdi/triangulation.hpp"

namespace tdi {

struct IndexOptions {
  int threads = 1;
  // Shells of the L-inf box with no point of degree <= order before stopping.
  int shell_margin = 4;
  // Largest shell radius tried; default 16*(order+1).
  std::optional<int64_t> guard_radius;
  // Refuse selections whose rows span a proper sublattice.
  bool require_valid_basis = true;
};

struct IndexJob {
  GluingData gluing;
  BasisSelection basis;
  PeripheralVector peripheral;
  HalfInt order;
  IndexOptions options;
};

// Basis from select_basis, zero peripheral vector.
IndexJob make_job(const GluingData& g, HalfInt order, const IndexOptions& opt = {});

// Lattice parametrisation k = offset + sum_c t_c * cols[c] of the edge weights k in Z^N.
struct LatticeMap {
  std::vector<int64_t> offset;           // N
  std::vector<std::vector<int64_t>> cols;  // d vectors of length N

  static LatticeMap basic_edges(int N, const BasisSelection& sel);
  std::vector<int64_t> apply(const std::vector<int64_t>& t) const;
};

// q^(sum k) prod_j J(abar_j(k), bbar_j(k), cbar_j(k)), k over all N edges.
TruncatedSeries summand_full(const GluingData& g, const PeripheralVector& w, const std::vector<int64_t>& k,
                             int64_t order_h, TetIndexCache& cache);
// Lower bound on its least exponent, half units.
int64_t summand_degree_full_h(const GluingData& g, const PeripheralVector& w, const std::vector<int64_t>& k);

// k given on the basic edges only.
TruncatedSeries summand(const IndexJob& job, const std::vector<int64_t>& k_basic);
HalfInt summand_degree(const IndexJob& job, const std::vector<int64_t>& k_basic);

// Parameters t with summand degree <= order, in shell order. Throws Divergent.
std::vector<std::vector<int64_t>> enumerate_lattice(const GluingData& g, const PeripheralVector& w,
                                                    const LatticeMap& map, HalfInt order, const IndexOptions& opt);
std::vector<std::vector<int64_t>> enumerate_support(const IndexJob& job);

TruncatedSeries compute_index(const IndexJob& job);
// Sum over an arbitrary set of coset representatives given as a lattice map.
TruncatedSeries compute_index_coset_sum(const GluingData& g, const PeripheralVector& w, const LatticeMap& reps,
                                        HalfInt order, const IndexOptions& opt = {});

} // namespace tdi
