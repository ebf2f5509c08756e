#pragma once
// Test-only oracles. Written independently of the library's algorithms: naive series in maps,
// union-find edge classes, the I-form index with an explicit nu, and plain box sums.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tdi/qlaurent.hpp"
#include "tdi/triangulation.hpp"

namespace oracle {

// Half-unit exponent -> coefficient, everything above `order_h` dropped.
using Poly = std::map<int64_t, mpz_class>;

void trim(Poly& p, int64_t order_h);
Poly mul(const Poly& a, const Poly& b, int64_t order_h);
Poly add(const Poly& a, const Poly& b);
// Agreement with a library series through order_h.
bool same(const Poly& p, const tdi::TruncatedSeries& s, int64_t order_h);
tdi::TruncatedSeries to_series(const Poly& p, int64_t order_h);

// I(m,e) by direct summation of its defining series, n <= 2*order + 4 + 2(|m| + |e|),
// with 1/(q)_n expanded as a product of geometric series.
Poly tet_index(int64_t m, int64_t e, int64_t order_h);

// Edge classes by union-find over the 6N edge slots; returns the class of each slot,
// classes numbered by smallest slot.
std::vector<int> edge_classes(const tdi::CombTriangulation& t);

// Index in its original form: sum over k in Z^N supported on `basic`, |k_i| <= radius, of
// (-q^{1/2})^{k.nu + nu_w} prod_j I(-b_w,j - k.b_j, a_w,j + k.a_j), for the quad elimination qc.
// Also reports the least half-unit exponent seen on the box boundary.
struct BoxSum {
  Poly value;
  int64_t boundary_min_h = 0;
};
BoxSum index_I_form(const tdi::GluingData& g, const tdi::QuadChoice& qc, const std::vector<int>& basic,
                    const tdi::PeripheralVector& w, int64_t radius, int64_t order_h);

tdi::CombTriangulation load_tri(const std::string& name);
tdi::GluingData load_gluing(const std::string& name);
std::string fixture(const std::string& name);

} // namespace oracle
