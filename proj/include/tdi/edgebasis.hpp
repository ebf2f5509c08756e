#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "tdi/triangulation.hpp"

namespace tdi {

// Vertices are cusps, edges are edge classes; a column of C with a 2 is a loop.
struct EdgeCuspGraph {
  struct Edge {
    int u = -1, v = -1;
    bool loop() const { return u == v; }
  };
  int vertices = 0;
  std::vector<Edge> edges;

  static EdgeCuspGraph from(const GluingData& g);
};

struct BasisSelection {
  std::vector<int> excluded;  // r edges, increasing
  std::vector<int> basic;     // N - r edges, increasing

  static BasisSelection from_excluded(int N, std::vector<int> excluded);
  std::string str() const;
};

// Excluded set: a maximal tree plus a loop, or plus the third edge of a triangle.
BasisSelection select_basis(const GluingData& g);

struct BasisValidation {
  bool valid = false;
  mpz_class index;  // of the span of the basic rows inside the row lattice
};

// Rows are those of (A|B) from the all-q' elimination. Throws RankDeficient.
BasisValidation validate_basis(const GluingData& g, const BasisSelection& sel);

struct ExcludedRow {
  int edge = 0;
  std::vector<int64_t> coeffs;  // over all edges, zero on the excluded ones
  std::string str() const;
};

// Integer combinations of basic rows giving each excluded row, by collapsing tree edges
// of the edge-cusp graph. Throws OddCoefficient if a final division by 2 is not exact.
std::vector<ExcludedRow> express_excluded_rows(const GluingData& g, const BasisSelection& sel);

} // namespace tdi
