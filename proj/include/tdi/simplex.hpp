#pragma once

#include <vector>

#include "tdi/intlinalg.hpp"

namespace tdi {

struct LPResult {
  enum class Status { optimal, infeasible, unbounded } status = Status::infeasible;
  std::vector<mpq_class> x;  // primal, one per column
  std::vector<mpq_class> y;  // duals, one per row, y^T A >= c at optimality
  mpq_class value;
};

// maximize c.x subject to A x = b, x >= 0, over the rationals.
// Two phases, Bland's rule throughout.
LPResult solve_lp(const QMatrix& A, const std::vector<mpq_class>& b, const std::vector<mpq_class>& c);

} // namespace tdi
