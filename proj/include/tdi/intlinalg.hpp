#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace tdi {

using IntMatrix = std::vector<std::vector<int64_t>>;
using ZMatrix = std::vector<std::vector<mpz_class>>;
using QMatrix = std::vector<std::vector<mpq_class>>;

ZMatrix to_z(const IntMatrix& m);
IntMatrix select_rows(const IntMatrix& m, const std::vector<int>& rows);
// [a | b], same row count.
IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);

// Rank over the rationals.
int rank(const ZMatrix& m);
inline int rank(const IntMatrix& m) { return rank(to_z(m)); }

// Nonzero diagonal of the Smith normal form, each dividing the next.
std::vector<mpz_class> smith_invariants(ZMatrix m);

// Some x with x * M = b over the rationals (row combination), or nothing.
std::optional<std::vector<mpq_class>> solve_left(const QMatrix& M, const std::vector<mpq_class>& b);

} // namespace tdi
