#pragma once

#include <algorithm>
#include <vector>

#include "tdi/errors.hpp"

namespace tdi {

template <class F>
std::vector<int64_t> convex_window(F f, int64_t bound, int64_t start) {
  const int64_t guard = 1000000;
  std::vector<int64_t> out;
  // right side, starting at start
  int64_t x = start;
  for (int64_t steps = 0;; ++steps, ++x) {
    if (steps > guard) throw Error("convex_window: no termination");
    int64_t v = f(x);
    if (v <= bound) out.push_back(x);
    else if (f(x + 1) >= v) break;
  }
  x = start - 1;
  for (int64_t steps = 0;; ++steps, --x) {
    if (steps > guard) throw Error("convex_window: no termination");
    int64_t v = f(x);
    if (v <= bound) out.push_back(x);
    else if (f(x - 1) >= v) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace tdi
