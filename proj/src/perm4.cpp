#include "tdi/perm4.hpp"

#include <algorithm>
#include <stdexcept>

namespace tdi {

Perm4 Perm4::parse(const std::string& s) {
  if (s.size() != 4) throw std::invalid_argument("permutation must have 4 digits: '" + s + "'");
  Perm4 r;
  bool seen[4] = {false, false, false, false};
  for (size_t i = 0; i < 4; ++i) {
    int d = s[i] - '0';
    if (d < 0 || d > 3 || seen[d]) throw std::invalid_argument("not a permutation of 0123: '" + s + "'");
    seen[d] = true;
    r.p[i] = uint8_t(d);
  }
  return r;
}

Perm4 Perm4::swap(int i, int j) {
  Perm4 r;
  std::swap(r.p[size_t(i)], r.p[size_t(j)]);
  return r;
}

const std::array<Perm4, 24>& Perm4::all() {
  static const std::array<Perm4, 24> table = [] {
    std::array<Perm4, 24> t;
    std::array<uint8_t, 4> a{0, 1, 2, 3};
    size_t k = 0;
    do t[k++].p = a;
    while (std::next_permutation(a.begin(), a.end()));
    return t;
  }();
  return table;
}

Perm4 Perm4::inverse() const {
  Perm4 r;
  for (int i = 0; i < 4; ++i) r.p[p[size_t(i)]] = uint8_t(i);
  return r;
}

int Perm4::sign() const {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[size_t(i)] > p[size_t(j)]) ++inv;
  return inv % 2 ? -1 : 1;
}

std::string Perm4::str() const {
  std::string s(4, '0');
  for (size_t i = 0; i < 4; ++i) s[i] = char('0' + p[i]);
  return s;
}

Perm4 operator*(const Perm4& a, const Perm4& b) {
  Perm4 r;
  for (size_t i = 0; i < 4; ++i) r.p[i] = a.p[b.p[i]];
  return r;
}

int edge_index(int u, int v) {
  static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return table[u][v];
}

std::pair<int, int> edge_vertices(int e) {
  static const int table[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return {table[e][0], table[e][1]};
}

int quad_of_edge(int e) {
  static const int table[6] = {0, 1, 2, 2, 1, 0};
  return table[e];
}

} // namespace tdi
