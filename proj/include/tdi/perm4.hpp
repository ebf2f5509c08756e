#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace tdi {

// Permutation of {0,1,2,3}; p[i] is the image of i.
struct Perm4 {
  std::array<uint8_t, 4> p{0, 1, 2, 3};

  static Perm4 identity() { return Perm4{}; }
  static Perm4 from(int a, int b, int c, int d) { return Perm4{{uint8_t(a), uint8_t(b), uint8_t(c), uint8_t(d)}}; }
  // "0213" style; throws std::invalid_argument.
  static Perm4 parse(const std::string& s);
  // Transposition of i and j.
  static Perm4 swap(int i, int j);
  // All 24, in lexicographic order of their image strings.
  static const std::array<Perm4, 24>& all();

  int operator[](int i) const { return p[size_t(i)]; }
  Perm4 inverse() const;
  // +1 or -1
  int sign() const;
  bool even() const { return sign() > 0; }
  std::string str() const;

  // (a * b)[i] = a[b[i]]
  friend Perm4 operator*(const Perm4& a, const Perm4& b);
  friend bool operator==(const Perm4&, const Perm4&) = default;
  friend auto operator<=>(const Perm4&, const Perm4&) = default;
};

// Edge numbering of a tetrahedron: 01, 02, 03, 12, 13, 23.
int edge_index(int u, int v);
std::pair<int, int> edge_vertices(int e);
// Quad type facing edge e: 0 = q (01/23), 1 = q' (02/13), 2 = q'' (03/12).
int quad_of_edge(int e);

} // namespace tdi
