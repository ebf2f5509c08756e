#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tdi/intlinalg.hpp"
#include "tdi/perm4.hpp"

namespace tdi {

struct FaceGluing {
  int tet = -1;  // -1: unglued
  Perm4 perm;    // sends the vertices of this tet to those of the target
  friend bool operator==(const FaceGluing&, const FaceGluing&) = default;
};

// Oriented ideal tetrahedra with face pairings. Face f is opposite vertex f.
class CombTriangulation {
public:
  CombTriangulation() = default;
  explicit CombTriangulation(int n) : g_(size_t(n)) {}

  int size() const { return int(g_.size()); }
  const FaceGluing& gluing(int tet, int face) const { return g_.at(size_t(tet))[size_t(face)]; }
  // Glues (tet, face) to (perm, target) and sets the reverse gluing.
  void glue(int tet, int face, int target, Perm4 perm);
  void unglue(int tet, int face);
  int add_tets(int count);

  // Throws InvariantViolation naming the failing check.
  void validate() const;
  // Every gluing odd, so the tets are coherently oriented.
  bool oriented() const;

  friend bool operator==(const CombTriangulation&, const CombTriangulation&) = default;

private:
  std::vector<std::array<FaceGluing, 4>> g_;
};

// Tet edge uv seen from a particular tet; a and b are the two other vertices.
// Walking the edge leaves through the face opposite a.
struct EdgeIncidence {
  int tet = 0;
  int u = 0, v = 0, a = 0, b = 0;
  int edge() const { return edge_index(u, v); }
  int slot() const { return 6 * tet + edge(); }
};

struct EdgeClass {
  std::vector<EdgeIncidence> inc;  // cyclic order around the edge
  int degree() const { return int(inc.size()); }
  // Quad types (0,1,2) in cyclic order.
  std::vector<int> quad_sequence() const;
};

struct EdgeTable {
  std::vector<EdgeClass> classes;  // sorted by smallest slot
  std::vector<int> slot_class;     // 6*tet + edge -> class
};

struct CuspTable {
  int count = 0;
  std::vector<int> vertex_cusp;  // 4*tet + vertex -> cusp, sorted by smallest slot
};

// Walks the incidences of the edge through (tet, u, v, a, b) in cyclic order.
std::vector<EdgeIncidence> walk_edge(const CombTriangulation& t, EdgeIncidence start);
// Throws EdgeCountMismatch when the class count differs from the tet count.
EdgeTable derive_edge_classes(const CombTriangulation& t, bool require_count = true);
CuspTable derive_cusps(const CombTriangulation& t);

enum class Quad : int { q = 0, qp = 1, qpp = 2 };

struct QuadChoice {
  std::vector<Quad> choice;
  std::string str() const;
};

struct ReducedNZ {
  IntMatrix A, B;
  std::vector<int64_t> nu;
};

struct GluingData {
  int N = 0;
  int r = 0;
  IntMatrix abar, bbar, cbar;  // N x N, edge rows, tet columns
  IntMatrix cusp;              // r x N, entries 0..2

  const IntMatrix& quad_matrix(Quad k) const { return k == Quad::q ? abar : k == Quad::qp ? bbar : cbar; }
  std::vector<int64_t> degrees() const;
  // Throws InvariantViolation naming the failing check.
  void validate() const;
  friend bool operator==(const GluingData&, const GluingData&) = default;
};

// Edge rows are the edge classes, columns the tets; cusps from vertex classes.
GluingData derive_gluing_data(const CombTriangulation& t);

// Eliminates the chosen quad of every tet.
ReducedNZ eliminate_quad(const GluingData& g, const QuadChoice& qc);
QuadChoice all_qprime(int N);

struct PeripheralVector {
  std::vector<int64_t> abar, bbar, cbar;

  static PeripheralVector zero(int N);
  int size() const { return int(abar.size()); }
  std::vector<int64_t> a() const;
  std::vector<int64_t> b() const;
  int64_t nu() const;
  void validate(int N) const;
  friend bool operator==(const PeripheralVector&, const PeripheralVector&) = default;
};

} // namespace tdi
