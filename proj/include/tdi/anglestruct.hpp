#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tdi/triangulation.hpp"

namespace tdi {

// Angles in units of pi, quad-major per tet: (Z_j, Z'_j, Z''_j) at 3j..3j+2.
struct AngleVector {
  std::vector<mpq_class> angles;
};

enum class AngleClass { not_a_structure, generalised, semi, taut, strict };
std::string to_string(AngleClass c);

AngleClass classify_angle_vector(const GluingData& g, const AngleVector& v);

// The 2N x 3N system M alpha = b: edge rows then tet rows, b = (2,...,2,1,...,1).
QMatrix angle_matrix(const GluingData& g);
std::vector<mpq_class> angle_rhs(const GluingData& g);

// Per tet: triangles t0..t3 then quads q, q', q''.
struct NormalClass {
  std::vector<mpq_class> coords;  // 7N

  static NormalClass zero(int N) { return NormalClass{std::vector<mpq_class>(size_t(7 * N))}; }
  mpq_class& tri(int tet, int v) { return coords[size_t(7 * tet + v)]; }
  mpq_class& quad(int tet, int k) { return coords[size_t(7 * tet + 4 + k)]; }
  const mpq_class& tri(int tet, int v) const { return coords[size_t(7 * tet + v)]; }
  const mpq_class& quad(int tet, int k) const { return coords[size_t(7 * tet + 4 + k)]; }
  void add(const NormalClass& o, const mpq_class& c);
  // All coordinates nonnegative and at most one quad type per tet.
  bool admissible() const;
};

// One equation per (face pairing, corner of the face).
bool satisfies_matching(const CombTriangulation& t, const NormalClass& c);

// Edge elements (one per edge class, in class order) then tet elements.
std::vector<NormalClass> kang_rubinstein_basis(const CombTriangulation& t, const EdgeTable& edges);
std::vector<NormalClass> vertex_link_classes(const CombTriangulation& t);

struct FarkasCertificate {
  std::vector<mpq_class> z;  // edge duals
  std::vector<mpq_class> w;  // tet duals
};

// 2 sum z + sum w.
mpq_class generalized_euler_characteristic(const GluingData& g, const NormalClass& cls, const FarkasCertificate& dual);
// -sum over quads of x_q alpha_q, for a generalised angle structure alpha.
mpq_class euler_characteristic_from_angles(const NormalClass& cls, const AngleVector& alpha);

struct Obstruction {
  QuadChoice choice;
  FarkasCertificate dual;
  mpq_class chi;                      // y.b
  std::vector<mpq_class> quad_coords; // -(w_i + z_j + z_k), 3N
  std::optional<NormalClass> cls;     // needs the triangulation
  std::vector<int64_t> torus_copies;  // vertex-link copies added, per cusp
  bool matched = false;
  bool supported_on_choice = false;
};

struct ChoiceStatus {
  QuadChoice choice;
  bool feasible = false;
  mpq_class best_min_angle;  // optimum of the max-min problem
  AngleVector witness;
};

struct EfficiencyOptions {
  int cap = 12;
  bool force = false;
  bool all_certificates = false;
  int threads = 1;
};

struct EfficiencyReport {
  bool index_structure = false;
  size_t feasible = 0, total = 0;
  std::vector<ChoiceStatus> choices;      // all evaluated choices, lexicographic
  std::vector<Obstruction> obstructions;  // lexicographically first, or all
  std::string str() const;
};

// The quad-choice with index k in lexicographic order (tet 0 most significant; q < q' < q'').
QuadChoice quad_choice_at(int N, size_t k);
// Strict positivity on the chosen quads, by maximizing the least chosen angle.
ChoiceStatus check_quad_choice(const GluingData& g, const QuadChoice& qc, std::optional<Obstruction>* obstruction = nullptr,
                               const CombTriangulation* t = nullptr);

// Throws CapExceeded when N > cap and not forced.
EfficiencyReport has_index_structure(const GluingData& g, const CombTriangulation* t = nullptr,
                                     const EfficiencyOptions& opt = {});

} // namespace tdi
