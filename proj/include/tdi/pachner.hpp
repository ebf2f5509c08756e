#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdi/indexengine.hpp"
#include "tdi/triangulation.hpp"

namespace tdi {

enum class MoveKind { two_three, three_two, zero_two, two_zero };
std::string to_string(MoveKind k);
MoveKind parse_move_kind(const std::string& s);

// Locations:
//   two_three  {tet, face}     the face shared with its neighbour
//   three_two  {edge}          a degree-3 edge class
//   two_zero   {edge}          a degree-2 edge class
//   zero_two   {edge, i, j}    the faces between consecutive incidences i,i+1 and j,j+1
//                              of the edge, in the order of derive_edge_classes
struct MoveSpec {
  MoveKind kind = MoveKind::two_three;
  std::vector<int> at;
  std::string str() const;
};
MoveSpec parse_move(const std::string& kind, const std::string& at);

// Empty when the move applies, else the violated clause.
std::optional<std::string> check_preconditions(const CombTriangulation& t, const MoveSpec& mv);

struct MoveResult {
  CombTriangulation tri;
  // The edge the move creates (degree 3 after 2-3, degree 2 after 0-2), -1 otherwise.
  int new_edge = -1;
};

// Throws PreconditionFailed.
MoveResult apply_move_ex(const CombTriangulation& t, const MoveSpec& mv);
CombTriangulation apply_move(const CombTriangulation& t, const MoveSpec& mv);

struct MoveInvarianceReport {
  TruncatedSeries before, after;
  bool equal = false;
  std::string first_difference;
  std::string str() const;
};

MoveInvarianceReport verify_move_invariance(const CombTriangulation& t, const MoveSpec& mv, HalfInt order,
                                            const IndexOptions& opt = {});

// Relabeling-invariant code: least BFS relabeling over start tets and even vertex frames.
std::vector<int> canonical_form(const CombTriangulation& t);
bool isomorphic(const CombTriangulation& a, const CombTriangulation& b);

} // namespace tdi
