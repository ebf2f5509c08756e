#pragma once

#include <optional>
#include <string>

#include "tdi/triangulation.hpp"

namespace tdi {

// Text formats. Lines starting with '#' and blank lines are ignored.
//   tri v1:  "tets N", then "tet j: f0 -> (t, pppp) ; f1 -> ... ; f3 -> (t, pppp)"
//   nz v1:   "N n cusps r", rows of Abar, Bbar, Cbar, then rows of C
//   peri v1: three rows of N integers (abar, bbar, cbar)
CombTriangulation parse_tri(const std::string& text);
GluingData parse_nz(const std::string& text);
// expected_n < 0 accepts any length.
PeripheralVector parse_peri(const std::string& text, int expected_n = -1);

std::string serialize_tri(const CombTriangulation& t);
std::string serialize_nz(const GluingData& g);
std::string serialize_peri(const PeripheralVector& p);

std::string read_file(const std::string& path);

// A triangulation file or a gluing-data file, told apart by the header.
struct LoadedInput {
  std::optional<CombTriangulation> tri;
  GluingData gluing;
};
LoadedInput load_input(const std::string& path);
LoadedInput parse_input(const std::string& text);

inline constexpr const char* kFormatVersions = "tri v1 / nz v1 / peri v1";

} // namespace tdi
