#include "tdi/formats.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "tdi/errors.hpp"

namespace tdi {

namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  std::string s;
  int n = 0;
  while (std::getline(is, s)) {
    ++n;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos || s[a] == '#') continue;
    size_t b = s.find_last_not_of(" \t");
    out.push_back({n, s.substr(a, b - a + 1)});
  }
  return out;
}

void expect_header(const std::vector<Line>& lines, const std::string& header) {
  if (lines.empty()) throw ParseError("empty input, expected header '" + header + "'");
  if (lines[0].text != header)
    throw ParseError("expected header '" + header + "', got '" + lines[0].text + "'", lines[0].number);
}

std::vector<int64_t> int_row(const Line& l, int expected, const std::string& what) {
  std::istringstream is(l.text);
  std::vector<int64_t> row;
  std::string tok;
  while (is >> tok) {
    size_t pos = 0;
    int64_t v;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError(what + ": '" + tok + "' is not an integer", l.number);
    }
    if (pos != tok.size()) throw ParseError(what + ": '" + tok + "' is not an integer", l.number);
    row.push_back(v);
  }
  if (expected >= 0 && int(row.size()) != expected)
    throw ParseError(what + ": expected " + std::to_string(expected) + " integers, got " + std::to_string(row.size()),
                     l.number);
  return row;
}

} // namespace

CombTriangulation parse_tri(const std::string& text) {
  auto lines = content_lines(text);
  expect_header(lines, "tri v1");
  if (lines.size() < 2) throw ParseError("missing 'tets N' line");
  static const std::regex tets_re(R"(tets\s+(\d+))");
  std::smatch m;
  if (!std::regex_match(lines[1].text, m, tets_re)) throw ParseError("expected 'tets N'", lines[1].number);
  const int n = std::stoi(m[1]);
  if (n <= 0) throw ParseError("tet count must be positive", lines[1].number);
  if (int(lines.size()) != n + 2)
    throw ParseError("expected " + std::to_string(n) + " tet lines, got " + std::to_string(lines.size() - 2),
                     lines.back().number);

  static const std::regex tet_re(R"(tet\s+(\d+)\s*:(.*))");
  static const std::regex face_re(R"(\s*f([0-3])\s*->\s*\(\s*(\d+)\s*,\s*([0-9]{4})\s*\)\s*)");
  CombTriangulation t(n);
  std::vector<std::array<FaceGluing, 4>> raw(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Line& l = lines[size_t(j + 2)];
    if (!std::regex_match(l.text, m, tet_re)) throw ParseError("expected 'tet j: ...'", l.number);
    if (std::stoi(m[1]) != j) throw ParseError("expected tet " + std::to_string(j), l.number);
    std::string rest = m[2];
    std::vector<std::string> parts;
    std::istringstream is(rest);
    std::string part;
    while (std::getline(is, part, ';')) parts.push_back(part);
    if (parts.size() != 4) throw ParseError("expected 4 face entries separated by ';'", l.number);
    for (int f = 0; f < 4; ++f) {
      std::smatch fm;
      if (!std::regex_match(parts[size_t(f)], fm, face_re))
        throw ParseError("malformed face entry '" + parts[size_t(f)] + "'", l.number);
      if (std::stoi(fm[1]) != f) throw ParseError("expected face f" + std::to_string(f), l.number);
      int target = std::stoi(fm[2]);
      if (target >= n) throw ParseError("target tet " + std::to_string(target) + " out of range", l.number);
      Perm4 p;
      try {
        p = Perm4::parse(fm[3]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), l.number);
      }
      raw[size_t(j)][size_t(f)] = FaceGluing{target, p};
    }
  }
  for (int j = 0; j < n; ++j)
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = raw[size_t(j)][size_t(f)];
      const FaceGluing& back = raw[size_t(g.tet)][size_t(g.perm[f])];
      if (back.tet != j || back.perm != g.perm.inverse())
        throw ParseError("InvariantViolation: gluing of tet " + std::to_string(j) + " face " + std::to_string(f) +
                             " does not match its reverse",
                         lines[size_t(j + 2)].number);
      t.glue(j, f, g.tet, g.perm);
    }
  try {
    t.validate();
  } catch (const InvariantViolation& e) {
    throw ParseError(std::string("InvariantViolation: ") + e.what());
  }
  return t;
}

GluingData parse_nz(const std::string& text) {
  auto lines = content_lines(text);
  expect_header(lines, "nz v1");
  if (lines.size() < 2) throw ParseError("missing 'N n cusps r' line");
  static const std::regex dims_re(R"(N\s+(\d+)\s+cusps\s+(\d+))");
  std::smatch m;
  if (!std::regex_match(lines[1].text, m, dims_re)) throw ParseError("expected 'N n cusps r'", lines[1].number);
  GluingData g;
  g.N = std::stoi(m[1]);
  g.r = std::stoi(m[2]);
  if (g.N <= 0 || g.r <= 0) throw ParseError("N and cusps must be positive", lines[1].number);
  const size_t need = size_t(3 * g.N + g.r);
  if (lines.size() - 2 != need)
    throw ParseError("expected " + std::to_string(need) + " matrix rows, got " + std::to_string(lines.size() - 2),
                     lines.back().number);
  size_t k = 2;
  for (IntMatrix* mat : {&g.abar, &g.bbar, &g.cbar}) {
    const char* name = mat == &g.abar ? "Abar" : mat == &g.bbar ? "Bbar" : "Cbar";
    for (int i = 0; i < g.N; ++i) mat->push_back(int_row(lines[k++], g.N, name));
  }
  for (int h = 0; h < g.r; ++h) g.cusp.push_back(int_row(lines[k++], g.N, "C"));
  try {
    g.validate();
  } catch (const InvariantViolation& e) {
    throw ParseError(std::string("InvariantViolation: ") + e.what());
  }
  return g;
}

PeripheralVector parse_peri(const std::string& text, int expected_n) {
  auto lines = content_lines(text);
  expect_header(lines, "peri v1");
  if (lines.size() != 4)
    throw ParseError("expected 3 rows (abar, bbar, cbar), got " + std::to_string(lines.size() - 1),
                     lines.back().number);
  PeripheralVector p;
  p.abar = int_row(lines[1], expected_n, "abar");
  int n = int(p.abar.size());
  p.bbar = int_row(lines[2], n, "bbar");
  p.cbar = int_row(lines[3], n, "cbar");
  return p;
}

std::string serialize_tri(const CombTriangulation& t) {
  std::ostringstream os;
  os << "tri v1\ntets " << t.size() << "\n";
  for (int j = 0; j < t.size(); ++j) {
    os << "tet " << j << ":";
    for (int f = 0; f < 4; ++f) {
      const FaceGluing& g = t.gluing(j, f);
      os << (f ? " ;" : "") << " f" << f << " -> (" << g.tet << ", " << g.perm.str() << ")";
    }
    os << "\n";
  }
  return os.str();
}

namespace {
void put_matrix(std::ostringstream& os, const IntMatrix& m) {
  for (auto& row : m) {
    for (size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << "\n";
  }
}
} // namespace

std::string serialize_nz(const GluingData& g) {
  std::ostringstream os;
  os << "nz v1\nN " << g.N << " cusps " << g.r << "\n";
  put_matrix(os, g.abar);
  put_matrix(os, g.bbar);
  put_matrix(os, g.cbar);
  put_matrix(os, g.cusp);
  return os.str();
}

std::string serialize_peri(const PeripheralVector& p) {
  std::ostringstream os;
  os << "peri v1\n";
  put_matrix(os, IntMatrix{p.abar, p.bbar, p.cbar});
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

LoadedInput parse_input(const std::string& text) {
  for (const Line& l : content_lines(text)) {
    if (l.text == "tri v1") {
      LoadedInput in;
      in.tri = parse_tri(text);
      in.gluing = derive_gluing_data(*in.tri);
      return in;
    }
    if (l.text == "nz v1") return LoadedInput{std::nullopt, parse_nz(text)};
    throw ParseError("unknown header '" + l.text + "', expected 'tri v1' or 'nz v1'", l.number);
  }
  throw ParseError("empty input");
}

LoadedInput load_input(const std::string& path) {
  try {
    return parse_input(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

} // namespace tdi
