// tdindex: 3D index of ideal triangulations, efficiency checks and Pachner moves.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tdi/anglestruct.hpp"
#include "tdi/edgebasis.hpp"
#include "tdi/errors.hpp"
#include "tdi/formats.hpp"
#include "tdi/indexengine.hpp"
#include "tdi/pachner.hpp"
#include "tdi/tetindex.hpp"

using namespace tdi;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kDivergent = 3 };

std::vector<int> parse_edge_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    size_t a = tok.find_first_not_of(" \te");
    if (a == std::string::npos) throw InputError("bad edge list '" + s + "'");
    try {
      out.push_back(std::stoi(tok.substr(a)));
    } catch (const std::exception&) {
      throw InputError("bad edge list '" + s + "'");
    }
  }
  return out;
}

HalfInt order_arg(const std::string& s) {
  HalfInt h;
  try {
    h = parse_half(s);
  } catch (const std::exception&) {
    throw InputError("bad order '" + s + "'");
  }
  if (h.twice < 0) throw InputError("order must be nonnegative");
  return h;
}

void print_coeffs(const TruncatedSeries& s, HalfInt order) {
  auto c = s.integer_coeffs(order.floor());
  for (size_t i = 0; i < c.size(); ++i) std::cout << (i ? " " : "") << c[i].get_str();
  std::cout << "\n";
}

struct IndexArgs {
  std::string file, order = "10", curve, excluded;
  int threads = 1, margin = 4;
  int64_t guard = -1;
  bool coset_check = false, emit = false;
};

int run_index(const IndexArgs& a) {
  LoadedInput in = load_input(a.file);
  IndexOptions opt;
  opt.threads = a.threads;
  opt.shell_margin = a.margin;
  if (a.guard >= 0) opt.guard_radius = a.guard;
  IndexJob job = make_job(in.gluing, order_arg(a.order), opt);
  if (!a.excluded.empty()) job.basis = BasisSelection::from_excluded(in.gluing.N, parse_edge_list(a.excluded));
  if (!a.curve.empty()) job.peripheral = parse_peri(read_file(a.curve), in.gluing.N);
  TruncatedSeries s = compute_index(job);
  if (a.emit) print_coeffs(s, job.order);
  else std::cout << s.str() << "\n";
  if (a.coset_check) {
    // every other single-edge hyperplane choice that passes validation
    int checked = 0;
    bool same = true;
    for (int x = 0; x < in.gluing.N && in.gluing.r == 1; ++x) {
      IndexJob other = job;
      other.basis = BasisSelection::from_excluded(in.gluing.N, {x});
      if (other.basis.excluded == job.basis.excluded) continue;
      TruncatedSeries t = compute_index(other);
      ++checked;
      if (!(t == s)) {
        same = false;
        std::cerr << "coset check: excluding e" << x << " gives " << t.str() << "\n";
      }
    }
    std::cerr << "coset check: " << checked << " other bases, " << (same ? "all agree" : "MISMATCH") << "\n";
    if (!same) return kVerifyFailed;
  }
  return kOk;
}

int run_identities(int range, const std::string& order) {
  IdentityReport rep = verify_identities(range, order_arg(order));
  std::cout << rep.str();
  return rep.all_pass() ? kOk : kVerifyFailed;
}

int run_efficiency(const std::string& file, const EfficiencyOptions& opt) {
  LoadedInput in = load_input(file);
  EfficiencyReport rep = has_index_structure(in.gluing, in.tri ? &*in.tri : nullptr, opt);
  std::cout << rep.str();
  return kOk;
}

int run_basis(const std::string& file, const std::string& excluded) {
  LoadedInput in = load_input(file);
  BasisSelection sel = excluded.empty() ? select_basis(in.gluing)
                                        : BasisSelection::from_excluded(in.gluing.N, parse_edge_list(excluded));
  std::cout << sel.str();
  BasisValidation v = validate_basis(in.gluing, sel);
  if (v.valid) std::cout << "valid (index 1)\n";
  else std::cout << "not a basis: sublattice index " << v.index.get_str() << "\n";
  if (excluded.empty() || v.valid) {
    try {
      for (auto& row : express_excluded_rows(in.gluing, sel)) std::cout << row.str() << "\n";
    } catch (const NoValidCycle&) {
      std::cout << "(selection is not a tree with a 1- or 3-cycle; no collapse expression)\n";
    }
  }
  return kOk;
}

CombTriangulation load_tri(const std::string& file) {
  LoadedInput in = load_input(file);
  if (!in.tri) throw InputError(file + ": moves need a triangulation file (tri v1)");
  return *in.tri;
}

int run_move(const std::string& file, const std::string& kind, const std::string& at, const std::string& out) {
  CombTriangulation t = load_tri(file);
  MoveSpec mv = parse_move(kind, at);
  MoveResult r = apply_move_ex(t, mv);
  std::string text = serialize_tri(r.tri);
  if (out.empty() || out == "-") std::cout << text;
  else {
    std::ofstream os(out);
    if (!os) throw InputError("cannot write '" + out + "'");
    os << text;
  }
  if (r.new_edge >= 0) std::cerr << "new edge: e" << r.new_edge << "\n";
  return kOk;
}

int run_verify_move(const std::string& file, const std::string& kind, const std::string& at, const std::string& order,
                    int threads, bool assume) {
  CombTriangulation t = load_tri(file);
  MoveSpec mv = parse_move(kind, at);
  if (!assume) {
    CombTriangulation moved = apply_move(t, mv);
    for (const CombTriangulation* x : {&t, &moved}) {
      EfficiencyReport e = has_index_structure(derive_gluing_data(*x), x);
      if (!e.index_structure)
        throw InputError(std::string(x == &t ? "input" : "moved") +
                         " triangulation has no index structure; pass --assume-convergent to try anyway");
    }
  }
  IndexOptions opt;
  opt.threads = threads;
  MoveInvarianceReport rep = verify_move_invariance(t, mv, order_arg(order), opt);
  std::cout << rep.str();
  return rep.equal ? kOk : kVerifyFailed;
}

void print_matrix(const char* name, const IntMatrix& m) {
  std::cout << name << "\n";
  for (auto& row : m) {
    for (size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "  ") << row[j];
    std::cout << "\n";
  }
}

int run_parse_check(const std::string& file) {
  LoadedInput in = load_input(file);
  const GluingData& g = in.gluing;
  std::cout << (in.tri ? "tri v1" : "nz v1") << ": N " << g.N << " cusps " << g.r << "\n";
  std::cout << "edge degrees";
  for (auto d : g.degrees()) std::cout << " " << d;
  std::cout << "\n";
  print_matrix("Abar", g.abar);
  print_matrix("Bbar", g.bbar);
  print_matrix("Cbar", g.cbar);
  print_matrix("C", g.cusp);
  std::cout << "invariants ok\n";
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"3D index of ideal triangulations"};
  app.set_version_flag("--version", std::string(kFormatVersions));
  app.require_subcommand(1);

  IndexArgs ia;
  auto* idx = app.add_subcommand("index", "compute the 3D index");
  idx->add_option("file", ia.file, "tri v1 or nz v1 file")->required();
  idx->add_option("--order", ia.order, "truncation order (half-integers allowed)");
  idx->add_option("--curve", ia.curve, "peri v1 turning vector file");
  idx->add_option("--excluded", ia.excluded, "excluded edges, e.g. 2,3");
  idx->add_option("--threads", ia.threads)->check(CLI::PositiveNumber);
  idx->add_option("--margin", ia.margin, "empty shells before the enumeration stops")->check(CLI::PositiveNumber);
  idx->add_option("--guard", ia.guard, "largest shell radius");
  idx->add_flag("--coset-check", ia.coset_check, "recompute with the other coordinate hyperplanes");
  idx->add_flag("--emit-coeffs", ia.emit, "print bare coefficients of q^0..q^order");

  int range = 3;
  std::string id_order = "20";
  auto* ids = app.add_subcommand("identities", "check the tetrahedron index identities");
  ids->add_option("--range", range)->check(CLI::PositiveNumber);
  ids->add_option("--order", id_order);

  std::string file, excluded, kind, at, out, order = "10";
  EfficiencyOptions eo;
  auto* eff = app.add_subcommand("efficiency", "decide existence of an index structure");
  eff->add_option("file", file)->required();
  eff->add_option("--cap", eo.cap);
  eff->add_flag("--force", eo.force);
  eff->add_flag("--all-certificates", eo.all_certificates);
  eff->add_option("--threads", eo.threads)->check(CLI::PositiveNumber);

  auto* bas = app.add_subcommand("basis", "select and check basic edges");
  bas->add_option("file", file)->required();
  bas->add_option("--excluded", excluded);

  auto* mov = app.add_subcommand("move", "apply a Pachner move");
  mov->add_option("file", file)->required();
  mov->add_option("--kind", kind)->required();
  mov->add_option("--at", at)->required();
  mov->add_option("-o,--output", out);

  int threads = 1;
  bool assume = false;
  auto* vm = app.add_subcommand("verify-move", "check that a move preserves the index");
  vm->add_option("file", file)->required();
  vm->add_option("--kind", kind)->required();
  vm->add_option("--at", at)->required();
  vm->add_option("--order", order);
  vm->add_option("--threads", threads)->check(CLI::PositiveNumber);
  vm->add_flag("--assume-convergent", assume);

  auto* pc = app.add_subcommand("parse-check", "parse a file and check its invariants");
  pc->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*idx) return run_index(ia);
    if (*ids) return run_identities(range, id_order);
    if (*eff) return run_efficiency(file, eo);
    if (*bas) return run_basis(file, excluded);
    if (*mov) return run_move(file, kind, at, out);
    if (*vm) return run_verify_move(file, kind, at, order, threads, assume);
    if (*pc) return run_parse_check(file);
  } catch (const Divergent& e) {
    std::cerr << "divergent: " << e.what() << "\n";
    return kDivergent;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const RankDeficient& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kOk;
}
