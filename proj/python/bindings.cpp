#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tdi/anglestruct.hpp"
#include "tdi/edgebasis.hpp"
#include "tdi/errors.hpp"
#include "tdi/formats.hpp"
#include "tdi/indexengine.hpp"
#include "tdi/pachner.hpp"
#include "tdi/tetindex.hpp"

namespace py = pybind11;
using namespace tdi;

namespace {

HalfInt to_half(const py::object& o) {
  if (py::isinstance<py::int_>(o)) return HalfInt::from_int(o.cast<int64_t>());
  return parse_half(py::str(o).cast<std::string>());
}

py::list int_coeffs(const TruncatedSeries& s, int64_t n) {
  py::list out;
  for (auto& c : s.integer_coeffs(n)) out.append(py::int_(py::str(c.get_str())));
  return out;
}

py::dict terms(const TruncatedSeries& s) {
  py::dict d;
  for (auto& [e, c] : s.terms()) d[py::int_(e)] = py::int_(py::str(c.get_str()));
  return d;
}

IndexJob job_for(const std::string& path, const py::object& order, int threads, const std::vector<int>& excluded,
                 const std::string& curve) {
  LoadedInput in = load_input(path);
  IndexOptions opt;
  opt.threads = threads;
  IndexJob job = make_job(in.gluing, to_half(order), opt);
  if (!excluded.empty()) job.basis = BasisSelection::from_excluded(in.gluing.N, excluded);
  if (!curve.empty()) job.peripheral = parse_peri(read_file(curve), in.gluing.N);
  return job;
}

} // namespace

PYBIND11_MODULE(_tdindex, m) {
  m.doc() = "3D index of ideal triangulations";
  static auto& input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<Divergent>(m, "Divergent", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const RankDeficient& e) {
      py::set_error(input_error, e.what());
    }
  });

  m.attr("FORMAT_VERSIONS") = kFormatVersions;

  py::class_<TruncatedSeries>(m, "Series")
      .def("__str__", &TruncatedSeries::str)
      .def("__repr__", [](const TruncatedSeries& s) { return "<Series " + s.str() + ">"; })
      .def("__eq__", [](const TruncatedSeries& a, const TruncatedSeries& b) { return a == b; })
      .def_property_readonly("order_halves", &TruncatedSeries::order_h, "order in units of q^(1/2)")
      .def("coefficients", &int_coeffs, py::arg("n"), "coefficients of q^0..q^n")
      .def("terms", &terms, "half-unit exponent -> coefficient");

  m.def("tet_index", [](int64_t mm, int64_t e, const py::object& order) { return tet_index(mm, e, to_half(order)); },
        py::arg("m"), py::arg("e"), py::arg("order"));
  m.def("tet_index_J",
        [](const py::object& a, const py::object& b, const py::object& c, const py::object& order) {
          return tet_index_J(to_half(a), to_half(b), to_half(c), to_half(order));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("order"));
  m.def("degree", [](int64_t mm, int64_t e) { return degree(mm, e).str(); }, py::arg("m"), py::arg("e"));

  m.def("verify_identities",
        [](int range, const py::object& order) {
          py::dict d;
          for (auto& r : verify_identities(range, to_half(order)).results) d[py::str(r.name)] = r.pass;
          return d;
        },
        py::arg("range"), py::arg("order"));

  m.def("index",
        [](const std::string& path, const py::object& order, int threads, const std::vector<int>& excluded,
           const std::string& curve) {
          IndexJob job = job_for(path, order, threads, excluded, curve);
          py::gil_scoped_release nogil;
          return compute_index(job);
        },
        py::arg("path"), py::arg("order"), py::arg("threads") = 1, py::arg("excluded") = std::vector<int>{},
        py::arg("curve") = "");

  m.def("gluing_data",
        [](const std::string& path) {
          GluingData g = load_input(path).gluing;
          py::dict d;
          d["N"] = g.N;
          d["cusps"] = g.r;
          d["abar"] = g.abar;
          d["bbar"] = g.bbar;
          d["cbar"] = g.cbar;
          d["cusp"] = g.cusp;
          d["degrees"] = g.degrees();
          return d;
        },
        py::arg("path"));

  m.def("basis",
        [](const std::string& path) {
          GluingData g = load_input(path).gluing;
          BasisSelection sel = select_basis(g);
          py::dict d;
          d["excluded"] = sel.excluded;
          d["basic"] = sel.basic;
          py::list rows;
          for (auto& r : express_excluded_rows(g, sel)) rows.append(r.str());
          d["rows"] = rows;
          return d;
        },
        py::arg("path"));

  m.def("sublattice_index",
        [](const std::string& path, std::vector<int> excluded) {
          GluingData g = load_input(path).gluing;
          return py::int_(py::str(validate_basis(g, BasisSelection::from_excluded(g.N, excluded)).index.get_str()));
        },
        py::arg("path"), py::arg("excluded"));

  m.def("efficiency",
        [](const std::string& path, int threads, bool all_certificates) {
          LoadedInput in = load_input(path);
          EfficiencyOptions opt;
          opt.threads = threads;
          opt.all_certificates = all_certificates;
          EfficiencyReport rep = has_index_structure(in.gluing, in.tri ? &*in.tri : nullptr, opt);
          return py::make_tuple(rep.index_structure, rep.str());
        },
        py::arg("path"), py::arg("threads") = 1, py::arg("all_certificates") = false);

  m.def("move",
        [](const std::string& text, const std::string& kind, const std::string& at) {
          return serialize_tri(apply_move(parse_tri(text), parse_move(kind, at)));
        },
        py::arg("tri_text"), py::arg("kind"), py::arg("at"), "apply a move to tri v1 text, returning tri v1 text");

  m.def("isomorphic",
        [](const std::string& a, const std::string& b) { return isomorphic(parse_tri(a), parse_tri(b)); },
        py::arg("tri_text_a"), py::arg("tri_text_b"));
}
