#include <complex>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "periodic_spectra/cycles.hpp"
#include "periodic_spectra/examples.hpp"
#include "periodic_spectra/expansions.hpp"
#include "periodic_spectra/io.hpp"
#include "periodic_spectra/spectral.hpp"
#include "periodic_spectra/traces.hpp"

namespace py = pybind11;
using namespace periodic_spectra;

namespace {

Limits make_limits(int power_cap, int oracle_cap) { return {power_cap, oracle_cap}; }

py::tuple index_key(const LatticeIndex& m) { return py::cast(m.to_vector()); }

py::dict real_terms(const RealPolynomial& p) {
  py::dict out;
  for (const auto& [m, c] : p.terms()) out[index_key(m)] = c;
  return out;
}

// Exact coefficients become Python ints, whatever their size.
py::dict int_terms(const IntPolynomial& p) {
  py::dict out;
  py::object to_int = py::module_::import("builtins").attr("int");
  for (const auto& [m, c] : p.terms()) out[index_key(m)] = to_int(c.str());
  return out;
}

template <class Count>
py::dict count_terms(const std::map<LatticeIndex, Count>& counts) {
  py::dict out;
  for (const auto& [m, c] : counts) out[index_key(m)] = c;
  return out;
}

OperatorKind kind_of(const std::string& name) { return parse_operator_kind(name); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trace formulas, band structures and cycle products for periodic graphs";

  // Error carries the library code as a string attribute, e.g. err.code == "PowerCapExceeded".
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() { return py::exception<Error>(m, "Error", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = error_type.get_stored();
      py::object inst = type(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });

  py::class_<FundamentalGraph>(m, "Graph")
      .def_property_readonly("dimension", &FundamentalGraph::dimension)
      .def_property_readonly("vertex_count", &FundamentalGraph::vertex_count)
      .def_property_readonly("edge_count", &FundamentalGraph::edge_count)
      .def_property_readonly("kappa_plus", &FundamentalGraph::kappa_plus)
      .def_property_readonly("kappa_minus", &FundamentalGraph::kappa_minus)
      .def_property_readonly("tau_plus", &FundamentalGraph::tau_plus)
      .def_property_readonly("vertex_ids",
                             [](const FundamentalGraph& g) {
                               std::vector<std::string> ids;
                               for (const auto& v : g.vertices()) ids.push_back(v.id);
                               return ids;
                             })
      .def_property_readonly("degrees",
                             [](const FundamentalGraph& g) {
                               std::vector<int> d;
                               for (const auto& v : g.vertices()) d.push_back(v.degree);
                               return d;
                             })
      .def_property_readonly("potentials", &FundamentalGraph::potentials)
      .def_property_readonly("edges",
                             [](const FundamentalGraph& g) {
                               std::vector<std::tuple<int, int, std::vector<int>>> out;
                               for (const auto& e : g.edges()) out.emplace_back(e.from, e.to, e.index.to_vector());
                               return out;
                             })
      .def("with_potential",
           [](const FundamentalGraph& g, const std::vector<double>& v) { return g.with_potential(v); })
      .def("to_json", [](const FundamentalGraph& g) { return graph_to_json(g).dump(); })
      .def("__repr__", [](const FundamentalGraph& g) {
        return "<Graph d=" + std::to_string(g.dimension()) + " vertices=" + std::to_string(g.vertex_count()) +
               " edges=" + std::to_string(g.edge_count()) + ">";
      });

  m.def(
      "build_graph",
      [](int dimension, const std::vector<std::pair<std::string, double>>& vertices,
         const std::vector<std::tuple<std::string, std::string, std::vector<int>>>& edges) {
        std::vector<VertexInput> vs;
        for (const auto& [id, v] : vertices) vs.push_back({id, v});
        std::vector<HalfEdgeSpec> es;
        for (const auto& [from, to, index] : edges) es.push_back({from, to, LatticeIndex::from_span(index)});
        return build_graph(dimension, vs, es);
      },
      py::arg("dimension"), py::arg("vertices"), py::arg("edges"),
      "vertices: [(id, potential)], edges: [(from, to, index)], one orientation per edge");
  m.def("graph_from_json", [](const std::string& text) {
    try {
      return graph_from_json(Json::parse(text));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  });
  m.def("load_graph", &load_graph);
  m.def("example", &builtin_example, py::arg("name"), py::arg("p") = 2);
  m.def("example_names", &builtin_names);
  m.def("square_lattice", &square_lattice);
  m.def("kagome_lattice", &kagome_lattice);
  m.def("gp_graph", &gp_graph, py::arg("p"));
  m.def("z_line", &z_line);

  py::class_<TraceSeries>(m, "TraceSeries")
      .def_readonly("n", &TraceSeries::n)
      .def_property_readonly("kind", [](const TraceSeries& s) { return std::string(to_string(s.kind)); })
      .def_readonly("dimension", &TraceSeries::dimension)
      .def_readonly("omega_plus", &TraceSeries::omega_plus)
      .def_property_readonly("coefficients", [](const TraceSeries& s) { return real_terms(s.coefficients); })
      .def_property_readonly("exact",
                             [](const TraceSeries& s) -> py::object {
                               if (!s.exact) return py::none();
                               return int_terms(*s.exact);
                             })
      .def_property_readonly("regularized_trace", &TraceSeries::constant_term)
      .def("evaluate", [](const TraceSeries& s, const std::vector<double>& k) {
        return s.coefficients.evaluate(k);
      });

  m.def(
      "trace_series",
      [](const FundamentalGraph& g, const std::string& kind, int n, int power_cap) {
        return trace_series(g, kind_of(kind), n, make_limits(power_cap, Limits{}.oracle_cap));
      },
      py::arg("graph"), py::arg("kind") = "adjacency", py::arg("n") = 1, py::arg("power_cap") = Limits{}.power_cap);
  m.def(
      "cycle_counts",
      [](const FundamentalGraph& g, int n, int power_cap) {
        return count_terms(cycle_counts_algebraic(g, n, make_limits(power_cap, Limits{}.oracle_cap)));
      },
      py::arg("graph"), py::arg("n"), py::arg("power_cap") = Limits{}.power_cap);

  m.def(
      "fiber_matrix",
      [](const FundamentalGraph& g, const std::string& kind, const std::vector<double>& k) {
        return fiber_matrix_numeric(g, kind_of(kind), k);
      },
      py::arg("graph"), py::arg("kind"), py::arg("k"));
  m.def(
      "eigenvalues",
      [](const FundamentalGraph& g, const std::string& kind, const std::vector<double>& k) {
        return eigenvalues_at(g, kind_of(kind), k);
      },
      py::arg("graph"), py::arg("kind"), py::arg("k"));
  m.def(
      "band_summary",
      [](const FundamentalGraph& g, const std::string& kind, int grid) {
        const auto b = band_structure(g, kind_of(kind), grid);
        std::optional<BandwidthReport> bound;
        if (b.kind == OperatorKind::Schrodinger) bound = bandwidth_bound_check(g, b);
        return band_summary_to_json(b, bound).dump();
      },
      py::arg("graph"), py::arg("kind") = "adjacency", py::arg("grid") = 32,
      "JSON text with band intervals, flat flags and total bandwidth");

  m.def(
      "bipartite",
      [](const FundamentalGraph& g) {
        const auto f = bipartite_fundamental(g);
        const auto p = bipartite_periodic(g);
        py::dict out;
        out["fundamental"] = f.bipartite;
        out["periodic"] = p.bipartite;
        out["parity"] = p.parity ? py::cast(*p.parity) : py::none();
        out["character"] = p.character ? py::cast(*p.character) : py::none();
        out["odd_zero_index_length"] = p.odd_zero_index_length ? py::cast(*p.odd_zero_index_length) : py::none();
        return out;
      },
      py::arg("graph"));

  py::class_<SeriesApprox>(m, "SeriesApprox")
      .def_readonly("value", &SeriesApprox::value)
      .def_readonly("truncation", &SeriesApprox::truncation)
      .def_readonly("tail_bound", &SeriesApprox::tail_bound)
      .def_readonly("oracle", &SeriesApprox::oracle)
      .def_readonly("abs_error", &SeriesApprox::abs_error)
      .def("__repr__", [](const SeriesApprox& s) {
        return "<SeriesApprox value=" + std::to_string(s.value.real()) + "+" + std::to_string(s.value.imag()) +
               "j tail_bound=" + std::to_string(s.tail_bound) + ">";
      });

  using K = std::optional<std::vector<double>>;
  m.def(
      "heat_trace",
      [](const FundamentalGraph& g, const std::string& kind, std::complex<double> t, const K& k, int n_max,
         int power_cap) {
        const Limits limits = make_limits(power_cap, Limits{}.oracle_cap);
        return k ? heat_trace(g, kind_of(kind), t, *k, n_max, limits)
                 : heat_trace_integrated(g, kind_of(kind), t, n_max, limits);
      },
      py::arg("graph"), py::arg("kind"), py::arg("t"), py::arg("k") = py::none(), py::arg("n_max") = 10,
      py::arg("power_cap") = Limits{}.power_cap, "k=None gives the integrated trace");
  m.def(
      "resolvent_trace",
      [](const FundamentalGraph& g, const std::string& kind, std::complex<double> lambda, const K& k, int n_max,
         int power_cap) {
        const Limits limits = make_limits(power_cap, Limits{}.oracle_cap);
        return k ? resolvent_trace(g, kind_of(kind), lambda, *k, n_max, limits)
                 : resolvent_trace_integrated(g, kind_of(kind), lambda, n_max, limits);
      },
      py::arg("graph"), py::arg("kind"), py::arg("lam"), py::arg("k") = py::none(), py::arg("n_max") = 10,
      py::arg("power_cap") = Limits{}.power_cap);
  m.def(
      "determinant",
      [](const FundamentalGraph& g, const std::string& kind, std::complex<double> t, const K& k, int L,
         int oracle_cap) {
        const Limits limits = make_limits(Limits{}.power_cap, oracle_cap);
        return k ? determinant_product(g, kind_of(kind), t, *k, L, limits)
                 : gamma_log_determinant(g, kind_of(kind), t, L, limits);
      },
      py::arg("graph"), py::arg("kind"), py::arg("t"), py::arg("k") = py::none(), py::arg("L") = 6,
      py::arg("oracle_cap") = Limits{}.oracle_cap, "k=None gives the log Gamma-determinant");
  m.def(
      "zeta",
      [](const FundamentalGraph& g, std::complex<double> u, const K& k, int L, int oracle_cap) {
        const Limits limits = make_limits(Limits{}.power_cap, oracle_cap);
        return k ? l_function(g, u, *k, L, limits) : ihara_zeta(g, u, L, limits);
      },
      py::arg("graph"), py::arg("u"), py::arg("k") = py::none(), py::arg("L") = 6,
      py::arg("oracle_cap") = Limits{}.oracle_cap, "k=None gives the Ihara zeta function, else the L-function");
  m.def(
      "ihara_log_derivative",
      [](const FundamentalGraph& g, int L) { return ihara_log_derivative_from_classes(g, L); }, py::arg("graph"),
      py::arg("L"));
}
