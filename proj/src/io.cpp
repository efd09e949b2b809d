#include "periodic_spectra/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <fstream>
#include <sstream>

namespace periodic_spectra {

namespace {

Json index_to_json(const LatticeIndex& m) { return m.to_vector(); }

Json complex_to_json(std::complex<double> z) {
  if (z.imag() == 0.0) return z.real();
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

LatticeIndex index_from_json(const Json& j, int dimension, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, where + ": index must be an array");
  if (static_cast<int>(j.size()) != dimension) {
    throw Error(ErrorCode::DimensionMismatch, where + ": index has " + std::to_string(j.size()) +
                                                  " entries, expected " + std::to_string(dimension));
  }
  LatticeIndex m(dimension);
  for (int i = 0; i < dimension; ++i) {
    const Json& x = j[static_cast<std::size_t>(i)];
    if (!x.is_number_integer()) throw Error(ErrorCode::ParseError, where + ": index entries must be integers");
    m[i] = x.get<int>();
  }
  return m;
}

}  // namespace

Json graph_to_json(const FundamentalGraph& g) {
  Json vertices = Json::array();
  for (const auto& v : g.vertices()) vertices.push_back({{"id", v.id}, {"potential", v.potential}});
  Json edges = Json::array();
  for (const auto& h : g.half_edges()) edges.push_back({{"from", h.from}, {"to", h.to}, {"index", index_to_json(h.index)}});
  return {{"dimension", g.dimension()}, {"vertices", vertices}, {"edges", edges}};
}

FundamentalGraph graph_from_json(const Json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "graph document must be an object");
    for (const char* key : {"dimension", "vertices", "edges"}) {
      if (!doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
    }
    if (!doc["dimension"].is_number_integer()) throw Error(ErrorCode::ParseError, "dimension must be an integer");
    const int d = doc["dimension"].get<int>();
    if (d < 1 || d > kMaxDimension) {
      throw Error(ErrorCode::DimensionMismatch, "dimension must be in [1, 4], got " + std::to_string(d));
    }
    std::vector<VertexInput> vertices;
    for (const auto& v : doc["vertices"]) {
      if (!v.contains("id") || !v["id"].is_string()) throw Error(ErrorCode::ParseError, "vertex without string id");
      double potential = 0.0;
      if (v.contains("potential")) {
        if (!v["potential"].is_number()) throw Error(ErrorCode::ParseError, "potential must be a number");
        potential = v["potential"].get<double>();
      }
      vertices.push_back({v["id"].get<std::string>(), potential});
    }
    std::vector<HalfEdgeSpec> edges;
    for (const auto& e : doc["edges"]) {
      if (!e.contains("from") || !e.contains("to") || !e.contains("index") || !e["from"].is_string() ||
          !e["to"].is_string()) {
        throw Error(ErrorCode::ParseError, "edge needs string 'from', 'to' and an 'index'");
      }
      const std::string from = e["from"].get<std::string>();
      const std::string to = e["to"].get<std::string>();
      edges.push_back({from, to, index_from_json(e["index"], d, "edge " + from + "->" + to)});
    }
    return build_graph(d, vertices, edges);
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
}

FundamentalGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::ParseError, path + ": " + ex.what());
  }
  return graph_from_json(doc);
}

Json polynomial_to_json(const RealPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"m", index_to_json(m)}, {"c", c}});
  return {{"terms", terms}};
}

Json polynomial_to_json(const IntPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json value;
    if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max()) {
      value = c.convert_to<std::int64_t>();
    } else {
      value = c.str();
    }
    terms.push_back({{"m", index_to_json(m)}, {"c", value}});
  }
  return {{"terms", terms}};
}

RealPolynomial polynomial_from_json(const Json& doc, int dimension) {
  RealPolynomial p(dimension);
  try {
    for (const auto& t : doc.at("terms")) {
      const Json& c = t.at("c");
      const double value = c.is_string() ? std::stod(c.get<std::string>()) : c.get<double>();
      p.add_term(index_from_json(t.at("m"), dimension, "term"), value);
    }
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::ParseError, ex.what());
  }
  return p;
}

Json trace_series_to_json(const TraceSeries& s) {
  Json out{{"n", s.n},
           {"kind", std::string(to_string(s.kind))},
           {"dimension", s.dimension},
           {"regularized_trace", s.constant_term()},
           {"omega_plus", s.omega_plus}};
  out["coefficients"] = s.exact ? polynomial_to_json(*s.exact) : polynomial_to_json(s.coefficients);
  return out;
}

std::string format_csv_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trace_series_to_csv(const TraceSeries& s) {
  std::ostringstream out;
  for (int i = 1; i <= s.dimension; ++i) out << 'm' << i << ',';
  out << "coefficient\n";
  if (s.exact) {
    for (const auto& [m, c] : s.exact->terms()) {
      for (int i = 0; i < s.dimension; ++i) out << m[i] << ',';
      out << c.str() << '\n';
    }
  } else {
    for (const auto& [m, c] : s.coefficients.terms()) {
      for (int i = 0; i < s.dimension; ++i) out << m[i] << ',';
      out << format_csv_number(c) << '\n';
    }
  }
  return out.str();
}

std::string band_structure_to_csv(const BandStructure& b) {
  std::ostringstream out;
  for (int i = 1; i <= b.dimension; ++i) out << 'k' << i << ',';
  for (int j = 1; j <= b.branch_count; ++j) out << "lambda" << j << (j == b.branch_count ? "\n" : ",");
  for (std::size_t p = 0; p < b.samples.size(); ++p) {
    for (double k : b.k_points[p]) out << format_csv_number(k) << ',';
    for (std::size_t j = 0; j < b.samples[p].size(); ++j) {
      out << format_csv_number(b.samples[p][j]) << (j + 1 == b.samples[p].size() ? "\n" : ",");
    }
  }
  return out.str();
}

Json band_summary_to_json(const BandStructure& b, const std::optional<BandwidthReport>& bound) {
  Json bands = Json::array();
  for (std::size_t j = 0; j < b.bands.size(); ++j) {
    bands.push_back({{"lower", b.bands[j].first}, {"upper", b.bands[j].second}, {"flat", static_cast<bool>(b.flat_flags[j])}});
  }
  Json out{{"kind", std::string(to_string(b.kind))},
           {"grid", b.grid},
           {"bands", bands},
           {"flat_tol", b.flat_tol},
           {"total_bandwidth", b.total_bandwidth},
           {"spectral_radius", b.spectral_radius},
           {"endpoint_resolution", 2.0 * std::numbers::pi / b.grid}};
  if (bound) {
    out["bandwidth_bound"] = {{"v_star", bound->v_star},
                              {"bound", bound->bound},
                              {"total_bandwidth", bound->total_bandwidth},
                              {"satisfied", bound->satisfied}};
  }
  return out;
}

Json series_approx_to_json(const SeriesApprox& s) {
  Json out{{"value", complex_to_json(s.value)}, {"truncation", s.truncation}};
  out["tail_bound"] = std::isfinite(s.tail_bound) ? Json(s.tail_bound) : Json("inf");
  if (s.oracle) out["oracle_value"] = complex_to_json(*s.oracle);
  if (s.abs_error) out["abs_error"] = *s.abs_error;
  return out;
}

Json cycle_class_to_json(const CycleClass& c) {
  return {{"edges", c.representative.edge_ids},
          {"length", c.length},
          {"index", index_to_json(c.index)},
          {"weight", c.weight},
          {"multiplicity", c.multiplicity}};
}

}  // namespace periodic_spectra
