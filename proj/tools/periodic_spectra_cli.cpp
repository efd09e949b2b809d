#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "periodic_spectra/examples.hpp"
#include "periodic_spectra/expansions.hpp"
#include "periodic_spectra/io.hpp"
#include "periodic_spectra/spectral.hpp"
#include "periodic_spectra/traces.hpp"

using namespace periodic_spectra;

namespace {

struct RunConfig {
  std::string graph_path;
  std::string example;
  int p = 2;
  std::vector<double> potential;
  std::string kind = "adjacency";
  std::vector<int> n{1};
  int grid = 32;
  std::vector<std::string> t{"0.1"};
  std::vector<std::string> lambda{"10"};
  std::vector<std::string> u{"0.1"};
  int L = 6;
  int nmax = 10;
  std::vector<double> k;
  int power_cap = Limits{}.power_cap;
  int oracle_cap = Limits{}.oracle_cap;
  std::string format = "json";
  std::string output;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::PowerCapExceeded:
    case ErrorCode::OracleCapExceeded:
      return 3;
    case ErrorCode::EigensolverFailure:
    case ErrorCode::IntegerOverflow:
      return 4;
    default:
      return 2;
  }
}

std::complex<double> parse_complex(const std::string& text) {
  std::istringstream in(text);
  std::complex<double> z;
  if (!text.empty() && text.front() == '(') {
    in >> z;
  } else {
    double re = 0.0;
    in >> re;
    z = re;
  }
  if (in.fail() || !(in >> std::ws).eof()) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse '" + text + "' as a number (use 0.5 or (0.5,0.1))");
  }
  return z;
}

std::vector<std::complex<double>> parse_complex_list(const std::vector<std::string>& values) {
  std::vector<std::complex<double>> out;
  for (const auto& v : values) out.push_back(parse_complex(v));
  return out;
}

Limits limits_of(const RunConfig& c) {
  if (c.power_cap < 1 || c.oracle_cap < 1) throw Error(ErrorCode::InvalidArgument, "caps must be >= 1");
  return {c.power_cap, c.oracle_cap};
}

FundamentalGraph load(const RunConfig& c) {
  if (c.graph_path.empty() == c.example.empty()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --graph or --example");
  }
  FundamentalGraph g = c.graph_path.empty() ? builtin_example(c.example, c.p) : load_graph(c.graph_path);
  if (!c.potential.empty()) g = g.with_potential(c.potential);
  return g;
}

std::vector<double> quasimomentum(const RunConfig& c, const FundamentalGraph& g) {
  if (static_cast<int>(c.k.size()) != g.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "--k needs " + std::to_string(g.dimension()) + " values, got " + std::to_string(c.k.size()));
  }
  return c.k;
}

void check_format(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") {
    throw Error(ErrorCode::InvalidArgument, "--format must be json or csv");
  }
}

std::string csv_complex(std::complex<double> z) {
  return format_csv_number(z.real()) + "," + format_csv_number(z.imag());
}

std::string approx_csv_header(const std::string& parameter) {
  return parameter + "_re," + parameter + "_im,value_re,value_im,truncation,tail_bound,oracle_re,oracle_im,abs_error\n";
}

std::string approx_csv_row(std::complex<double> parameter, const SeriesApprox& s) {
  std::string row = csv_complex(parameter) + "," + csv_complex(s.value) + "," + std::to_string(s.truncation) + "," +
                    format_csv_number(s.tail_bound) + ",";
  row += s.oracle ? csv_complex(*s.oracle) : std::string(",");
  row += ",";
  if (s.abs_error) row += format_csv_number(*s.abs_error);
  return row + "\n";
}

Json approx_json(const std::string& name, std::complex<double> parameter, const SeriesApprox& s) {
  Json j = series_approx_to_json(s);
  j[name] = parameter.imag() == 0.0 ? Json(parameter.real()) : Json{{"re", parameter.real()}, {"im", parameter.imag()}};
  return j;
}

std::string cmd_traces(const RunConfig& c) {
  const auto g = load(c);
  const auto kind = parse_operator_kind(c.kind);
  const auto limits = limits_of(c);
  int n_max = 0;
  for (int n : c.n) {
    check_power(n, limits.power_cap);
    n_max = std::max(n_max, n);
  }
  const auto all = trace_series_up_to(g, kind, n_max, limits);
  if (c.format == "csv") {
    std::string out;
    for (int n : c.n) {
      std::istringstream rows(trace_series_to_csv(all[static_cast<std::size_t>(n - 1)]));
      std::string line;
      std::getline(rows, line);
      if (out.empty()) out = "n," + line + "\n";
      while (std::getline(rows, line)) out += std::to_string(n) + "," + line + "\n";
    }
    return out;
  }
  Json series = Json::array();
  for (int n : c.n) series.push_back(trace_series_to_json(all[static_cast<std::size_t>(n - 1)]));
  return Json{{"kind", std::string(to_string(kind))}, {"series", series}}.dump(2) + "\n";
}

std::string cmd_bands(const RunConfig& c) {
  const auto g = load(c);
  const auto kind = parse_operator_kind(c.kind);
  const auto bands = band_structure(g, kind, c.grid);
  if (c.format == "csv") return band_structure_to_csv(bands);
  std::optional<BandwidthReport> bound;
  if (kind == OperatorKind::Schrodinger) bound = bandwidth_bound_check(g, bands);
  return band_summary_to_json(bands, bound).dump(2) + "\n";
}

template <class Eval>
std::string sweep(const RunConfig& c, const std::string& name, const std::vector<std::complex<double>>& values,
                  Eval eval, Json extra = Json::object()) {
  if (c.format == "csv") {
    std::string out = approx_csv_header(name);
    for (auto v : values) out += approx_csv_row(v, eval(v));
    return out;
  }
  Json results = Json::array();
  for (auto v : values) results.push_back(approx_json(name, v, eval(v)));
  extra["results"] = results;
  return extra.dump(2) + "\n";
}

std::string cmd_heat(const RunConfig& c) {
  const auto g = load(c);
  const auto kind = parse_operator_kind(c.kind);
  TraceExpansion ex(g, kind, limits_of(c));
  Json meta{{"kind", std::string(to_string(kind))}, {"integrated", c.k.empty()}};
  if (c.k.empty()) {
    return sweep(c, "t", parse_complex_list(c.t), [&](auto t) { return ex.heat_integrated(t, c.nmax); }, meta);
  }
  const auto k = quasimomentum(c, g);
  meta["k"] = k;
  return sweep(c, "t", parse_complex_list(c.t), [&](auto t) { return ex.heat(t, k, c.nmax); }, meta);
}

std::string cmd_resolvent(const RunConfig& c) {
  const auto g = load(c);
  const auto kind = parse_operator_kind(c.kind);
  TraceExpansion ex(g, kind, limits_of(c));
  Json meta{{"kind", std::string(to_string(kind))}, {"integrated", c.k.empty()}};
  if (c.k.empty()) {
    return sweep(c, "lambda", parse_complex_list(c.lambda),
                 [&](auto l) { return ex.resolvent_integrated(l, c.nmax); }, meta);
  }
  const auto k = quasimomentum(c, g);
  meta["k"] = k;
  return sweep(c, "lambda", parse_complex_list(c.lambda), [&](auto l) { return ex.resolvent(l, k, c.nmax); }, meta);
}

std::string cmd_det(const RunConfig& c) {
  const auto g = load(c);
  const auto kind = parse_operator_kind(c.kind);
  const PrimeCycleTable table(g, kind, c.L, limits_of(c));
  Json meta{{"kind", std::string(to_string(kind))},
            {"classes", table.classes().size()},
            {"majorant_radius", table.majorant_radius()}};
  if (c.k.empty()) {
    meta["quantity"] = "gamma_log_determinant";
    return sweep(c, "t", parse_complex_list(c.t), [&](auto t) { return table.gamma_log_determinant(t, c.L); }, meta);
  }
  const auto k = quasimomentum(c, g);
  meta["quantity"] = "determinant";
  meta["k"] = k;
  return sweep(c, "t", parse_complex_list(c.t), [&](auto t) { return table.determinant(t, k, c.L); }, meta);
}

std::string cmd_zeta(const RunConfig& c) {
  const auto g = load(c);
  const auto limits = limits_of(c);
  if (!c.k.empty()) {
    const auto k = quasimomentum(c, g);
    const PrimeCycleTable table(g, OperatorKind::Adjacency, c.L, limits);
    Json meta{{"quantity", "l_function"}, {"k", k}};
    return sweep(c, "u", parse_complex_list(c.u), [&](auto u) { return table.l_function(u, k, c.L); }, meta);
  }
  Json meta{{"quantity", "ihara_zeta"},
            {"log_derivative", ihara_log_derivative_from_classes(g, c.L, limits)},
            {"log_derivative_bruteforce", ihara_log_derivative_bruteforce(g, c.L, limits)}};
  return sweep(c, "u", parse_complex_list(c.u), [&](auto u) { return ihara_zeta(g, u, c.L, limits); }, meta);
}

std::string cmd_bipartite(const RunConfig& c) {
  const auto g = load(c);
  const auto limits = limits_of(c);
  const auto f = bipartite_fundamental(g, limits);
  const auto p = bipartite_periodic(g, limits);
  Json fundamental{{"bipartite", f.bipartite}, {"coloring_verdict", f.coloring_verdict}, {"used_fallback", f.used_fallback}};
  if (f.trace_verdict) fundamental["trace_verdict"] = *f.trace_verdict;
  if (f.bipartite) fundamental["coloring"] = f.coloring;
  Json periodic{{"bipartite", p.bipartite}, {"consistent", p.consistent}, {"checked_up_to", p.checked_up_to}};
  if (p.parity) {
    Json labels = Json::object();
    for (int x = 0; x < g.vertex_count(); ++x) labels[g.vertices()[static_cast<std::size_t>(x)].id] = (*p.parity)[static_cast<std::size_t>(x)];
    periodic["parity"] = labels;
    periodic["character"] = *p.character;
  }
  if (p.odd_zero_index_length) periodic["odd_zero_index_length"] = *p.odd_zero_index_length;
  if (c.format == "csv") {
    return "graph,bipartite\nfundamental," + std::string(f.bipartite ? "true" : "false") + "\nperiodic," +
           (p.bipartite ? "true" : "false") + "\n";
  }
  return Json{{"fundamental", fundamental}, {"periodic", periodic}}.dump(2) + "\n";
}

void add_graph_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--graph", c.graph_path, "graph JSON document");
  cmd->add_option("--example", c.example, "builtin graph: square, kagome, gp, zline");
  cmd->add_option("--p", c.p, "second loop index for the gp example");
  cmd->add_option("--potential", c.potential, "potential value per vertex");
  cmd->add_option("--power-cap", c.power_cap, "largest symbolic power");
  cmd->add_option("--oracle-cap", c.oracle_cap, "largest enumerated cycle length");
  cmd->add_option("--format", c.format, "json or csv");
  cmd->add_option("--output,-o", c.output, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace formulas, band structures and cycle products for periodic graphs"};
  app.require_subcommand(1);
  RunConfig c;
  std::string example_name;

  auto* traces = app.add_subcommand("traces", "Fourier coefficients of Tr M^n(k)");
  add_graph_options(traces, c);
  traces->add_option("--kind", c.kind, "adjacency, neg-laplacian, schrodinger, normalized");
  traces->add_option("--n", c.n, "powers")->expected(1, -1);

  auto* bands = app.add_subcommand("bands", "band structure on a uniform grid");
  add_graph_options(bands, c);
  bands->add_option("--kind", c.kind, "operator kind");
  bands->add_option("--grid", c.grid, "samples per dimension");

  auto* heat = app.add_subcommand("heat", "heat trace expansion");
  add_graph_options(heat, c);
  heat->add_option("--kind", c.kind, "operator kind");
  heat->add_option("--t", c.t, "times, real or (re,im)")->expected(1, -1);
  heat->add_option("--k", c.k, "quasimomentum; omit for the integrated trace")->expected(1, -1);
  heat->add_option("--nmax", c.nmax, "truncation order");

  auto* resolvent = app.add_subcommand("resolvent", "resolvent trace expansion");
  add_graph_options(resolvent, c);
  resolvent->add_option("--kind", c.kind, "operator kind");
  resolvent->add_option("--lambda", c.lambda, "spectral parameters, real or (re,im)")->expected(1, -1);
  resolvent->add_option("--k", c.k, "quasimomentum; omit for the integrated trace")->expected(1, -1);
  resolvent->add_option("--nmax", c.nmax, "truncation order");

  auto* det = app.add_subcommand("det", "determinant products over prime cycles");
  add_graph_options(det, c);
  det->add_option("--kind", c.kind, "operator kind");
  det->add_option("--t", c.t, "parameters, real or (re,im)")->expected(1, -1);
  det->add_option("--k", c.k, "quasimomentum; omit for the log Gamma-determinant")->expected(1, -1);
  det->add_option("--L", c.L, "cycle length cap");

  auto* zeta = app.add_subcommand("zeta", "Ihara zeta function or L-function");
  add_graph_options(zeta, c);
  zeta->add_option("--u", c.u, "parameters, real or (re,im)")->expected(1, -1);
  zeta->add_option("--k", c.k, "quasimomentum; given means the L-function")->expected(1, -1);
  zeta->add_option("--L", c.L, "cycle length cap");

  auto* bip = app.add_subcommand("bipartite", "bipartiteness of the fundamental and periodic graphs");
  add_graph_options(bip, c);

  auto* example = app.add_subcommand("example", "print a builtin graph as JSON");
  example->add_option("name", example_name, "square, kagome, gp, zline")->required();
  example->add_option("--p", c.p, "second loop index for gp");
  example->add_option("--output,-o", c.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    check_format(c);
    std::string out;
    if (*traces) out = cmd_traces(c);
    else if (*bands) out = cmd_bands(c);
    else if (*heat) out = cmd_heat(c);
    else if (*resolvent) out = cmd_resolvent(c);
    else if (*det) out = cmd_det(c);
    else if (*zeta) out = cmd_zeta(c);
    else if (*bip) out = cmd_bipartite(c);
    else out = graph_to_json(builtin_example(example_name, c.p)).dump(2) + "\n";

    if (c.output.empty()) {
      std::cout << out;
    } else {
      std::ofstream file(c.output, std::ios::binary);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + c.output + "'");
      file << out;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
