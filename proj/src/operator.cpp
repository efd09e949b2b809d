#include "periodic_spectra/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "periodic_spectra/error.hpp"

namespace periodic_spectra {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Adjacency: return "adjacency";
    case OperatorKind::NegLaplacian: return "neg-laplacian";
    case OperatorKind::Schrodinger: return "schrodinger";
    case OperatorKind::Normalized: return "normalized";
  }
  return "unknown";
}

OperatorKind parse_operator_kind(std::string_view name) {
  if (name == "adjacency") return OperatorKind::Adjacency;
  if (name == "neg-laplacian" || name == "laplacian") return OperatorKind::NegLaplacian;
  if (name == "schrodinger") return OperatorKind::Schrodinger;
  if (name == "normalized") return OperatorKind::Normalized;
  throw Error(ErrorCode::InvalidArgument, "unknown operator kind '" + std::string(name) + "'");
}

double WeightedDigraph::omega_plus() const {
  double w = 0.0;
  for (const auto& e : edges) w = std::max(w, std::abs(e.weight));
  return w;
}

double WeightedDigraph::majorant_radius() const {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(vertex_count, vertex_count);
  for (const auto& e : edges) w(e.from, e.to) += std::abs(e.weight);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

WeightedDigraph base_digraph(const FundamentalGraph& g, OperatorKind kind, bool zero_potential) {
  WeightedDigraph out;
  out.dimension = g.dimension();
  out.vertex_count = g.vertex_count();
  out.kind = kind;
  for (const auto& v : g.vertices()) {
    out.degree.push_back(v.degree);
    out.potential.push_back(zero_potential ? 0.0 : v.potential);
    out.vertex_shift.push_back(out.potential.back() - v.degree);
  }
  out.edges.reserve(static_cast<std::size_t>(g.edge_count()));
  for (const auto& e : g.edges()) {
    double w = 1.0;
    if (kind == OperatorKind::Normalized) {
      w = 1.0 / std::sqrt(static_cast<double>(out.degree[static_cast<std::size_t>(e.from)]) *
                          out.degree[static_cast<std::size_t>(e.to)]);
    }
    out.edges.push_back({e.from, e.to, e.index, w, e.inverse_id, false});
  }
  out.out.assign(static_cast<std::size_t>(g.vertex_count()), {});
  for (int x = 0; x < g.vertex_count(); ++x) {
    auto ids = g.out_edges(x);
    out.out[static_cast<std::size_t>(x)].assign(ids.begin(), ids.end());
  }
  return out;
}

}  // namespace

WeightedDigraph weighted_digraph(const FundamentalGraph& g, OperatorKind kind) {
  if (uses_modified_graph(kind)) {
    throw Error(ErrorCode::WrongGraphFlavor,
                std::string(to_string(kind)) + " is defined on the modified graph; call modify_graph first");
  }
  return base_digraph(g, kind, false);
}

WeightedDigraph weighted_digraph(const ModifiedGraph& g, OperatorKind kind) {
  const bool zero_potential = kind == OperatorKind::NegLaplacian;
  WeightedDigraph out = base_digraph(g.base, kind, zero_potential);
  if (!uses_modified_graph(kind)) return out;
  for (int x = 0; x < g.base.vertex_count(); ++x) {
    const int id = g.loop_edge_id(x);
    const double w = zero_potential ? -static_cast<double>(out.degree[static_cast<std::size_t>(x)])
                                    : g.loop_weights[static_cast<std::size_t>(x)];
    out.edges.push_back({x, x, LatticeIndex::zero(g.base.dimension()), w, id, true});
    out.out[static_cast<std::size_t>(x)].push_back(id);
  }
  return out;
}

WeightedDigraph operator_digraph(const FundamentalGraph& g, OperatorKind kind) {
  if (uses_modified_graph(kind)) return weighted_digraph(modify_graph(g), kind);
  return weighted_digraph(g, kind);
}

}  // namespace periodic_spectra
