#include "periodic_spectra/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

#include "periodic_spectra/error.hpp"

namespace periodic_spectra {

FundamentalGraph build_graph(int dimension, const std::vector<VertexInput>& vertices,
                             const std::vector<HalfEdgeSpec>& half_edges) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimension must be in [1, 4], got " + std::to_string(dimension));
  }
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "graph has no vertices");

  FundamentalGraph g;
  g.dimension_ = dimension;
  std::unordered_map<std::string, int> position;
  for (const auto& v : vertices) {
    if (!std::isfinite(v.potential)) {
      throw Error(ErrorCode::InvalidArgument, "potential of vertex '" + v.id + "' is not finite");
    }
    if (!position.emplace(v.id, static_cast<int>(g.vertices_.size())).second) {
      throw Error(ErrorCode::DuplicateVertexId, "vertex id '" + v.id + "' appears twice");
    }
    g.vertices_.push_back({v.id, v.potential, 0});
  }

  auto lookup = [&](const std::string& id) {
    auto it = position.find(id);
    if (it == position.end()) {
      throw Error(ErrorCode::DanglingEndpoint, "edge endpoint '" + id + "' is not a vertex");
    }
    return it->second;
  };

  g.edges_.reserve(2 * half_edges.size());
  for (const auto& h : half_edges) {
    if (h.index.dimension() != dimension) {
      throw Error(ErrorCode::DimensionMismatch, "edge " + h.from + "->" + h.to + " has an index of length " +
                                                    std::to_string(h.index.dimension()));
    }
    const int from = lookup(h.from);
    const int to = lookup(h.to);
    if (from == to && h.index.is_zero()) {
      throw Error(ErrorCode::ZeroIndexLoop, "loop at '" + h.from + "' has zero index");
    }
    const int id = static_cast<int>(g.edges_.size());
    g.edges_.push_back({id, from, to, h.index, id + 1});
    g.edges_.push_back({id + 1, to, from, -h.index, id});
  }

  g.out_.assign(g.vertices_.size(), {});
  for (const auto& e : g.edges_) {
    g.out_[static_cast<std::size_t>(e.from)].push_back(e.id);
    g.vertices_[static_cast<std::size_t>(e.from)].degree += 1;
    g.tau_plus_ = std::max(g.tau_plus_, e.index.norm());
    g.tau_inf_ = std::max(g.tau_inf_, e.index.max_abs());
  }

  // Quotient connectivity, indices forgotten.
  std::vector<int> parent(g.vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  for (const auto& e : g.edges_) parent[static_cast<std::size_t>(find(e.from))] = find(e.to);
  const int root = find(0);
  for (int x = 0; x < g.vertex_count(); ++x) {
    if (find(x) != root) {
      throw Error(ErrorCode::DisconnectedQuotient,
                  "vertex '" + g.vertices_[static_cast<std::size_t>(x)].id + "' is not connected to '" +
                      g.vertices_[0].id + "'");
    }
  }

  auto [lo, hi] = std::minmax_element(g.vertices_.begin(), g.vertices_.end(),
                                      [](const auto& a, const auto& b) { return a.degree < b.degree; });
  g.kappa_minus_ = lo->degree;
  g.kappa_plus_ = hi->degree;
  if (g.kappa_minus_ < 1) {
    throw Error(ErrorCode::DisconnectedQuotient, "vertex '" + lo->id + "' has no edges");
  }
  return g;
}

bool FundamentalGraph::has_loops() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const auto& e) { return e.from == e.to; });
}

bool FundamentalGraph::has_multiple_edges() const {
  std::set<std::tuple<int, int, LatticeIndex>> seen;
  for (const auto& e : edges_) {
    if (!seen.emplace(e.from, e.to, e.index).second) return true;
  }
  return false;
}

int FundamentalGraph::vertex_position(std::string_view id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id == id) return static_cast<int>(i);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown vertex '" + std::string(id) + "'");
}

std::vector<double> FundamentalGraph::potentials() const {
  std::vector<double> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(v.potential);
  return out;
}

std::vector<HalfEdgeSpec> FundamentalGraph::half_edges() const {
  std::vector<HalfEdgeSpec> out;
  out.reserve(edges_.size() / 2);
  for (std::size_t i = 0; i < edges_.size(); i += 2) {
    const auto& e = edges_[i];
    out.push_back({vertices_[static_cast<std::size_t>(e.from)].id,
                   vertices_[static_cast<std::size_t>(e.to)].id, e.index});
  }
  return out;
}

FundamentalGraph FundamentalGraph::with_potential(std::span<const double> potential) const {
  if (potential.size() != vertices_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "potential needs " + std::to_string(vertices_.size()) +
                                                  " values, got " + std::to_string(potential.size()));
  }
  FundamentalGraph out(*this);
  for (std::size_t i = 0; i < potential.size(); ++i) {
    if (!std::isfinite(potential[i])) throw Error(ErrorCode::InvalidArgument, "potential is not finite");
    out.vertices_[i].potential = potential[i];
  }
  return out;
}

ModifiedGraph modify_graph(const FundamentalGraph& g) {
  ModifiedGraph m{g, {}};
  m.loop_weights.reserve(static_cast<std::size_t>(g.vertex_count()));
  for (const auto& v : g.vertices()) m.loop_weights.push_back(v.potential - v.degree);
  return m;
}

}  // namespace periodic_spectra
