#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "periodic_spectra/lattice.hpp"

namespace periodic_spectra {

struct VertexSpec {
  std::string id;
  double potential = 0.0;
  int degree = 0;  // number of oriented edges starting here; a loop counts twice
};

struct OrientedEdge {
  int id = 0;
  int from = 0;  // vertex position
  int to = 0;
  LatticeIndex index;
  int inverse_id = 0;
};

/// Input form of an edge: one orientation, endpoints by vertex label.
struct HalfEdgeSpec {
  std::string from;
  std::string to;
  LatticeIndex index;
};

struct VertexInput {
  std::string id;
  double potential = 0.0;
};

/// Quotient G/Gamma of a periodic graph: a finite multigraph whose oriented
/// edges carry indices in Z^d. Immutable once built.
///
/// Edge 2i is the i-th input half-edge and edge 2i+1 its inverse, so the edge
/// list is closed under inversion and inverse(inverse(e)) = e.
class FundamentalGraph {
 public:
  int dimension() const { return dimension_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<VertexSpec>& vertices() const { return vertices_; }
  const std::vector<OrientedEdge>& edges() const { return edges_; }
  const OrientedEdge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  /// Ids of the oriented edges starting at vertex x, ascending.
  std::span<const int> out_edges(int x) const { return out_[static_cast<std::size_t>(x)]; }

  double tau_plus() const { return tau_plus_; }      // max Euclidean norm of an edge index
  int tau_inf() const { return tau_inf_; }           // max l-infinity norm of an edge index
  int kappa_minus() const { return kappa_minus_; }
  int kappa_plus() const { return kappa_plus_; }
  bool is_regular() const { return kappa_minus_ == kappa_plus_; }
  bool has_loops() const;
  /// True when two distinct unoriented edges share endpoints and index.
  bool has_multiple_edges() const;

  int vertex_position(std::string_view id) const;
  std::vector<double> potentials() const;
  std::vector<HalfEdgeSpec> half_edges() const;

  /// Same graph with the potential replaced (one value per vertex).
  FundamentalGraph with_potential(std::span<const double> potential) const;

 private:
  friend FundamentalGraph build_graph(int, const std::vector<VertexInput>&,
                                      const std::vector<HalfEdgeSpec>&);
  int dimension_ = 0;
  std::vector<VertexSpec> vertices_;
  std::vector<OrientedEdge> edges_;
  std::vector<std::vector<int>> out_;
  double tau_plus_ = 0.0;
  int tau_inf_ = 0;
  int kappa_minus_ = 0;
  int kappa_plus_ = 0;
};

/// Validates the input and builds the graph, generating inverse edges.
/// Throws Error with DuplicateVertexId, DanglingEndpoint, ZeroIndexLoop,
/// DimensionMismatch or DisconnectedQuotient.
FundamentalGraph build_graph(int dimension, const std::vector<VertexInput>& vertices,
                             const std::vector<HalfEdgeSpec>& half_edges);

/// The fundamental graph with one zero-index loop e_x per vertex, weighted by
/// v_x = V_x - kappa_x. The loop e_x is its own inverse.
struct ModifiedGraph {
  FundamentalGraph base;
  std::vector<double> loop_weights;

  int loop_edge_id(int x) const { return base.edge_count() + x; }
  int edge_count() const { return base.edge_count() + base.vertex_count(); }
};

ModifiedGraph modify_graph(const FundamentalGraph& g);

}  // namespace periodic_spectra
