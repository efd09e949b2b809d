#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "periodic_spectra/graph.hpp"

namespace periodic_spectra {

/// Which fiber operator is meant:
///   Adjacency     A(k)
///   NegLaplacian  -Delta(k) = A(k) - kappa   (Schrodinger with V = 0)
///   Schrodinger   H(k) = A(k) - kappa + V
///   Normalized    Delta_n(k), entries e^{-i<tau,k>} / sqrt(kappa_x kappa_y)
enum class OperatorKind { Adjacency, NegLaplacian, Schrodinger, Normalized };

std::string_view to_string(OperatorKind kind);
OperatorKind parse_operator_kind(std::string_view name);

/// True for the kinds realized as weighted adjacency on the modified graph.
inline bool uses_modified_graph(OperatorKind kind) {
  return kind == OperatorKind::NegLaplacian || kind == OperatorKind::Schrodinger;
}

struct WeightedEdge {
  int from = 0;
  int to = 0;
  LatticeIndex index;
  double weight = 1.0;
  int inverse = 0;
  bool added_loop = false;  // e_x of the modified graph
};

/// Flattened view of an operator as a weighted adjacency on a (possibly
/// modified) fundamental graph. Edge ids coincide with FundamentalGraph ids;
/// added loops follow with id edge_count() + x.
struct WeightedDigraph {
  int dimension = 0;
  int vertex_count = 0;
  OperatorKind kind = OperatorKind::Adjacency;
  std::vector<WeightedEdge> edges;
  std::vector<std::vector<int>> out;  // ascending edge ids per vertex
  std::vector<double> vertex_shift;   // v_x = V_x - kappa_x (zero-potential variant for NegLaplacian)
  std::vector<int> degree;            // kappa_x of the underlying fundamental graph
  std::vector<double> potential;      // V_x

  int edge_count() const { return static_cast<int>(edges.size()); }
  /// max |omega(e)|
  double omega_plus() const;
  /// Spectral radius of the entrywise absolute weight matrix; bounds ||M(k)|| for every k.
  double majorant_radius() const;
};

/// Adjacency and Normalized only; the other kinds need the modified graph.
WeightedDigraph weighted_digraph(const FundamentalGraph& g, OperatorKind kind);
/// All kinds. Adjacency and Normalized use the base edges only.
WeightedDigraph weighted_digraph(const ModifiedGraph& g, OperatorKind kind);
/// Picks the graph flavor the kind requires.
WeightedDigraph operator_digraph(const FundamentalGraph& g, OperatorKind kind);

}  // namespace periodic_spectra
