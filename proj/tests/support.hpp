#pragma once

// Independent reference computations for the tests. Nothing here goes through
// FourierMatrix or the library's cycle enumeration.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "periodic_spectra/examples.hpp"
#include "periodic_spectra/graph.hpp"
#include "periodic_spectra/operator.hpp"

namespace testing {

using namespace periodic_spectra;

struct RefEdge {
  int from, to;
  LatticeIndex index;
  double weight;
};

// Weighted edge list of the operator, built straight from the graph.
inline std::vector<RefEdge> reference_edges(const FundamentalGraph& g, OperatorKind kind) {
  std::vector<RefEdge> out;
  for (const auto& e : g.edges()) {
    double w = 1.0;
    if (kind == OperatorKind::Normalized) {
      w = 1.0 / std::sqrt(double(g.vertices()[e.from].degree) * g.vertices()[e.to].degree);
    }
    out.push_back({e.from, e.to, e.index, w});
  }
  if (kind == OperatorKind::Schrodinger || kind == OperatorKind::NegLaplacian) {
    for (int x = 0; x < g.vertex_count(); ++x) {
      const auto& v = g.vertices()[x];
      const double pot = kind == OperatorKind::Schrodinger ? v.potential : 0.0;
      out.push_back({x, x, LatticeIndex::zero(g.dimension()), pot - v.degree});
    }
  }
  return out;
}

inline Eigen::MatrixXcd reference_fiber(const FundamentalGraph& g, OperatorKind kind, const std::vector<double>& k) {
  const int nu = g.vertex_count();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nu, nu);
  for (const auto& e : reference_edges(g, kind)) {
    double phase = 0.0;
    for (int i = 0; i < g.dimension(); ++i) phase += e.index[i] * k[i];
    m(e.from, e.to) += e.weight * std::complex<double>(std::cos(phase), -std::sin(phase));
  }
  return m;
}

inline std::complex<double> reference_trace_power(const FundamentalGraph& g, OperatorKind kind,
                                                  const std::vector<double>& k, int n) {
  const Eigen::MatrixXcd m = reference_fiber(g, kind, k);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  for (int i = 0; i < n; ++i) p = p * m;
  return p.trace();
}

// Sum of omega(c) over closed edge sequences of length n, grouped by index:
// plain recursion over edge sequences, filtering by endpoint continuity.
inline std::map<LatticeIndex, double> reference_weight_sums(const FundamentalGraph& g, OperatorKind kind, int n) {
  const auto edges = reference_edges(g, kind);
  std::map<LatticeIndex, double> out;
  std::vector<int> seq;
  std::function<void()> rec = [&] {
    if (static_cast<int>(seq.size()) == n) {
      if (edges[seq.back()].to != edges[seq.front()].from) return;
      LatticeIndex m = LatticeIndex::zero(g.dimension());
      double w = 1.0;
      for (int id : seq) {
        m += edges[id].index;
        w *= edges[id].weight;
      }
      out[m] += w;
      return;
    }
    for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
      if (!seq.empty() && edges[seq.back()].to != edges[id].from) continue;
      seq.push_back(id);
      rec();
      seq.pop_back();
    }
  };
  rec();
  return out;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240601);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline std::vector<double> random_k(int d) {
  std::vector<double> k(d);
  for (auto& x : k) x = uniform(-std::numbers::pi, std::numbers::pi);
  return k;
}

inline std::vector<double> random_potential(int nu, double scale = 2.0) {
  std::vector<double> v(nu);
  for (auto& x : v) x = uniform(-scale, scale);
  return v;
}

struct Named {
  const char* name;
  FundamentalGraph graph;
};

inline std::vector<Named> builtin_graphs() {
  return {{"square", square_lattice()}, {"kagome", kagome_lattice()}, {"zline", z_line()},
          {"g2", gp_graph(2)},          {"g3", gp_graph(3)}};
}

inline const std::vector<OperatorKind>& all_kinds() {
  static const std::vector<OperatorKind> kinds{OperatorKind::Adjacency, OperatorKind::NegLaplacian,
                                               OperatorKind::Schrodinger, OperatorKind::Normalized};
  return kinds;
}

}  // namespace testing
