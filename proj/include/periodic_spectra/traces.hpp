#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "periodic_spectra/error.hpp"
#include "periodic_spectra/fourier.hpp"
#include "periodic_spectra/graph.hpp"
#include "periodic_spectra/operator.hpp"

namespace periodic_spectra {

/// Tr M^n(k) = sum_m c_m e^{-i<m,k>} as a finite Fourier series.
struct TraceSeries {
  int n = 0;
  OperatorKind kind = OperatorKind::Adjacency;
  int dimension = 0;
  int vertex_count = 0;
  RealPolynomial coefficients;
  std::optional<IntPolynomial> exact;  // Adjacency only
  double omega_plus = 0.0;             // max |omega(e)| of the (modified) graph
  double tau_plus = 0.0;

  double coefficient(const LatticeIndex& m) const { return coefficients.coefficient(m); }
  double constant_term() const { return coefficients.coefficient(LatticeIndex::zero(dimension)); }
  /// Real part of the series at k.
  double evaluate(std::span<const double> k) const { return coefficients.evaluate(k).real(); }
};

TraceSeries trace_series(const FundamentalGraph& g, OperatorKind kind, int n, const Limits& limits = {});
/// Series for n = 1..n_max, sharing matrix powers.
std::vector<TraceSeries> trace_series_up_to(const FundamentalGraph& g, OperatorKind kind, int n_max,
                                            const Limits& limits = {});
/// m = 0 coefficient: the Brillouin-zone average of Tr M^n(k).
double regularized_trace(const FundamentalGraph& g, OperatorKind kind, int n, const Limits& limits = {});

struct ClosedFormCheck {
  std::string name;
  double discrepancy = 0.0;
};

struct ClosedFormReport {
  int n = 0;
  std::vector<ClosedFormCheck> checks;
  double max_discrepancy = 0.0;
  bool passed = false;
};

/// Builds Tr H^n (n <= 3) and the difference identities directly from the
/// cycle sets C_1..C_n and compares them coefficientwise with trace_series.
ClosedFormReport closed_form_check(const FundamentalGraph& g, int n, const Limits& limits = {});

struct BipartiteFundamentalReport {
  bool bipartite = false;
  bool coloring_verdict = false;
  std::optional<bool> trace_verdict;  // empty when nu exceeds the power cap
  bool used_fallback = false;
  std::vector<int> coloring;          // 0/1 per vertex when bipartite
};

/// Quotient bipartiteness: N_n = 0 for all odd n <= nu, cross-checked by 2-coloring.
BipartiteFundamentalReport bipartite_fundamental(const FundamentalGraph& g, const Limits& limits = {});

struct BipartitePeriodicReport {
  bool bipartite = false;
  /// Witness: p(x) per vertex and epsilon on the basis vectors, with
  /// p(x) + p(y) + epsilon(tau(e)) = 1 mod 2 on every edge.
  std::optional<std::vector<int>> parity;
  std::optional<std::vector<int>> character;
  /// Smallest odd n with N_n^0 != 0 among those checked.
  std::optional<int> odd_zero_index_length;
  int checked_up_to = 0;
  bool consistent = false;
};

/// Bipartiteness of the periodic graph (no odd zero-index closed walk).
BipartitePeriodicReport bipartite_periodic(const FundamentalGraph& g, const Limits& limits = {});

}  // namespace periodic_spectra
