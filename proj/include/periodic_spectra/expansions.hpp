#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "periodic_spectra/cycles.hpp"
#include "periodic_spectra/spectral.hpp"
#include "periodic_spectra/traces.hpp"

namespace periodic_spectra {

/// A truncated series or product together with a bound on what was cut off.
struct SeriesApprox {
  std::complex<double> value;
  int truncation = 0;  // N_max for series, length cap L for products
  double tail_bound = 0.0;
  std::optional<std::complex<double>> oracle;
  std::optional<double> abs_error;

  void set_oracle(std::complex<double> v) {
    oracle = v;
    abs_error = std::abs(value - v);
  }
};

/// Uniform bound on ||M(k)||: min of the majorant radius and 1.05 times the
/// largest norm seen on the grid.
double global_norm_estimate(const FiberOperator& op, int grid);

/// Heat and resolvent trace expansions of one operator. Trace series are
/// computed once and reused across parameters.
class TraceExpansion {
 public:
  TraceExpansion(const FundamentalGraph& g, OperatorKind kind, const Limits& limits = {});

  const FiberOperator& fiber() const { return fiber_; }
  int vertex_count() const { return nu_; }

  /// nu + sum_{n<=N} t^n/n! Tr M^n(k); oracle sum_j e^{t lambda_j(k)}.
  SeriesApprox heat(std::complex<double> t, std::span<const double> k, int n_max);
  /// nu + sum_{n<=N} t^n/n! (regularized traces); oracle is the grid quadrature.
  SeriesApprox heat_integrated(std::complex<double> t, int n_max, int oracle_grid = 0);
  /// -nu/lambda - sum_{n<=N} Tr M^n(k)/lambda^{n+1}; oracle sum_j 1/(lambda_j(k) - lambda).
  SeriesApprox resolvent(std::complex<double> lambda, std::span<const double> k, int n_max);
  SeriesApprox resolvent_integrated(std::complex<double> lambda, int n_max, int oracle_grid = 0);

  const TraceSeries& series(int n);
  /// Uniform norm estimate used by the integrated variants.
  double global_norm();

 private:
  int default_oracle_grid(int n_max) const;

  FundamentalGraph graph_;
  OperatorKind kind_;
  Limits limits_;
  FiberOperator fiber_;
  int nu_;
  std::vector<TraceSeries> series_;
  std::optional<double> global_norm_;
};

SeriesApprox heat_trace(const FundamentalGraph& g, OperatorKind kind, std::complex<double> t,
                        std::span<const double> k, int n_max, const Limits& limits = {});
SeriesApprox heat_trace_integrated(const FundamentalGraph& g, OperatorKind kind, std::complex<double> t, int n_max,
                                   const Limits& limits = {});
SeriesApprox resolvent_trace(const FundamentalGraph& g, OperatorKind kind, std::complex<double> lambda,
                             std::span<const double> k, int n_max, const Limits& limits = {});
SeriesApprox resolvent_trace_integrated(const FundamentalGraph& g, OperatorKind kind, std::complex<double> lambda,
                                        int n_max, const Limits& limits = {});

/// Orbit of a prime cycle under rotation, represented by its least rotation.
struct CycleClass {
  Cycle representative;
  int length = 0;
  LatticeIndex index;
  double weight = 1.0;
  int multiplicity = 0;  // number of distinct rotations
};

/// Prime cycle classes of length <= L, in order of length then representative.
std::vector<CycleClass> prime_classes(const WeightedDigraph& g, int max_length, bool zero_index_only,
                                      bool non_backtracking, const Limits& limits = {});
std::vector<CycleClass> prime_classes(const FundamentalGraph& g, int max_length, bool zero_index_only,
                                      bool non_backtracking, const Limits& limits = {});
std::vector<CycleClass> prime_classes(const ModifiedGraph& g, int max_length, bool zero_index_only,
                                      bool non_backtracking, const Limits& limits = {});

/// Prime classes of one operator, enumerated once up to a length cap.
class PrimeCycleTable {
 public:
  PrimeCycleTable(const FundamentalGraph& g, OperatorKind kind, int max_length, const Limits& limits = {});

  const FiberOperator& fiber() const { return fiber_; }
  const std::vector<CycleClass>& classes() const { return classes_; }
  int max_length() const { return max_length_; }
  double majorant_radius() const { return majorant_; }

  /// prod over classes with |c| <= L of (1 - e^{-i<tau,k>} omega t^|c|); oracle det(I - t M(k)).
  SeriesApprox determinant(std::complex<double> t, std::span<const double> k, int L) const;
  /// log prod over zero-index classes of (1 - omega t^|c|); oracle is the grid
  /// quadrature of log det(I - t M(k)).
  SeriesApprox gamma_log_determinant(std::complex<double> t, int L, int oracle_grid = 32) const;
  /// prod over classes of (1 - e^{-i<tau,k>} u^|c|)^{-1}; oracle 1/det(I - u A(k)). Adjacency only.
  SeriesApprox l_function(std::complex<double> u, std::span<const double> k, int L) const;

 private:
  double product_tail(double x, int L) const;
  int checked_length(int L) const;

  OperatorKind kind_;
  FiberOperator fiber_;
  int nu_;
  int max_length_;
  double majorant_;
  std::vector<CycleClass> classes_;
};

SeriesApprox determinant_product(const FundamentalGraph& g, OperatorKind kind, std::complex<double> t,
                                 std::span<const double> k, int L, const Limits& limits = {});
SeriesApprox gamma_log_determinant(const FundamentalGraph& g, OperatorKind kind, std::complex<double> t, int L,
                                   const Limits& limits = {});
SeriesApprox l_function(const FundamentalGraph& g, std::complex<double> u, std::span<const double> k, int L,
                        const Limits& limits = {});

/// prod over non-backtracking zero-index prime classes of (1 - u^|c|)^{-1}.
SeriesApprox ihara_zeta(const FundamentalGraph& g, std::complex<double> u, int L, const Limits& limits = {});

/// Coefficients 1..L of u d/du log Z(u), read off the prime classes.
std::vector<std::int64_t> ihara_log_derivative_from_classes(const FundamentalGraph& g, int L,
                                                            const Limits& limits = {});
/// The same coefficients counted directly: non-backtracking zero-index cycles of each length.
std::vector<std::int64_t> ihara_log_derivative_bruteforce(const FundamentalGraph& g, int L,
                                                          const Limits& limits = {});

}  // namespace periodic_spectra
