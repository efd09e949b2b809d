#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "periodic_spectra/fourier.hpp"
#include "periodic_spectra/graph.hpp"
#include "periodic_spectra/operator.hpp"

namespace periodic_spectra {

/// Precomputed fiber operator k -> M(k) for repeated evaluation.
class FiberOperator {
 public:
  FiberOperator(const FundamentalGraph& g, OperatorKind kind);

  OperatorKind kind() const { return kind_; }
  int size() const { return matrix_.size(); }
  int dimension() const { return matrix_.dimension(); }
  const RealMatrix& matrix() const { return matrix_; }
  const WeightedDigraph& digraph() const { return digraph_; }

  Eigen::MatrixXcd at(std::span<const double> k) const;
  /// Ascending, multiplicity-counted.
  Eigen::VectorXd eigenvalues(std::span<const double> k) const;
  /// Operator norm ||M(k)|| = max |lambda_j(k)|.
  double norm(std::span<const double> k) const;

 private:
  OperatorKind kind_;
  WeightedDigraph digraph_;
  RealMatrix matrix_;
};

Eigen::MatrixXcd fiber_matrix_numeric(const FundamentalGraph& g, OperatorKind kind, std::span<const double> k);
Eigen::VectorXd eigenvalues_at(const FundamentalGraph& g, OperatorKind kind, std::span<const double> k);
/// Ascending eigenvalues of a Hermitian matrix; EigensolverFailure on non-convergence.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

/// The uniform grid {2 pi j / M}^d, enumerated with the first coordinate slowest.
struct BrillouinGrid {
  int dimension = 0;
  int resolution = 0;

  std::size_t size() const;
  std::vector<double> point(std::size_t linear) const;
};

/// Average of f over the grid; evaluated in parallel, summed in grid order.
double grid_average(const BrillouinGrid& grid, const std::function<double(std::span<const double>)>& f);
/// Complex-valued variant.
std::complex<double> grid_average_complex(const BrillouinGrid& grid,
                                          const std::function<std::complex<double>(std::span<const double>)>& f);

struct BandStructure {
  OperatorKind kind = OperatorKind::Adjacency;
  int dimension = 0;
  int grid = 0;
  int branch_count = 0;
  std::vector<std::vector<double>> k_points;
  std::vector<std::vector<double>> samples;  // per k-point, ascending
  std::vector<std::pair<double, double>> bands;
  std::vector<bool> flat_flags;
  double flat_tol = 0.0;
  double spectral_radius = 0.0;
  double total_bandwidth = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

BandStructure band_structure(const FundamentalGraph& g, OperatorKind kind, int grid);

/// Grid average of p; GridTooCoarse unless grid > max |m_j| over the support.
double brillouin_quadrature(const RealPolynomial& p, int grid);
/// Smallest admissible grid for p.
int minimal_quadrature_grid(const RealPolynomial& p);

struct BandwidthReport {
  double v_star = 0.0;
  double bound = 0.0;
  double total_bandwidth = 0.0;
  bool satisfied = false;
};

/// Checks total bandwidth >= 2d / v_*^(nu-1), v_* = kappa_+ + diam(V - kappa).
BandwidthReport bandwidth_bound_check(const FundamentalGraph& g, const BandStructure& bands);

}  // namespace periodic_spectra
