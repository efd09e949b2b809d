#include "periodic_spectra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "periodic_spectra/error.hpp"
#include "periodic_spectra/parallel.hpp"

namespace periodic_spectra {

FiberOperator::FiberOperator(const FundamentalGraph& g, OperatorKind kind)
    : kind_(kind), digraph_(operator_digraph(g, kind)), matrix_(matrix_from_digraph(digraph_)) {}

Eigen::MatrixXcd FiberOperator::at(std::span<const double> k) const {
  if (static_cast<int>(k.size()) != dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "quasimomentum has " + std::to_string(k.size()) +
                                                  " components, expected " + std::to_string(dimension()));
  }
  return matrix_.evaluate(k);
}

Eigen::VectorXd FiberOperator::eigenvalues(std::span<const double> k) const { return hermitian_eigenvalues(at(k)); }

double FiberOperator::norm(std::span<const double> k) const {
  const Eigen::VectorXd ev = eigenvalues(k);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

Eigen::MatrixXcd fiber_matrix_numeric(const FundamentalGraph& g, OperatorKind kind, std::span<const double> k) {
  return FiberOperator(g, kind).at(k);
}

Eigen::VectorXd eigenvalues_at(const FundamentalGraph& g, OperatorKind kind, std::span<const double> k) {
  return FiberOperator(g, kind).eigenvalues(k);
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite()) {
    throw Error(ErrorCode::EigensolverFailure, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

std::size_t BrillouinGrid::size() const {
  std::size_t n = 1;
  for (int i = 0; i < dimension; ++i) n *= static_cast<std::size_t>(resolution);
  return n;
}

std::vector<double> BrillouinGrid::point(std::size_t linear) const {
  std::vector<double> k(static_cast<std::size_t>(dimension));
  for (int i = dimension - 1; i >= 0; --i) {
    const auto j = linear % static_cast<std::size_t>(resolution);
    linear /= static_cast<std::size_t>(resolution);
    k[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * static_cast<double>(j) / resolution;
  }
  return k;
}

double grid_average(const BrillouinGrid& grid, const std::function<double(std::span<const double>)>& f) {
  std::vector<double> values(grid.size());
  parallel_for(values.size(), [&](std::size_t i) { values[i] = f(grid.point(i)); });
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

std::complex<double> grid_average_complex(const BrillouinGrid& grid,
                                          const std::function<std::complex<double>(std::span<const double>)>& f) {
  std::vector<std::complex<double>> values(grid.size());
  parallel_for(values.size(), [&](std::size_t i) { values[i] = f(grid.point(i)); });
  std::complex<double> s = 0.0;
  for (auto v : values) s += v;
  return s / static_cast<double>(values.size());
}

BandStructure band_structure(const FundamentalGraph& g, OperatorKind kind, int grid) {
  if (grid < 2) throw Error(ErrorCode::InvalidArgument, "band grid must be >= 2, got " + std::to_string(grid));
  const FiberOperator op(g, kind);
  const BrillouinGrid bz{g.dimension(), grid};
  const int nu = g.vertex_count();

  BandStructure out;
  out.kind = kind;
  out.dimension = g.dimension();
  out.grid = grid;
  out.branch_count = nu;
  out.k_points.resize(bz.size());
  out.samples.resize(bz.size());
  parallel_for(bz.size(), [&](std::size_t i) {
    out.k_points[i] = bz.point(i);
    const Eigen::VectorXd ev = op.eigenvalues(out.k_points[i]);
    out.samples[i].assign(ev.data(), ev.data() + ev.size());
  });

  out.bands.assign(static_cast<std::size_t>(nu), {0.0, 0.0});
  for (int j = 0; j < nu; ++j) {
    double lo = out.samples[0][static_cast<std::size_t>(j)];
    double hi = lo;
    for (const auto& s : out.samples) {
      lo = std::min(lo, s[static_cast<std::size_t>(j)]);
      hi = std::max(hi, s[static_cast<std::size_t>(j)]);
    }
    out.bands[static_cast<std::size_t>(j)] = {lo, hi};
  }
  out.min_eigenvalue = out.bands.front().first;
  out.max_eigenvalue = out.bands.back().second;
  out.spectral_radius = std::max(std::abs(out.min_eigenvalue), std::abs(out.max_eigenvalue));
  out.flat_tol = 1e-9 * (1.0 + out.spectral_radius);
  for (const auto& [lo, hi] : out.bands) {
    const bool flat = hi - lo < out.flat_tol;
    out.flat_flags.push_back(flat);
    if (!flat) out.total_bandwidth += hi - lo;
  }
  return out;
}

int minimal_quadrature_grid(const RealPolynomial& p) { return std::max(1, p.max_abs_index() + 1); }

double brillouin_quadrature(const RealPolynomial& p, int grid) {
  if (grid < minimal_quadrature_grid(p)) {
    throw Error(ErrorCode::GridTooCoarse, "grid " + std::to_string(grid) + " must exceed the largest index " +
                                              std::to_string(p.max_abs_index()) + " in the support");
  }
  if (p.is_zero()) return 0.0;
  return grid_average(BrillouinGrid{p.dimension(), grid},
                      [&](std::span<const double> k) { return p.evaluate(k).real(); });
}

BandwidthReport bandwidth_bound_check(const FundamentalGraph& g, const BandStructure& bands) {
  if (bands.kind != OperatorKind::Schrodinger) {
    throw Error(ErrorCode::InvalidArgument, "the bandwidth bound concerns the Schrodinger operator");
  }
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& v : g.vertices()) {
    const double s = v.potential - v.degree;
    lo = first ? s : std::min(lo, s);
    hi = first ? s : std::max(hi, s);
    first = false;
  }
  BandwidthReport report;
  report.v_star = g.kappa_plus() + (hi - lo);
  report.bound = 2.0 * g.dimension() / std::pow(report.v_star, g.vertex_count() - 1);
  report.total_bandwidth = bands.total_bandwidth;
  report.satisfied = report.total_bandwidth >= report.bound;
  return report;
}

}  // namespace periodic_spectra
