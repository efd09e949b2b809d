#include "periodic_spectra/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "periodic_spectra/error.hpp"

namespace periodic_spectra {

namespace {

constexpr double kCellTolerance = 1e-9;

void check_dimension(int dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimension must be in [1, " + std::to_string(kMaxDimension) + "], got " +
                    std::to_string(dimension));
  }
}

}  // namespace

LatticeIndex::LatticeIndex(int dimension) : dim_(dimension) {
  if (dimension < 0 || dimension > kMaxDimension) check_dimension(dimension);
}

LatticeIndex::LatticeIndex(std::initializer_list<int> coords)
    : LatticeIndex(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), coords_.begin());
}

LatticeIndex LatticeIndex::from_span(std::span<const int> coords) {
  LatticeIndex out(static_cast<int>(coords.size()));
  std::copy(coords.begin(), coords.end(), out.coords_.begin());
  return out;
}

bool LatticeIndex::is_zero() const {
  return std::all_of(coords_.begin(), coords_.begin() + dim_, [](int c) { return c == 0; });
}

double LatticeIndex::norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += static_cast<double>(coords_[i]) * coords_[i];
  return std::sqrt(s);
}

int LatticeIndex::max_abs() const {
  int m = 0;
  for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(coords_[i]));
  return m;
}

std::vector<int> LatticeIndex::to_vector() const {
  return {coords_.begin(), coords_.begin() + dim_};
}

std::string LatticeIndex::to_string() const {
  std::string s = "(";
  for (int i = 0; i < dim_; ++i) {
    if (i) s += ",";
    s += std::to_string(coords_[i]);
  }
  return s + ")";
}

LatticeIndex& LatticeIndex::operator+=(const LatticeIndex& other) {
  if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "index dimensions differ");
  for (int i = 0; i < dim_; ++i) coords_[i] += other.coords_[i];
  return *this;
}

LatticeIndex& LatticeIndex::operator-=(const LatticeIndex& other) {
  if (other.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "index dimensions differ");
  for (int i = 0; i < dim_; ++i) coords_[i] -= other.coords_[i];
  return *this;
}

LatticeIndex LatticeIndex::operator-() const {
  LatticeIndex out(*this);
  for (int i = 0; i < dim_; ++i) out.coords_[i] = -coords_[i];
  return out;
}

LatticeIndex LatticeIndex::operator*(int factor) const {
  LatticeIndex out(*this);
  for (int i = 0; i < dim_; ++i) out.coords_[i] *= factor;
  return out;
}

double LatticeIndex::dot(std::span<const double> k) const {
  if (static_cast<int>(k.size()) != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "quasimomentum has dimension " +
                                                  std::to_string(k.size()) + ", expected " +
                                                  std::to_string(dim_));
  }
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += coords_[i] * k[i];
  return s;
}

LatticeBasis::LatticeBasis(Eigen::MatrixXd columns) : columns_(std::move(columns)) {
  if (columns_.rows() != columns_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "basis matrix must be square");
  }
  check_dimension(static_cast<int>(columns_.cols()));
  const double scale = std::max(1.0, columns_.cwiseAbs().maxCoeff());
  const double det = columns_.determinant();
  if (!std::isfinite(det) ||
      std::abs(det) <= 1e-12 * std::pow(scale, static_cast<double>(columns_.cols()))) {
    throw Error(ErrorCode::SingularBasis, "lattice basis is not invertible");
  }
  inverse_ = columns_.inverse();
}

LatticeBasis LatticeBasis::identity(int dimension) {
  check_dimension(dimension);
  return LatticeBasis(Eigen::MatrixXd::Identity(dimension, dimension));
}

Eigen::VectorXd LatticeBasis::coordinates(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match basis");
  }
  Eigen::VectorXd p(dimension());
  for (int i = 0; i < dimension(); ++i) {
    if (!std::isfinite(x[i])) throw Error(ErrorCode::InvalidArgument, "point is not finite");
    p(i) = x[i];
  }
  return inverse_ * p;
}

CellDecomposition decompose_coordinates(std::span<const double> x, const LatticeBasis& basis) {
  const Eigen::VectorXd coords = basis.coordinates(x);
  CellDecomposition out{std::vector<double>(static_cast<std::size_t>(basis.dimension())),
                        LatticeIndex(basis.dimension())};
  for (int i = 0; i < basis.dimension(); ++i) {
    double whole = std::floor(coords(i));
    double frac = coords(i) - whole;
    // Snap values just below a cell boundary onto the next cell.
    if (frac >= 1.0 - kCellTolerance) {
      frac = 0.0;
      whole += 1.0;
    }
    out.fractional[static_cast<std::size_t>(i)] = frac;
    out.lattice_part[i] = static_cast<int>(whole);
  }
  return out;
}

LatticeIndex index_from_embedding(std::span<const double> x, std::span<const double> y,
                                  const LatticeBasis& basis) {
  return decompose_coordinates(y, basis).lattice_part - decompose_coordinates(x, basis).lattice_part;
}

}  // namespace periodic_spectra
