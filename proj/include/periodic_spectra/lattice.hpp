#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace periodic_spectra {

inline constexpr int kMaxDimension = 4;

/// A vector of Z^d with d <= kMaxDimension. Used for edge indices, cycle
/// indices and Fourier keys. Ordering is lexicographic within one dimension.
class LatticeIndex {
 public:
  LatticeIndex() = default;
  explicit LatticeIndex(int dimension);
  LatticeIndex(std::initializer_list<int> coords);
  static LatticeIndex from_span(std::span<const int> coords);
  static LatticeIndex zero(int dimension) { return LatticeIndex(dimension); }

  int dimension() const { return dim_; }
  int operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }

  bool is_zero() const;
  double norm() const;  // Euclidean
  int max_abs() const;  // l-infinity
  std::vector<int> to_vector() const;
  std::string to_string() const;

  LatticeIndex& operator+=(const LatticeIndex& other);
  LatticeIndex& operator-=(const LatticeIndex& other);
  friend LatticeIndex operator+(LatticeIndex a, const LatticeIndex& b) { return a += b; }
  friend LatticeIndex operator-(LatticeIndex a, const LatticeIndex& b) { return a -= b; }
  LatticeIndex operator-() const;
  LatticeIndex operator*(int factor) const;

  /// <m, k> for a quasimomentum k of matching dimension.
  double dot(std::span<const double> k) const;

  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
  friend auto operator<=>(const LatticeIndex&, const LatticeIndex&) = default;

 private:
  int dim_ = 0;
  std::array<int, kMaxDimension> coords_{};
};

/// Periods a_1..a_d of the lattice, stored as the columns of a d x d matrix.
class LatticeBasis {
 public:
  explicit LatticeBasis(Eigen::MatrixXd columns);
  static LatticeBasis identity(int dimension);

  int dimension() const { return static_cast<int>(columns_.cols()); }
  const Eigen::MatrixXd& columns() const { return columns_; }
  /// Coordinates of x with respect to the basis (x_A).
  Eigen::VectorXd coordinates(std::span<const double> x) const;

 private:
  Eigen::MatrixXd columns_;
  Eigen::MatrixXd inverse_;
};

struct CellDecomposition {
  std::vector<double> fractional;  // each component in [0, 1)
  LatticeIndex lattice_part;
};

/// Splits x = x_0 + [x] with x_0 in the fundamental cell.
CellDecomposition decompose_coordinates(std::span<const double> x, const LatticeBasis& basis);

/// Edge index [y]_A - [x]_A of the edge from x to y.
LatticeIndex index_from_embedding(std::span<const double> x, std::span<const double> y,
                                  const LatticeBasis& basis);

}  // namespace periodic_spectra
