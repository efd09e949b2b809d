#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "periodic_spectra/error.hpp"
#include "periodic_spectra/graph.hpp"
#include "periodic_spectra/lattice.hpp"
#include "periodic_spectra/operator.hpp"

namespace periodic_spectra {

using BigInt = boost::multiprecision::cpp_int;

template <class Coeff>
inline double coefficient_to_double(const Coeff& c) {
  if constexpr (std::is_same_v<Coeff, BigInt>) {
    return c.template convert_to<double>();
  } else {
    return static_cast<double>(c);
  }
}

/// Converts an exact coefficient to int64, throwing IntegerOverflow when it does not fit.
std::int64_t to_int64(const BigInt& value);

/// Finitely supported map Z^d -> Coeff, read as the trigonometric polynomial
/// sum_m c_m e^{-i<m,k>}. Zero coefficients are never stored; iteration is in
/// lexicographic key order.
template <class Coeff>
class FourierPolynomial {
 public:
  using Terms = std::map<LatticeIndex, Coeff>;

  FourierPolynomial() = default;
  explicit FourierPolynomial(int dimension) : dim_(dimension) {}

  static FourierPolynomial constant(int dimension, Coeff c) {
    FourierPolynomial p(dimension);
    p.add_term(LatticeIndex::zero(dimension), std::move(c));
    return p;
  }
  static FourierPolynomial monomial(const LatticeIndex& m, Coeff c) {
    FourierPolynomial p(m.dimension());
    p.add_term(m, std::move(c));
    return p;
  }

  int dimension() const { return dim_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const LatticeIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const LatticeIndex& m, const Coeff& c) {
    if (m.dimension() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "term key " + m.to_string() + " in a polynomial of dimension " +
                                                    std::to_string(dim_));
    }
    if (c == Coeff(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coeff(0)) terms_.erase(it);
    }
  }

  FourierPolynomial& operator+=(const FourierPolynomial& other) {
    check_same_dimension(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  FourierPolynomial& operator-=(const FourierPolynomial& other) {
    check_same_dimension(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  friend FourierPolynomial operator+(FourierPolynomial a, const FourierPolynomial& b) { return a += b; }
  friend FourierPolynomial operator-(FourierPolynomial a, const FourierPolynomial& b) { return a -= b; }

  FourierPolynomial scaled(const Coeff& factor) const {
    FourierPolynomial out(dim_);
    if (factor == Coeff(0)) return out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * factor);
    return out;
  }

  /// Sum of c_m e^{-i<m,k>}.
  std::complex<double> evaluate(std::span<const double> k) const {
    std::complex<double> s{0.0, 0.0};
    for (const auto& [m, c] : terms_) {
      const double phase = m.dot(k);
      s += coefficient_to_double(c) * std::complex<double>(std::cos(phase), -std::sin(phase));
    }
    return s;
  }

  /// sum |c_m|, the value scale used in tolerances.
  double abs_sum() const {
    double s = 0.0;
    for (const auto& [m, c] : terms_) s += std::abs(coefficient_to_double(c));
    return s;
  }

  int max_abs_index() const {
    int r = 0;
    for (const auto& [m, c] : terms_) r = std::max(r, m.max_abs());
    return r;
  }
  double max_norm_index() const {
    double r = 0.0;
    for (const auto& [m, c] : terms_) r = std::max(r, m.norm());
    return r;
  }

  friend bool operator==(const FourierPolynomial&, const FourierPolynomial&) = default;

 private:
  void check_same_dimension(const FourierPolynomial& other) const {
    if (other.dim_ != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "polynomial dimensions " + std::to_string(dim_) + " and " +
                                                    std::to_string(other.dim_) + " differ");
    }
  }

  int dim_ = 0;
  Terms terms_;
};

using IntPolynomial = FourierPolynomial<BigInt>;
using RealPolynomial = FourierPolynomial<double>;

/// Convolution product; realizes the pointwise product of the evaluated functions.
template <class Coeff>
FourierPolynomial<Coeff> poly_mul(const FourierPolynomial<Coeff>& a, const FourierPolynomial<Coeff>& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot multiply polynomials of dimension " +
                                                  std::to_string(a.dimension()) + " and " +
                                                  std::to_string(b.dimension()));
  }
  FourierPolynomial<Coeff> out(a.dimension());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) out.add_term(ma + mb, ca * cb);
  }
  return out;
}

RealPolynomial to_real(const IntPolynomial& p);

/// Square matrix of Fourier polynomials, row-major.
template <class Coeff>
class FourierMatrix {
 public:
  FourierMatrix() = default;
  FourierMatrix(int size, int dimension)
      : size_(size), dim_(dimension),
        entries_(static_cast<std::size_t>(size) * static_cast<std::size_t>(size),
                 FourierPolynomial<Coeff>(dimension)) {}

  int size() const { return size_; }
  int dimension() const { return dim_; }
  const FourierPolynomial<Coeff>& at(int x, int y) const { return entries_[index(x, y)]; }
  FourierPolynomial<Coeff>& at(int x, int y) { return entries_[index(x, y)]; }

  /// entry(y,x)[m] == entry(x,y)[-m], which makes M(k) Hermitian for real coefficients.
  bool is_hermitian_symmetric() const {
    for (int x = 0; x < size_; ++x) {
      for (int y = 0; y < size_; ++y) {
        const auto& a = at(x, y);
        const auto& b = at(y, x);
        if (a.size() != b.size()) return false;
        for (const auto& [m, c] : a.terms()) {
          if (b.coefficient(-m) != c) return false;
        }
      }
    }
    return true;
  }

  Eigen::MatrixXcd evaluate(std::span<const double> k) const {
    Eigen::MatrixXcd out(size_, size_);
    for (int x = 0; x < size_; ++x) {
      for (int y = 0; y < size_; ++y) out(x, y) = at(x, y).evaluate(k);
    }
    return out;
  }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(y);
  }

  int size_ = 0;
  int dim_ = 0;
  std::vector<FourierPolynomial<Coeff>> entries_;
};

using IntMatrix = FourierMatrix<BigInt>;
using RealMatrix = FourierMatrix<double>;

template <class Coeff>
FourierMatrix<Coeff> matrix_mul(const FourierMatrix<Coeff>& a, const FourierMatrix<Coeff>& b) {
  if (a.size() != b.size() || a.dimension() != b.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }
  const int n = a.size();
  FourierMatrix<Coeff> out(n, a.dimension());
  for (int x = 0; x < n; ++x) {
    for (int z = 0; z < n; ++z) {
      const auto& left = a.at(x, z);
      if (left.is_zero()) continue;
      for (int y = 0; y < n; ++y) {
        const auto& right = b.at(z, y);
        if (!right.is_zero()) out.at(x, y) += poly_mul(left, right);
      }
    }
  }
  return out;
}

/// Tr(A B) without forming the product.
template <class Coeff>
FourierPolynomial<Coeff> trace_of_product(const FourierMatrix<Coeff>& a, const FourierMatrix<Coeff>& b) {
  FourierPolynomial<Coeff> out(a.dimension());
  for (int x = 0; x < a.size(); ++x) {
    for (int y = 0; y < a.size(); ++y) {
      if (!a.at(x, y).is_zero() && !b.at(y, x).is_zero()) out += poly_mul(a.at(x, y), b.at(y, x));
    }
  }
  return out;
}

inline void check_power(int n, int cap) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "power must be >= 1, got " + std::to_string(n));
  if (n > cap) {
    throw Error(ErrorCode::PowerCapExceeded,
                "power " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
  }
}

/// Tr M^1, ..., Tr M^n_max, sharing the chain of powers.
template <class Coeff>
std::vector<FourierPolynomial<Coeff>> matrix_power_traces(const FourierMatrix<Coeff>& m, int n_max,
                                                          int cap) {
  check_power(n_max, cap);
  std::vector<FourierPolynomial<Coeff>> out;
  out.reserve(static_cast<std::size_t>(n_max));
  FourierPolynomial<Coeff> tr(m.dimension());
  for (int x = 0; x < m.size(); ++x) tr += m.at(x, x);
  out.push_back(std::move(tr));
  FourierMatrix<Coeff> power = m;  // M^{n-1}
  for (int n = 2; n <= n_max; ++n) {
    out.push_back(trace_of_product(power, m));
    if (n < n_max) power = matrix_mul(power, m);
  }
  return out;
}

template <class Coeff>
FourierPolynomial<Coeff> matrix_power_trace(const FourierMatrix<Coeff>& m, int n, int cap = Limits{}.power_cap) {
  check_power(n, cap);
  return matrix_power_traces(m, n, cap).back();
}

/// Entry (x,y) = sum over edges e = (x,y) of omega(e) delta_{tau(e)}.
RealMatrix matrix_from_digraph(const WeightedDigraph& g);
/// Adjacency and Normalized (WrongGraphFlavor otherwise).
RealMatrix matrix_from_graph(const FundamentalGraph& g, OperatorKind kind);
RealMatrix matrix_from_graph(const ModifiedGraph& g, OperatorKind kind);
/// Adjacency with exact integer coefficients.
IntMatrix exact_adjacency_matrix(const FundamentalGraph& g);

}  // namespace periodic_spectra
