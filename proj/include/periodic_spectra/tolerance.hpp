#pragma once

#include <algorithm>
#include <cmath>

#include "periodic_spectra/fourier.hpp"

namespace periodic_spectra {

/// 1e-10 absolute for coefficients up to 1e3 in magnitude, 1e-10 relative beyond.
inline double coefficient_tolerance(double magnitude) {
  const double a = std::abs(magnitude);
  return a <= 1e3 ? 1e-10 : 1e-10 * a;
}

inline bool coefficients_close(double expected, double actual) {
  return std::abs(expected - actual) <= coefficient_tolerance(std::max(std::abs(expected), std::abs(actual)));
}

struct Comparison {
  double max_abs_error = 0.0;
  bool within_tolerance = true;
};

/// Coefficientwise comparison over the union of both supports.
inline Comparison compare_coefficients(const RealPolynomial& expected, const RealPolynomial& actual) {
  Comparison out;
  auto visit = [&](const LatticeIndex& m) {
    const double a = expected.coefficient(m);
    const double b = actual.coefficient(m);
    out.max_abs_error = std::max(out.max_abs_error, std::abs(a - b));
    if (!coefficients_close(a, b)) out.within_tolerance = false;
  };
  for (const auto& [m, c] : expected.terms()) visit(m);
  for (const auto& [m, c] : actual.terms()) visit(m);
  return out;
}

}  // namespace periodic_spectra
