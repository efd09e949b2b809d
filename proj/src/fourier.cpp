#include "periodic_spectra/fourier.hpp"

#include <limits>

namespace periodic_spectra {

std::int64_t to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::IntegerOverflow, "coefficient " + value.str() + " does not fit in 64 bits");
  }
  return value.convert_to<std::int64_t>();
}

RealPolynomial to_real(const IntPolynomial& p) {
  RealPolynomial out(p.dimension());
  for (const auto& [m, c] : p.terms()) out.add_term(m, coefficient_to_double(c));
  return out;
}

RealMatrix matrix_from_digraph(const WeightedDigraph& g) {
  RealMatrix out(g.vertex_count, g.dimension);
  for (const auto& e : g.edges) out.at(e.from, e.to).add_term(e.index, e.weight);
  return out;
}

RealMatrix matrix_from_graph(const FundamentalGraph& g, OperatorKind kind) {
  return matrix_from_digraph(weighted_digraph(g, kind));
}

RealMatrix matrix_from_graph(const ModifiedGraph& g, OperatorKind kind) {
  return matrix_from_digraph(weighted_digraph(g, kind));
}

IntMatrix exact_adjacency_matrix(const FundamentalGraph& g) {
  IntMatrix out(g.vertex_count(), g.dimension());
  for (const auto& e : g.edges()) out.at(e.from, e.to).add_term(e.index, BigInt(1));
  return out;
}

}  // namespace periodic_spectra
