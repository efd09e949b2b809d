// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Reference values come from tests/support.hpp, never from the code under test.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "periodic_spectra/cycles.hpp"
#include "periodic_spectra/expansions.hpp"
#include "periodic_spectra/spectral.hpp"
#include "periodic_spectra/tolerance.hpp"
#include "periodic_spectra/traces.hpp"
#include "support.hpp"

using namespace periodic_spectra;
using cd = std::complex<double>;

namespace {

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 5) first_failures_ += (first_failures_.empty() ? "" : "; ") + what;
  }
  bool passed() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream out;
    out << total_ - failed_ << "/" << total_ << " checks";
    if (failed_ > 0) out << ", first failures: " << first_failures_;
    return out.str();
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::string first_failures_;
};

std::string str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

IntPolynomial int_cos(const LatticeIndex& m, long amplitude) {
  // amplitude * cos<m,k> with an even amplitude
  return IntPolynomial::monomial(m, BigInt(amplitude / 2)) + IntPolynomial::monomial(-m, BigInt(amplitude / 2));
}

RealPolynomial real_cos(const LatticeIndex& m, double amplitude) {
  return RealPolynomial::monomial(m, amplitude / 2) + RealPolynomial::monomial(-m, amplitude / 2);
}

RealPolynomial to_poly(int d, const std::map<LatticeIndex, double>& sums) {
  RealPolynomial p(d);
  for (const auto& [m, w] : sums) p.add_term(m, w);
  return p;
}

Eigen::VectorXd reference_eigenvalues(const FundamentalGraph& g, OperatorKind kind, const std::vector<double>& k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(testing::reference_fiber(g, kind, k), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

FundamentalGraph with_random_potential(const FundamentalGraph& g) {
  return g.with_potential(testing::random_potential(g.vertex_count()));
}

Limits wide_limits() {
  Limits l;
  l.power_cap = 24;
  return l;
}

// Rounding slack on top of a certified bound: the oracle itself is a float computation.
bool within_bound(const SeriesApprox& s) {
  return *s.abs_error <= s.tail_bound + 1e-12 * std::max(1.0, std::abs(*s.oracle));
}

// Criterion 1: square lattice traces n = 1, 2, 3.
Checks square_traces() {
  Checks c;
  const auto g = square_lattice();
  const IntPolynomial f8 = IntPolynomial::constant(2, BigInt(16)) + int_cos({1, 0}, 8) + int_cos({0, 1}, 8);
  c.expect(*trace_series(g, OperatorKind::Adjacency, 1).exact == IntPolynomial(2), "Tr A = 0");
  c.expect(*trace_series(g, OperatorKind::Adjacency, 2).exact == f8, "Tr A^2 = 8F");
  c.expect(*trace_series(g, OperatorKind::Adjacency, 3).exact == IntPolynomial(2), "Tr A^3 = 0");

  const RealPolynomial F = RealPolynomial::constant(2, 2.0) + real_cos({1, 0}, 1.0) + real_cos({0, 1}, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto V = testing::random_potential(4);
    const auto h = g.with_potential(V);
    double sum_V = 0, sum_v = 0, sum_v2 = 0, sum_v3 = 0;
    for (double x : V) {
      sum_V += x;
      sum_v += x - 4;
      sum_v2 += (x - 4) * (x - 4);
      sum_v3 += std::pow(x - 4, 3);
    }
    const RealPolynomial t1 = RealPolynomial::constant(2, -16 + sum_V);
    const RealPolynomial t2 = RealPolynomial::constant(2, sum_v2) + F.scaled(8.0);
    const RealPolynomial t3 = RealPolynomial::constant(2, sum_v3) + F.scaled(6 * sum_v);
    const RealPolynomial* expected[] = {&t1, &t2, &t3};
    for (int n = 1; n <= 3; ++n) {
      const auto cmp = compare_coefficients(*expected[n - 1], trace_series(h, OperatorKind::Schrodinger, n).coefficients);
      c.expect(cmp.within_tolerance, "Tr H^" + std::to_string(n) + " error " + str(cmp.max_abs_error));
    }
  }
  return c;
}

// Criterion 2: kagome lattice.
Checks kagome_traces() {
  Checks c;
  const auto g = kagome_lattice();
  const IntPolynomial f1 = int_cos({1, 0}, 2) + int_cos({0, 1}, 2) + int_cos({1, -1}, 2);  // 2F
  c.expect(trace_series(g, OperatorKind::Adjacency, 1).exact->is_zero(), "Tr A = 0");
  c.expect(*trace_series(g, OperatorKind::Adjacency, 2).exact == IntPolynomial::constant(2, BigInt(12)) + f1.scaled(BigInt(2)),
           "Tr A^2 = 12 + 4F");
  c.expect(*trace_series(g, OperatorKind::Adjacency, 3).exact == IntPolynomial::constant(2, BigInt(12)) + f1.scaled(BigInt(6)),
           "Tr A^3 = 12 + 12F");

  const RealPolynomial F = real_cos({1, 0}, 1.0) + real_cos({0, 1}, 1.0) + real_cos({1, -1}, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto V = testing::random_potential(3);
    const auto h = g.with_potential(V);
    const double v1 = V[0] - 4, v2 = V[1] - 4, v3 = V[2] - 4;
    const RealPolynomial a2 = RealPolynomial::constant(2, 12.0) + F.scaled(4.0);
    const RealPolynomial a3 = RealPolynomial::constant(2, 12.0) + F.scaled(12.0);
    const RealPolynomial t1 = RealPolynomial::constant(2, -12 + V[0] + V[1] + V[2]);
    const RealPolynomial t2 = a2 + RealPolynomial::constant(2, v1 * v1 + v2 * v2 + v3 * v3);
    const RealPolynomial t3 = a3 + RealPolynomial::constant(2, v1 * v1 * v1 + v2 * v2 * v2 + v3 * v3 * v3 + 12 * (v1 + v2 + v3)) +
                              real_cos({1, 0}, 6 * (v1 + v3)) + real_cos({0, 1}, 6 * (v1 + v2)) +
                              real_cos({1, -1}, 6 * (v2 + v3));
    const RealPolynomial* expected[] = {&t1, &t2, &t3};
    for (int n = 1; n <= 3; ++n) {
      const auto cmp = compare_coefficients(*expected[n - 1], trace_series(h, OperatorKind::Schrodinger, n).coefficients);
      c.expect(cmp.within_tolerance, "Tr H^" + std::to_string(n) + " error " + str(cmp.max_abs_error));
    }
  }
  return c;
}

// Criterion 3: series coefficients against brute-force weighted cycle sums.
Checks oracle_equivalence() {
  Checks c;
  for (const auto& [name, base] : testing::builtin_graphs()) {
    const auto potential = with_random_potential(base);
    for (auto kind : testing::all_kinds()) {
      const auto& g = kind == OperatorKind::Schrodinger ? potential : base;
      for (int n = 1; n <= 6; ++n) {
        const std::string label = std::string(name) + " " + std::string(to_string(kind)) + " n=" + std::to_string(n);
        const auto expected = to_poly(g.dimension(), testing::reference_weight_sums(g, kind, n));
        const auto s = trace_series(g, kind, n);
        if (kind == OperatorKind::Adjacency || kind == OperatorKind::NegLaplacian) {
          // integer weights: the float series holds exact integers
          c.expect(s.coefficients == expected, label + " not exact");
          if (s.exact) c.expect(to_real(*s.exact) == expected, label + " exact form");
        } else {
          const auto cmp = compare_coefficients(expected, s.coefficients);
          c.expect(cmp.within_tolerance, label + " error " + str(cmp.max_abs_error));
        }
      }
    }
  }
  return c;
}

// Criterion 4: evaluated series against sum of eigenvalue powers.
Checks symbolic_numeric() {
  Checks c;
  for (const auto& [name, base] : testing::builtin_graphs()) {
    const auto potential = with_random_potential(base);
    for (auto kind : testing::all_kinds()) {
      const auto& g = kind == OperatorKind::Schrodinger ? potential : base;
      const auto series = trace_series_up_to(g, kind, 6);
      for (int i = 0; i < 100; ++i) {
        const auto k = testing::random_k(g.dimension());
        const Eigen::VectorXd ev = reference_eigenvalues(g, kind, k);
        for (int n = 1; n <= 6; ++n) {
          double expected = 0.0;
          for (int j = 0; j < ev.size(); ++j) expected += std::pow(ev(j), n);
          const double got = series[static_cast<std::size_t>(n - 1)].evaluate(k);
          const double rel = std::abs(got - expected) / std::max(1.0, std::abs(expected));
          c.expect(rel < 1e-9, std::string(name) + " n=" + std::to_string(n) + " rel " + str(rel));
        }
      }
    }
  }
  return c;
}

// Criterion 5: constant coefficient against Brillouin quadrature, twice.
Checks regularized_traces() {
  Checks c;
  for (const auto& [name, base] : testing::builtin_graphs()) {
    const auto potential = with_random_potential(base);
    for (auto kind : testing::all_kinds()) {
      const auto& g = kind == OperatorKind::Schrodinger ? potential : base;
      for (int n = 1; n <= 6; ++n) {
        const std::string label = std::string(name) + " " + std::string(to_string(kind)) + " n=" + std::to_string(n);
        const auto s = trace_series(g, kind, n);
        const int grid = minimal_quadrature_grid(s.coefficients);
        c.expect(grid <= n * g.tau_inf() + 1, label + " grid larger than n tau + 1");
        c.expect(coefficients_close(s.constant_term(), brillouin_quadrature(s.coefficients, grid)), label + " quadrature");

        // independent: average of Tr M(k)^n from matrix powers on the same grid
        const int M = n * g.tau_inf() + 1;
        double sum = 0.0;
        int points = 0;
        std::vector<double> k(static_cast<std::size_t>(g.dimension()));
        std::function<void(int)> walk = [&](int axis) {
          if (axis == g.dimension()) {
            sum += testing::reference_trace_power(g, kind, k, n).real();
            ++points;
            return;
          }
          for (int j = 0; j < M; ++j) {
            k[static_cast<std::size_t>(axis)] = 2 * std::numbers::pi * j / M;
            walk(axis + 1);
          }
        };
        walk(0);
        c.expect(coefficients_close(s.constant_term(), sum / points), label + " matrix-power quadrature");
        if (grid > 1) {
          bool threw = false;
          try {
            brillouin_quadrature(s.coefficients, grid - 1);
          } catch (const Error& e) {
            threw = e.code() == ErrorCode::GridTooCoarse;
          }
          c.expect(threw, label + " coarse grid accepted");
        }
      }
    }
  }
  return c;
}

// Criterion 6: bipartiteness matrix and odd zero-index cycle counts.
Checks bipartiteness() {
  Checks c;
  struct Row {
    const char* name;
    FundamentalGraph g;
    bool fundamental, periodic;
  };
  const std::vector<Row> rows{{"square", square_lattice(), true, true},
                              {"kagome", kagome_lattice(), false, false},
                              {"g3", gp_graph(3), false, true},
                              {"g2", gp_graph(2), false, false}};
  for (const auto& r : rows) {
    const auto f = bipartite_fundamental(r.g);
    const auto p = bipartite_periodic(r.g);
    c.expect(f.bipartite == r.fundamental, std::string(r.name) + " fundamental");
    c.expect(f.coloring_verdict == r.fundamental, std::string(r.name) + " coloring");
    c.expect(p.bipartite == r.periodic, std::string(r.name) + " periodic");
    c.expect(p.consistent, std::string(r.name) + " inconsistent");

    // odd zero-index cycles exist up to 7 exactly when the periodic graph is not bipartite
    const auto zero = LatticeIndex::zero(r.g.dimension());
    bool odd_zero = false, odd_any = false;
    for (int n = 1; n <= 7; n += 2) {
      const auto counts = cycle_counts_algebraic(r.g, n);
      odd_zero = odd_zero || counts.count(zero) > 0;
      odd_any = odd_any || !counts.empty();
    }
    c.expect(odd_zero == !r.periodic, std::string(r.name) + " odd N_n^0");
    c.expect(odd_any == !r.fundamental, std::string(r.name) + " odd N_n");
    if (p.parity) {
      for (const auto& e : r.g.edges()) {
        int eps = 0;
        for (int i = 0; i < r.g.dimension(); ++i) eps += (*p.character)[static_cast<std::size_t>(i)] * e.index[i];
        const int parity = (*p.parity)[static_cast<std::size_t>(e.from)] + (*p.parity)[static_cast<std::size_t>(e.to)] + eps;
        c.expect(((parity % 2) + 2) % 2 == 1, std::string(r.name) + " witness");
      }
    }
  }
  for (int p : {2, 4}) {
    const auto g = gp_graph(p);
    for (int n = 1; n <= 7; n += 2) {
      const bool has = cycle_counts_algebraic(g, n).count({0}) > 0;
      c.expect(has == (n >= p + 1), "g" + std::to_string(p) + " N_" + std::to_string(n) + "^0");
    }
  }
  return c;
}

// Criterion 7: cycle-count laws.
Checks cycle_laws() {
  Checks c;
  const LatticeIndex zero2 = LatticeIndex::zero(2);
  c.expect(cycle_counts_algebraic(square_lattice(), 2).at(zero2) == 16, "square N_2^0");
  c.expect(cycle_counts_algebraic(kagome_lattice(), 2).at(zero2) == 12, "kagome N_2^0");
  for (const auto& [name, g] : testing::builtin_graphs()) {
    const auto zero = LatticeIndex::zero(g.dimension());
    if (!g.has_multiple_edges()) {
      c.expect(cycle_counts_algebraic(g, 2).at(zero) == g.edge_count(), std::string(name) + " N_2^0 = #A");
    }
    for (int n = 1; n <= 6; ++n) {
      const std::string label = std::string(name) + " n=" + std::to_string(n);
      const auto counts = cycle_counts_algebraic(g, n);
      c.expect(counts == cycle_counts_bruteforce(g, n), label + " brute force");
      if (n == 1) c.expect(counts.count(zero) == 0, label + " N_1^0");
      c.expect(total_count(counts) <= g.vertex_count() * std::pow(g.kappa_plus(), n), label + " N_n bound");
      for (const auto& [m, cnt] : counts) {
        c.expect(counts.count(-m) && counts.at(-m) == cnt, label + " symmetry at " + m.to_string());
        c.expect(m.norm() <= n * g.tau_plus() + 1e-12, label + " support at " + m.to_string());
      }
    }
  }
  return c;
}

// Criterion 8: heat and resolvent series within their tail bounds.
Checks heat_resolvent() {
  Checks c;
  for (const auto& [name, base] : testing::builtin_graphs()) {
    const auto potential = with_random_potential(base);
    for (auto kind : {OperatorKind::Adjacency, OperatorKind::Schrodinger}) {
      const auto& g = kind == OperatorKind::Schrodinger ? potential : base;
      const std::string label = std::string(name) + " " + std::string(to_string(kind));
      TraceExpansion ex(g, kind, wide_limits());
      const double norm = ex.global_norm();
      for (int i = 0; i < 20; ++i) {
        const auto k = testing::random_k(g.dimension());
        const cd t = testing::uniform(0.05, 1.0) * std::exp(cd(0, testing::uniform(0, 2 * std::numbers::pi))) /
                     std::max(1.0, norm / 4);
        const auto h = ex.heat(t, k, 20);
        c.expect(within_bound(h), label + " heat err " + str(*h.abs_error) + " > " + str(h.tail_bound));
        const cd lambda = testing::uniform(1.5, 4.0) * (norm + 0.5) * std::exp(cd(0, testing::uniform(0, 2 * std::numbers::pi)));
        const auto r = ex.resolvent(lambda, k, 12);
        c.expect(within_bound(r), label + " resolvent err " + str(*r.abs_error) + " > " + str(r.tail_bound));
      }
      for (int i = 0; i < 3; ++i) {
        const auto h = ex.heat_integrated(testing::uniform(0.05, 0.5), 20);
        c.expect(within_bound(h), label + " integrated heat err " + str(*h.abs_error) + " > " + str(h.tail_bound));
        const cd lambda = testing::uniform(1.5, 3.0) * (norm + 0.5) * std::exp(cd(0, testing::uniform(0, 2 * std::numbers::pi)));
        const auto r = ex.resolvent_integrated(lambda, 12);
        c.expect(within_bound(r), label + " integrated resolvent err " + str(*r.abs_error) + " > " + str(r.tail_bound));
      }
    }
  }
  return c;
}

// Criterion 9: determinant products.
Checks determinants() {
  Checks c;
  for (const auto& [name, base] : testing::builtin_graphs()) {
    const auto potential = with_random_potential(base);
    for (auto kind : {OperatorKind::Adjacency, OperatorKind::Schrodinger}) {
      const auto& g = kind == OperatorKind::Schrodinger ? potential : base;
      const std::string label = std::string(name) + " " + std::string(to_string(kind));
      const PrimeCycleTable table(g, kind, 8);
      const double rho = table.majorant_radius();
      for (int i = 0; i < 5; ++i) {
        const auto k = testing::random_k(g.dimension());
        const cd t = 0.5 / rho * std::exp(cd(0, testing::uniform(0, 2 * std::numbers::pi)));
        double previous_bound = INFINITY, previous_error = INFINITY;
        for (int L : {2, 4, 6, 8}) {
          const auto s = table.determinant(t, k, L);
          const std::string at = label + " L=" + std::to_string(L);
          c.expect(within_bound(s), at + " err " + str(*s.abs_error) + " > " + str(s.tail_bound));
          c.expect(s.tail_bound < previous_bound, at + " bound not decreasing");
          c.expect(*s.abs_error <= previous_error + 1e-15, at + " error grew");
          previous_bound = s.tail_bound;
          previous_error = *s.abs_error;
        }
      }
      const auto gamma = table.gamma_log_determinant(0.1 / rho, 8);
      c.expect(*gamma.abs_error < 1e-6, label + " log Gamma-det err " + str(*gamma.abs_error));
      c.expect(within_bound(gamma), label + " log Gamma-det outside bound");
    }
  }
  return c;
}

// Criterion 10: normalized Laplacian.
Checks normalized() {
  Checks c;
  for (const auto& [name, g] : testing::builtin_graphs()) {
    const std::string label = name;
    const auto bands = band_structure(g, OperatorKind::Normalized, 24);
    c.expect(bands.min_eigenvalue >= -1 - 1e-12 && bands.max_eigenvalue <= 1 + 1e-12, label + " band samples outside [-1,1]");
    for (int i = 0; i < 50; ++i) {
      const Eigen::VectorXd ev = reference_eigenvalues(g, OperatorKind::Normalized, testing::random_k(g.dimension()));
      c.expect(ev.minCoeff() >= -1 - 1e-12 && ev.maxCoeff() <= 1 + 1e-12, label + " random k outside [-1,1]");
    }
    const std::vector<double> k0(static_cast<std::size_t>(g.dimension()), 0.0);
    c.expect(std::abs(reference_eigenvalues(g, OperatorKind::Normalized, k0).maxCoeff() - 1.0) < 1e-12, label + " 1 at k=0");
    c.expect(std::abs(eigenvalues_at(g, OperatorKind::Normalized, k0).maxCoeff() - 1.0) < 1e-12, label + " library 1 at k=0");

    for (int n = 1; n <= 6; ++n) {
      const auto t = trace_series(g, OperatorKind::Normalized, n);
      const auto counts = cycle_counts_algebraic(g, n);
      for (const auto& [m, tm] : t.coefficients.terms()) {
        c.expect(counts.count(m) > 0, label + " coefficient outside the cycle support");
        c.expect(m.norm() <= n * g.tau_plus() + 1e-12, label + " support");
      }
      for (const auto& [m, cnt] : counts) {
        const double tm = t.coefficient(m);
        const double lo = cnt / std::pow(g.kappa_plus(), n), hi = cnt / std::pow(g.kappa_minus(), n);
        c.expect(tm >= lo - 1e-12 && tm <= hi + 1e-12, label + " T_{n,m} bounds at " + m.to_string());
        c.expect(tm >= 0, label + " T_{n,m} negative");
      }
    }
  }
  const auto sq = square_lattice();
  for (int n = 1; n <= 6; ++n) {
    const auto t = trace_series(sq, OperatorKind::Normalized, n);
    const auto a = trace_series(sq, OperatorKind::Adjacency, n);
    c.expect(t.coefficients.scaled(std::pow(4.0, n)) == to_real(*a.exact),
             "square 4^n T_n = Tr A^n at n=" + std::to_string(n));
  }
  return c;
}

// Criterion 11: total bandwidth lower bound.
Checks bandwidth() {
  Checks c;
  for (const auto& [name, base] : testing::builtin_graphs()) {
    const std::string label = name;
    if (label != "square" && label != "kagome" && label != "zline") continue;
    for (int trial = 0; trial < 4; ++trial) {
      const auto g = trial == 0 ? base : with_random_potential(base);
      const auto bands = band_structure(g, OperatorKind::Schrodinger, g.dimension() == 1 ? 256 : 64);
      const auto report = bandwidth_bound_check(g, bands);
      c.expect(report.satisfied, label + " bandwidth " + str(report.total_bandwidth) + " < " + str(report.bound));
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Checks()> run;
    double time_limit;  // seconds, 0 = none
  };
  const std::vector<Criterion> criteria{
      {1, "square lattice traces", square_traces, 1.0},
      {2, "kagome lattice traces", kagome_traces, 1.0},
      {3, "series equal brute-force cycle sums, n <= 6", oracle_equivalence, 30.0},
      {4, "series agree with eigenvalue power sums", symbolic_numeric, 0.0},
      {5, "regularized trace equals Brillouin quadrature", regularized_traces, 0.0},
      {6, "bipartiteness matrix and odd cycle counts", bipartiteness, 0.0},
      {7, "cycle-count laws", cycle_laws, 0.0},
      {8, "heat and resolvent within tail bounds", heat_resolvent, 0.0},
      {9, "determinant products within tail bounds", determinants, 60.0},
      {10, "normalized Laplacian", normalized, 0.0},
      {11, "total bandwidth lower bound", bandwidth, 0.0},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Checks checks;
    std::string error;
    try {
      checks = cr.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = cr.time_limit == 0.0 || seconds < cr.time_limit;
    const bool ok = error.empty() && checks.passed() && in_time;
    failures += !ok;
    std::printf("criterion %2d: %s  %s [%.2f s%s] %s\n", cr.id, ok ? "PASS" : "FAIL", cr.title, seconds,
                in_time ? "" : ", over time limit", error.empty() ? checks.summary().c_str() : ("exception: " + error).c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
