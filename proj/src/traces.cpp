#include "periodic_spectra/traces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>

#include "periodic_spectra/cycles.hpp"
#include "periodic_spectra/tolerance.hpp"

namespace periodic_spectra {

std::vector<TraceSeries> trace_series_up_to(const FundamentalGraph& g, OperatorKind kind, int n_max,
                                            const Limits& limits) {
  check_power(n_max, limits.power_cap);
  const WeightedDigraph digraph = operator_digraph(g, kind);
  std::vector<TraceSeries> out;
  auto make = [&](int n) {
    TraceSeries s;
    s.n = n;
    s.kind = kind;
    s.dimension = g.dimension();
    s.vertex_count = g.vertex_count();
    s.omega_plus = digraph.omega_plus();
    s.tau_plus = g.tau_plus();
    return s;
  };
  if (kind == OperatorKind::Adjacency) {
    auto traces = matrix_power_traces(exact_adjacency_matrix(g), n_max, limits.power_cap);
    for (int n = 1; n <= n_max; ++n) {
      TraceSeries s = make(n);
      s.coefficients = to_real(traces[static_cast<std::size_t>(n - 1)]);
      s.exact = std::move(traces[static_cast<std::size_t>(n - 1)]);
      out.push_back(std::move(s));
    }
  } else {
    auto traces = matrix_power_traces(matrix_from_digraph(digraph), n_max, limits.power_cap);
    for (int n = 1; n <= n_max; ++n) {
      TraceSeries s = make(n);
      s.coefficients = std::move(traces[static_cast<std::size_t>(n - 1)]);
      out.push_back(std::move(s));
    }
  }
  return out;
}

TraceSeries trace_series(const FundamentalGraph& g, OperatorKind kind, int n, const Limits& limits) {
  check_power(n, limits.power_cap);
  return std::move(trace_series_up_to(g, kind, n, limits).back());
}

double regularized_trace(const FundamentalGraph& g, OperatorKind kind, int n, const Limits& limits) {
  return trace_series(g, kind, n, limits).constant_term();
}

namespace {

// Tr H^n over the modified graph, written out from the cycle sets of the base graph.
RealPolynomial closed_form(const FundamentalGraph& g, const std::vector<double>& v,
                           const std::vector<std::vector<Cycle>>& cycle_sets, int n) {
  const int d = g.dimension();
  RealPolynomial out(d);
  auto cycle_v = [&](const Cycle& c) {
    double s = 0.0;
    for (int id : c.edge_ids) s += v[static_cast<std::size_t>(g.edge(id).from)];
    return s;
  };
  double vn = 0.0;
  for (double x : v) vn += std::pow(x, n);
  out.add_term(LatticeIndex::zero(d), vn);
  const auto& c1 = cycle_sets[0];
  if (n == 1) {
    for (const auto& c : c1) out.add_term(c.index, 1.0);
  } else if (n == 2) {
    for (const auto& c : c1) out.add_term(c.index, 2.0 * cycle_v(c));
    for (const auto& c : cycle_sets[1]) out.add_term(c.index, 1.0);
  } else {
    for (const auto& c : c1) {
      const double vx = cycle_v(c);
      out.add_term(c.index, 3.0 * vx * vx);
    }
    for (const auto& c : cycle_sets[1]) out.add_term(c.index, 1.5 * cycle_v(c));
    for (const auto& c : cycle_sets[2]) out.add_term(c.index, 1.0);
  }
  return out;
}

RealPolynomial plain_sum(const std::vector<Cycle>& cycles, int d) {
  RealPolynomial out(d);
  for (const auto& c : cycles) out.add_term(c.index, 1.0);
  return out;
}

}  // namespace

ClosedFormReport closed_form_check(const FundamentalGraph& g, int n, const Limits& limits) {
  if (n < 1 || n > 3) throw Error(ErrorCode::InvalidArgument, "closed forms exist for n = 1, 2, 3 only");
  const int d = g.dimension();
  const WeightedDigraph base = weighted_digraph(g, OperatorKind::Adjacency);
  std::vector<std::vector<Cycle>> cycle_sets;
  for (int j = 1; j <= n; ++j) cycle_sets.push_back(enumerate_cycles(base, j, std::nullopt, limits));

  std::vector<double> v, v_free;
  for (const auto& x : g.vertices()) {
    v.push_back(x.potential - x.degree);
    v_free.push_back(-static_cast<double>(x.degree));
  }

  const TraceSeries schrodinger = trace_series(g, OperatorKind::Schrodinger, n, limits);
  const TraceSeries free = trace_series(g, OperatorKind::NegLaplacian, n, limits);
  const TraceSeries adjacency = trace_series(g, OperatorKind::Adjacency, n, limits);

  const RealPolynomial closed = closed_form(g, v, cycle_sets, n);
  const RealPolynomial closed_free = closed_form(g, v_free, cycle_sets, n);
  const RealPolynomial cn = plain_sum(cycle_sets[static_cast<std::size_t>(n - 1)], d);

  ClosedFormReport report;
  report.n = n;
  report.passed = true;
  auto add = [&](std::string name, const RealPolynomial& expected, const RealPolynomial& actual, bool exact) {
    const Comparison cmp = compare_coefficients(expected, actual);
    const bool ok = exact ? cmp.max_abs_error == 0.0 : cmp.within_tolerance;
    report.passed = report.passed && ok;
    report.max_discrepancy = std::max(report.max_discrepancy, cmp.max_abs_error);
    report.checks.push_back({std::move(name), cmp.max_abs_error});
  };
  add("adjacency", cn, adjacency.coefficients, true);
  add("schrodinger", closed, schrodinger.coefficients, false);
  add("schrodinger-minus-adjacency", closed - cn, schrodinger.coefficients - adjacency.coefficients, false);
  add("schrodinger-minus-free", closed - closed_free, schrodinger.coefficients - free.coefficients, false);
  return report;
}

namespace {

// BFS 2-coloring with p(to) = p(from) + 1 + flip(e) mod 2; empty when inconsistent.
template <class Flip>
std::optional<std::vector<int>> two_color(const FundamentalGraph& g, Flip flip) {
  std::vector<int> color(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int root = 0; root < g.vertex_count(); ++root) {
    if (color[static_cast<std::size_t>(root)] != -1) continue;
    color[static_cast<std::size_t>(root)] = 0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int id : g.out_edges(x)) {
        const auto& e = g.edge(id);
        const int want = (color[static_cast<std::size_t>(x)] + 1 + flip(e)) % 2;
        int& c = color[static_cast<std::size_t>(e.to)];
        if (c == -1) {
          c = want;
          queue.push_back(e.to);
        } else if (c != want) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

int mod2(int x) { return ((x % 2) + 2) % 2; }

// Integer row echelon form; membership of target in the Z-span of rows.
bool lattice_contains(std::vector<std::vector<std::int64_t>> rows, std::vector<std::int64_t> target) {
  const std::size_t cols = target.size();
  std::size_t pivot_row = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r) {
        if (rows[r][c] != 0 && (best == rows.size() || std::abs(rows[r][c]) < std::abs(rows[best][c]))) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool reduced = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        const std::int64_t q = rows[r][c] / rows[pivot_row][c];
        for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= q * rows[pivot_row][j];
        if (rows[r][c] != 0) reduced = false;
      }
      if (reduced) {
        pivots.emplace_back(pivot_row, c);
        ++pivot_row;
        break;
      }
    }
  }
  for (auto [r, c] : pivots) {
    if (target[c] % rows[r][c] != 0) return false;
    const std::int64_t q = target[c] / rows[r][c];
    for (std::size_t j = 0; j < cols; ++j) target[j] -= q * rows[r][j];
  }
  return std::all_of(target.begin(), target.end(), [](std::int64_t x) { return x == 0; });
}

}  // namespace

BipartiteFundamentalReport bipartite_fundamental(const FundamentalGraph& g, const Limits& limits) {
  BipartiteFundamentalReport report;
  auto coloring = two_color(g, [](const OrientedEdge&) { return 0; });
  report.coloring_verdict = coloring.has_value();
  if (coloring) report.coloring = *coloring;
  const int nu = g.vertex_count();
  if (nu <= limits.power_cap) {
    const auto series = trace_series_up_to(g, OperatorKind::Adjacency, nu, limits);
    bool all_zero = true;
    for (int n = 1; n <= nu; n += 2) {
      BigInt total = 0;
      for (const auto& [m, c] : series[static_cast<std::size_t>(n - 1)].exact->terms()) total += c;
      if (total != 0) all_zero = false;
    }
    report.trace_verdict = all_zero;
    report.bipartite = all_zero;
  } else {
    report.used_fallback = true;
    report.bipartite = report.coloring_verdict;
  }
  return report;
}

BipartitePeriodicReport bipartite_periodic(const FundamentalGraph& g, const Limits& limits) {
  const int d = g.dimension();
  const int nu = g.vertex_count();

  // Spanning-tree offsets: lattice position and walk-length parity of each vertex.
  std::vector<LatticeIndex> offset(static_cast<std::size_t>(nu), LatticeIndex::zero(d));
  std::vector<int> parity(static_cast<std::size_t>(nu), -1);
  parity[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int id : g.out_edges(x)) {
      const auto& e = g.edge(id);
      if (parity[static_cast<std::size_t>(e.to)] != -1) continue;
      parity[static_cast<std::size_t>(e.to)] = 1 - parity[static_cast<std::size_t>(x)];
      offset[static_cast<std::size_t>(e.to)] = offset[static_cast<std::size_t>(x)] + e.index;
      queue.push_back(e.to);
    }
  }
  // Every closed walk has (index, length mod 2) in the span of the fundamental cycles.
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& e : g.edges()) {
    const LatticeIndex m =
        offset[static_cast<std::size_t>(e.from)] + e.index - offset[static_cast<std::size_t>(e.to)];
    std::vector<std::int64_t> row(static_cast<std::size_t>(d + 1));
    for (int i = 0; i < d; ++i) row[static_cast<std::size_t>(i)] = m[i];
    row[static_cast<std::size_t>(d)] =
        mod2(parity[static_cast<std::size_t>(e.from)] + 1 + parity[static_cast<std::size_t>(e.to)]);
    rows.push_back(std::move(row));
  }
  std::vector<std::int64_t> two(static_cast<std::size_t>(d + 1), 0), odd(static_cast<std::size_t>(d + 1), 0);
  two[static_cast<std::size_t>(d)] = 2;
  odd[static_cast<std::size_t>(d)] = 1;
  rows.push_back(two);

  BipartitePeriodicReport report;
  report.bipartite = !lattice_contains(rows, odd);

  if (report.bipartite) {
    for (int mask = 0; mask < (1 << d); ++mask) {
      auto colors = two_color(g, [&](const OrientedEdge& e) {
        int s = 0;
        for (int i = 0; i < d; ++i) {
          if (mask & (1 << i)) s += e.index[i];
        }
        return mod2(s);
      });
      if (colors) {
        report.parity = *colors;
        std::vector<int> character;
        for (int i = 0; i < d; ++i) character.push_back((mask >> i) & 1);
        report.character = character;
        break;
      }
    }
  }

  const int cap = limits.power_cap;
  report.checked_up_to = cap;
  const auto series = trace_series_up_to(g, OperatorKind::Adjacency, cap, limits);
  for (int n = 1; n <= cap; n += 2) {
    if (series[static_cast<std::size_t>(n - 1)].exact->coefficient(LatticeIndex::zero(d)) != 0) {
      report.odd_zero_index_length = n;
      break;
    }
  }
  report.consistent = !(report.bipartite && report.odd_zero_index_length.has_value());
  return report;
}

}  // namespace periodic_spectra
