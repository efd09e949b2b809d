#include "periodic_spectra/cycles.hpp"

#include <string>

#include "periodic_spectra/traces.hpp"

namespace periodic_spectra {

namespace {

void check_oracle(int n, const Limits& limits) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "cycle length must be >= 1");
  if (n > limits.oracle_cap) {
    throw Error(ErrorCode::OracleCapExceeded, "cycle length " + std::to_string(n) + " exceeds the oracle cap " +
                                                  std::to_string(limits.oracle_cap));
  }
}

struct Walker {
  const WeightedDigraph& g;
  int n;
  const std::function<void(const CycleView&)>& visit;
  std::vector<int> path;
  std::vector<LatticeIndex> index;  // prefix sums
  std::vector<double> weight;       // prefix products

  void extend(int depth, int start_vertex) {
    const int at = g.edges[static_cast<std::size_t>(path[static_cast<std::size_t>(depth - 1)])].to;
    if (depth == n) {
      if (at == start_vertex) visit(CycleView{path, index[static_cast<std::size_t>(depth - 1)],
                                              weight[static_cast<std::size_t>(depth - 1)]});
      return;
    }
    for (int id : g.out[static_cast<std::size_t>(at)]) {
      const auto& e = g.edges[static_cast<std::size_t>(id)];
      path[static_cast<std::size_t>(depth)] = id;
      index[static_cast<std::size_t>(depth)] = index[static_cast<std::size_t>(depth - 1)] + e.index;
      weight[static_cast<std::size_t>(depth)] = weight[static_cast<std::size_t>(depth - 1)] * e.weight;
      extend(depth + 1, start_vertex);
    }
  }
};

}  // namespace

void for_each_cycle(const WeightedDigraph& g, int n, const std::function<void(const CycleView&)>& visit,
                    const Limits& limits) {
  check_oracle(n, limits);
  Walker w{g, n, visit, std::vector<int>(static_cast<std::size_t>(n)),
           std::vector<LatticeIndex>(static_cast<std::size_t>(n), LatticeIndex::zero(g.dimension)),
           std::vector<double>(static_cast<std::size_t>(n), 1.0)};
  for (int id = 0; id < g.edge_count(); ++id) {
    const auto& e = g.edges[static_cast<std::size_t>(id)];
    w.path[0] = id;
    w.index[0] = e.index;
    w.weight[0] = e.weight;
    w.extend(1, e.from);
  }
}

std::vector<Cycle> enumerate_cycles(const WeightedDigraph& g, int n, const std::optional<LatticeIndex>& index_filter,
                                    const Limits& limits) {
  std::vector<Cycle> out;
  for_each_cycle(
      g, n,
      [&](const CycleView& c) {
        if (index_filter && c.index != *index_filter) return;
        Cycle cycle{{c.edge_ids.begin(), c.edge_ids.end()}, c.index, c.weight, 0.0};
        for (int id : c.edge_ids) {
          cycle.potential_sum += g.vertex_shift[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(id)].from)];
        }
        out.push_back(std::move(cycle));
      },
      limits);
  return out;
}

std::vector<Cycle> enumerate_cycles(const FundamentalGraph& g, int n, const std::optional<LatticeIndex>& index_filter,
                                    const Limits& limits) {
  return enumerate_cycles(weighted_digraph(g, OperatorKind::Adjacency), n, index_filter, limits);
}

std::vector<Cycle> enumerate_cycles(const ModifiedGraph& g, int n, const std::optional<LatticeIndex>& index_filter,
                                    const Limits& limits) {
  return enumerate_cycles(weighted_digraph(g, OperatorKind::Schrodinger), n, index_filter, limits);
}

std::map<LatticeIndex, std::int64_t> cycle_counts_bruteforce(const FundamentalGraph& g, int n, const Limits& limits) {
  std::map<LatticeIndex, std::int64_t> out;
  for_each_cycle(weighted_digraph(g, OperatorKind::Adjacency), n, [&](const CycleView& c) { ++out[c.index]; },
                 limits);
  return out;
}

std::map<LatticeIndex, std::int64_t> cycle_counts_algebraic(const FundamentalGraph& g, int n, const Limits& limits) {
  const TraceSeries series = trace_series(g, OperatorKind::Adjacency, n, limits);
  std::map<LatticeIndex, std::int64_t> out;
  for (const auto& [m, c] : series.exact->terms()) out.emplace(m, to_int64(c));
  return out;
}

std::int64_t total_count(const std::map<LatticeIndex, std::int64_t>& counts) {
  std::int64_t s = 0;
  for (const auto& [m, c] : counts) s += c;
  return s;
}

std::map<LatticeIndex, double> cycle_weight_sums(const WeightedDigraph& g, int n, const Limits& limits) {
  std::map<LatticeIndex, double> out;
  for_each_cycle(g, n, [&](const CycleView& c) { out[c.index] += c.weight; }, limits);
  return out;
}

bool is_non_backtracking(const WeightedDigraph& g, std::span<const int> edge_ids) {
  const std::size_t n = edge_ids.size();
  for (std::size_t s = 0; s < n; ++s) {
    const int next = edge_ids[(s + 1) % n];
    if (g.edges[static_cast<std::size_t>(edge_ids[s])].inverse == next) return false;
  }
  return true;
}

std::int64_t count_non_backtracking_cycles(const WeightedDigraph& g, int n, bool zero_index_only,
                                           const Limits& limits) {
  std::int64_t count = 0;
  for_each_cycle(
      g, n,
      [&](const CycleView& c) {
        if (zero_index_only && !c.index.is_zero()) return;
        if (is_non_backtracking(g, c.edge_ids)) ++count;
      },
      limits);
  return count;
}

}  // namespace periodic_spectra
