#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "periodic_spectra/error.hpp"
#include "periodic_spectra/operator.hpp"

namespace periodic_spectra {

/// Closed walk with a distinguished starting edge; rotations are different cycles.
struct Cycle {
  std::vector<int> edge_ids;
  LatticeIndex index;          // sum of edge indices
  double weight = 1.0;         // product of edge weights
  double potential_sum = 0.0;  // sum of v_x over the initial vertices of the edges

  int length() const { return static_cast<int>(edge_ids.size()); }
};

/// Lightweight view handed to visitors during enumeration; valid only for the
/// duration of the callback.
struct CycleView {
  std::span<const int> edge_ids;
  const LatticeIndex& index;
  double weight;
};

/// Visits every closed edge sequence of length n, in lexicographic order of
/// edge ids. Cost is Theta(#edges * branching^(n-1)).
void for_each_cycle(const WeightedDigraph& g, int n, const std::function<void(const CycleView&)>& visit,
                    const Limits& limits = {});

std::vector<Cycle> enumerate_cycles(const WeightedDigraph& g, int n,
                                    const std::optional<LatticeIndex>& index_filter = std::nullopt,
                                    const Limits& limits = {});
/// Adjacency weights on the fundamental graph.
std::vector<Cycle> enumerate_cycles(const FundamentalGraph& g, int n,
                                    const std::optional<LatticeIndex>& index_filter = std::nullopt,
                                    const Limits& limits = {});
/// Schrodinger weights on the modified graph.
std::vector<Cycle> enumerate_cycles(const ModifiedGraph& g, int n,
                                    const std::optional<LatticeIndex>& index_filter = std::nullopt,
                                    const Limits& limits = {});

/// N_n^m by brute force.
std::map<LatticeIndex, std::int64_t> cycle_counts_bruteforce(const FundamentalGraph& g, int n,
                                                             const Limits& limits = {});
/// N_n^m read off the exact adjacency trace series.
std::map<LatticeIndex, std::int64_t> cycle_counts_algebraic(const FundamentalGraph& g, int n,
                                                            const Limits& limits = {});
/// Total N_n of a count table.
std::int64_t total_count(const std::map<LatticeIndex, std::int64_t>& counts);

/// sum over cycles of length n with index m of omega(c), by brute force.
std::map<LatticeIndex, double> cycle_weight_sums(const WeightedDigraph& g, int n, const Limits& limits = {});

/// e_{s+1} != inverse(e_s) for all s, including the wrap-around pair.
bool is_non_backtracking(const WeightedDigraph& g, std::span<const int> edge_ids);

/// Number of non-backtracking cycles of length n (optionally zero-index only).
std::int64_t count_non_backtracking_cycles(const WeightedDigraph& g, int n, bool zero_index_only,
                                           const Limits& limits = {});

}  // namespace periodic_spectra
