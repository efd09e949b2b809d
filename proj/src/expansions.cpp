#include "periodic_spectra/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "periodic_spectra/parallel.hpp"

namespace periodic_spectra {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// x^n / n! without overflow.
double power_over_factorial(double x, int n) {
  if (x == 0.0) return 0.0;
  return std::exp(n * std::log(x) - std::lgamma(n + 1.0));
}

std::complex<double> phase(const LatticeIndex& m, std::span<const double> k) {
  const double a = m.dot(k);
  return {std::cos(a), -std::sin(a)};
}

void require_positive_order(int n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "truncation order must be >= 1");
}

}  // namespace

double global_norm_estimate(const FiberOperator& op, int grid) {
  const BrillouinGrid bz{op.dimension(), grid};
  std::vector<double> norms(bz.size());
  parallel_for(norms.size(), [&](std::size_t i) { norms[i] = op.norm(bz.point(i)); });
  const double sampled = *std::max_element(norms.begin(), norms.end());
  return std::min(op.digraph().majorant_radius(), 1.05 * sampled);
}

TraceExpansion::TraceExpansion(const FundamentalGraph& g, OperatorKind kind, const Limits& limits)
    : graph_(g), kind_(kind), limits_(limits), fiber_(g, kind), nu_(g.vertex_count()) {}

const TraceSeries& TraceExpansion::series(int n) {
  if (static_cast<int>(series_.size()) < n) series_ = trace_series_up_to(graph_, kind_, n, limits_);
  return series_[static_cast<std::size_t>(n - 1)];
}

double TraceExpansion::global_norm() {
  if (!global_norm_) global_norm_ = global_norm_estimate(fiber_, 16);
  return *global_norm_;
}

int TraceExpansion::default_oracle_grid(int n_max) const {
  return std::max(16, n_max * graph_.tau_inf() + 1);
}

SeriesApprox TraceExpansion::heat(std::complex<double> t, std::span<const double> k, int n_max) {
  require_positive_order(n_max);
  check_power(n_max, limits_.power_cap);
  const Eigen::VectorXd ev = fiber_.eigenvalues(k);
  const double x = std::abs(t) * std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));

  SeriesApprox out;
  out.truncation = n_max;
  out.value = static_cast<double>(nu_);
  std::complex<double> tn = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    tn *= t / static_cast<double>(n);
    out.value += tn * series(n).evaluate(k);
  }
  out.tail_bound = nu_ * power_over_factorial(x, n_max + 1) * std::exp(x);
  std::complex<double> oracle = 0.0;
  for (int j = 0; j < ev.size(); ++j) oracle += std::exp(t * ev(j));
  out.set_oracle(oracle);
  return out;
}

SeriesApprox TraceExpansion::heat_integrated(std::complex<double> t, int n_max, int oracle_grid) {
  require_positive_order(n_max);
  check_power(n_max, limits_.power_cap);
  const double x = std::abs(t) * global_norm();

  SeriesApprox out;
  out.truncation = n_max;
  out.value = static_cast<double>(nu_);
  std::complex<double> tn = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    tn *= t / static_cast<double>(n);
    out.value += tn * series(n).constant_term();
  }
  out.tail_bound = nu_ * power_over_factorial(x, n_max + 1) * std::exp(x);
  const int grid = oracle_grid > 0 ? oracle_grid : default_oracle_grid(n_max);
  out.set_oracle(grid_average_complex(BrillouinGrid{graph_.dimension(), grid}, [&](std::span<const double> k) {
    const Eigen::VectorXd ev = fiber_.eigenvalues(k);
    std::complex<double> s = 0.0;
    for (int j = 0; j < ev.size(); ++j) s += std::exp(t * ev(j));
    return s;
  }));
  return out;
}

SeriesApprox TraceExpansion::resolvent(std::complex<double> lambda, std::span<const double> k, int n_max) {
  require_positive_order(n_max);
  check_power(n_max, limits_.power_cap);
  const Eigen::VectorXd ev = fiber_.eigenvalues(k);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  const double r = norm / std::abs(lambda);
  if (!(r < 1.0)) {
    throw Error(ErrorCode::DivergentSeries, "|lambda| must exceed ||M(k)|| = " + std::to_string(norm));
  }
  SeriesApprox out;
  out.truncation = n_max;
  out.value = -static_cast<double>(nu_) / lambda;
  std::complex<double> denom = lambda;
  for (int n = 1; n <= n_max; ++n) {
    denom *= lambda;
    out.value -= series(n).evaluate(k) / denom;
  }
  out.tail_bound = nu_ * std::pow(r, n_max + 1) / ((1.0 - r) * std::abs(lambda));
  std::complex<double> oracle = 0.0;
  for (int j = 0; j < ev.size(); ++j) oracle += 1.0 / (ev(j) - lambda);
  out.set_oracle(oracle);
  return out;
}

SeriesApprox TraceExpansion::resolvent_integrated(std::complex<double> lambda, int n_max, int oracle_grid) {
  require_positive_order(n_max);
  check_power(n_max, limits_.power_cap);
  const double norm = global_norm();
  const double r = norm / std::abs(lambda);
  if (!(r < 1.0)) {
    throw Error(ErrorCode::DivergentSeries, "|lambda| must exceed the norm estimate " + std::to_string(norm));
  }
  SeriesApprox out;
  out.truncation = n_max;
  out.value = -static_cast<double>(nu_) / lambda;
  std::complex<double> denom = lambda;
  for (int n = 1; n <= n_max; ++n) {
    denom *= lambda;
    out.value -= series(n).constant_term() / denom;
  }
  out.tail_bound = nu_ * std::pow(r, n_max + 1) / ((1.0 - r) * std::abs(lambda));
  const int grid = oracle_grid > 0 ? oracle_grid : default_oracle_grid(n_max);
  out.set_oracle(grid_average_complex(BrillouinGrid{graph_.dimension(), grid}, [&](std::span<const double> k) {
    const Eigen::VectorXd ev = fiber_.eigenvalues(k);
    std::complex<double> s = 0.0;
    for (int j = 0; j < ev.size(); ++j) s += 1.0 / (ev(j) - lambda);
    return s;
  }));
  return out;
}

SeriesApprox heat_trace(const FundamentalGraph& g, OperatorKind kind, std::complex<double> t,
                        std::span<const double> k, int n_max, const Limits& limits) {
  return TraceExpansion(g, kind, limits).heat(t, k, n_max);
}

SeriesApprox heat_trace_integrated(const FundamentalGraph& g, OperatorKind kind, std::complex<double> t, int n_max,
                                   const Limits& limits) {
  return TraceExpansion(g, kind, limits).heat_integrated(t, n_max);
}

SeriesApprox resolvent_trace(const FundamentalGraph& g, OperatorKind kind, std::complex<double> lambda,
                             std::span<const double> k, int n_max, const Limits& limits) {
  return TraceExpansion(g, kind, limits).resolvent(lambda, k, n_max);
}

SeriesApprox resolvent_trace_integrated(const FundamentalGraph& g, OperatorKind kind, std::complex<double> lambda,
                                        int n_max, const Limits& limits) {
  return TraceExpansion(g, kind, limits).resolvent_integrated(lambda, n_max);
}

namespace {

// True when every nontrivial rotation of s is strictly greater: s is the
// least rotation and not a power of a shorter sequence.
bool is_canonical_prime(std::span<const int> s) {
  const std::size_t n = s.size();
  for (std::size_t r = 1; r < n; ++r) {
    std::size_t i = 0;
    while (i < n && s[(i + r) % n] == s[i]) ++i;
    if (i == n || s[(i + r) % n] < s[i]) return false;
  }
  return true;
}

struct ClassSearch {
  const WeightedDigraph& g;
  int max_length;
  bool zero_index_only;
  bool non_backtracking;
  std::vector<int> path;
  std::vector<LatticeIndex> index;
  std::vector<double> weight;
  std::vector<CycleClass> out;

  void emit(int len) {
    std::span<const int> s(path.data(), static_cast<std::size_t>(len));
    if (non_backtracking && g.edges[static_cast<std::size_t>(s[static_cast<std::size_t>(len - 1)])].inverse == s[0]) {
      return;
    }
    const LatticeIndex& m = index[static_cast<std::size_t>(len - 1)];
    if (zero_index_only && !m.is_zero()) return;
    if (!is_canonical_prime(s)) return;
    Cycle c{{s.begin(), s.end()}, m, weight[static_cast<std::size_t>(len - 1)], 0.0};
    for (int id : s) c.potential_sum += g.vertex_shift[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(id)].from)];
    out.push_back({std::move(c), len, m, weight[static_cast<std::size_t>(len - 1)], len});
  }

  void extend(int len, int start_vertex) {
    const int last = path[static_cast<std::size_t>(len - 1)];
    const int at = g.edges[static_cast<std::size_t>(last)].to;
    if (at == start_vertex) emit(len);
    if (len == max_length) return;
    for (int id : g.out[static_cast<std::size_t>(at)]) {
      if (id < path[0]) continue;
      if (non_backtracking && g.edges[static_cast<std::size_t>(last)].inverse == id) continue;
      const auto& e = g.edges[static_cast<std::size_t>(id)];
      path[static_cast<std::size_t>(len)] = id;
      index[static_cast<std::size_t>(len)] = index[static_cast<std::size_t>(len - 1)] + e.index;
      weight[static_cast<std::size_t>(len)] = weight[static_cast<std::size_t>(len - 1)] * e.weight;
      extend(len + 1, start_vertex);
    }
  }
};

}  // namespace

std::vector<CycleClass> prime_classes(const WeightedDigraph& g, int max_length, bool zero_index_only,
                                      bool non_backtracking, const Limits& limits) {
  if (max_length < 1) throw Error(ErrorCode::InvalidArgument, "length cap must be >= 1");
  if (max_length > limits.oracle_cap) {
    throw Error(ErrorCode::OracleCapExceeded, "length cap " + std::to_string(max_length) +
                                                  " exceeds the oracle cap " + std::to_string(limits.oracle_cap));
  }
  const auto L = static_cast<std::size_t>(max_length);
  ClassSearch search{g, max_length, zero_index_only, non_backtracking, std::vector<int>(L),
                     std::vector<LatticeIndex>(L, LatticeIndex::zero(g.dimension)), std::vector<double>(L, 1.0), {}};
  for (int id = 0; id < g.edge_count(); ++id) {
    const auto& e = g.edges[static_cast<std::size_t>(id)];
    search.path[0] = id;
    search.index[0] = e.index;
    search.weight[0] = e.weight;
    search.extend(1, e.from);
  }
  std::stable_sort(search.out.begin(), search.out.end(), [](const CycleClass& a, const CycleClass& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.representative.edge_ids < b.representative.edge_ids;
  });
  return std::move(search.out);
}

std::vector<CycleClass> prime_classes(const FundamentalGraph& g, int max_length, bool zero_index_only,
                                      bool non_backtracking, const Limits& limits) {
  return prime_classes(weighted_digraph(g, OperatorKind::Adjacency), max_length, zero_index_only, non_backtracking,
                       limits);
}

std::vector<CycleClass> prime_classes(const ModifiedGraph& g, int max_length, bool zero_index_only,
                                      bool non_backtracking, const Limits& limits) {
  return prime_classes(weighted_digraph(g, OperatorKind::Schrodinger), max_length, zero_index_only, non_backtracking,
                       limits);
}

PrimeCycleTable::PrimeCycleTable(const FundamentalGraph& g, OperatorKind kind, int max_length, const Limits& limits)
    : kind_(kind),
      fiber_(g, kind),
      nu_(g.vertex_count()),
      max_length_(max_length),
      majorant_(fiber_.digraph().majorant_radius()),
      classes_(prime_classes(fiber_.digraph(), max_length, false, false, limits)) {}

int PrimeCycleTable::checked_length(int L) const {
  if (L < 1 || L > max_length_) {
    throw Error(ErrorCode::InvalidArgument,
                "truncation " + std::to_string(L) + " outside [1, " + std::to_string(max_length_) + "]");
  }
  return L;
}

// Bound on the log of the omitted factors: nu sum_{n>L} x^n / n with x = |t| rho.
double PrimeCycleTable::product_tail(double t_abs, int L) const {
  const double x = t_abs * majorant_;
  if (x >= 1.0) return kInfinity;
  return nu_ * std::pow(x, L + 1) / ((L + 1) * (1.0 - x));
}

SeriesApprox PrimeCycleTable::determinant(std::complex<double> t, std::span<const double> k, int L) const {
  checked_length(L);
  const Eigen::MatrixXcd m = fiber_.at(k);
  const double norm = fiber_.norm(k);
  if (!(std::abs(t) * norm < 1.0)) {
    throw Error(ErrorCode::DivergentSeries, "|t| must be below 1/||M(k)|| = " + std::to_string(1.0 / norm));
  }
  SeriesApprox out;
  out.truncation = L;
  out.value = 1.0;
  for (const auto& c : classes_) {
    if (c.length > L) break;
    out.value *= 1.0 - phase(c.index, k) * c.weight * std::pow(t, c.length);
  }
  out.tail_bound = std::abs(out.value) * std::expm1(product_tail(std::abs(t), L));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  out.set_oracle((id - t * m).determinant());
  return out;
}

SeriesApprox PrimeCycleTable::gamma_log_determinant(std::complex<double> t, int L, int oracle_grid) const {
  checked_length(L);
  const double norm = global_norm_estimate(fiber_, 16);
  if (!(std::abs(t) * norm < 1.0)) {
    throw Error(ErrorCode::DivergentSeries, "|t| must be below 1/||M|| = " + std::to_string(1.0 / norm));
  }
  SeriesApprox out;
  out.truncation = L;
  out.value = 0.0;
  for (const auto& c : classes_) {
    if (c.length > L) break;
    if (c.index.is_zero()) out.value += std::log(1.0 - c.weight * std::pow(t, c.length));
  }
  out.tail_bound = product_tail(std::abs(t), L);
  out.set_oracle(grid_average_complex(BrillouinGrid{fiber_.dimension(), oracle_grid}, [&](std::span<const double> k) {
    const Eigen::VectorXd ev = fiber_.eigenvalues(k);
    std::complex<double> s = 0.0;
    for (int j = 0; j < ev.size(); ++j) s += std::log(1.0 - t * ev(j));
    return s;
  }));
  return out;
}

SeriesApprox PrimeCycleTable::l_function(std::complex<double> u, std::span<const double> k, int L) const {
  if (kind_ != OperatorKind::Adjacency) {
    throw Error(ErrorCode::InvalidArgument, "the L-function is built from the adjacency operator");
  }
  checked_length(L);
  const Eigen::MatrixXcd a = fiber_.at(k);
  const double norm = fiber_.norm(k);
  if (!(std::abs(u) * norm < 1.0)) {
    throw Error(ErrorCode::DivergentSeries, "|u| must be below 1/||A(k)|| = " + std::to_string(1.0 / norm));
  }
  std::complex<double> product = 1.0;
  for (const auto& c : classes_) {
    if (c.length > L) break;
    product *= 1.0 - phase(c.index, k) * std::pow(u, c.length);
  }
  SeriesApprox out;
  out.truncation = L;
  out.value = 1.0 / product;
  out.tail_bound = std::abs(out.value) * std::expm1(product_tail(std::abs(u), L));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  out.set_oracle(1.0 / (id - u * a).determinant());
  return out;
}

SeriesApprox determinant_product(const FundamentalGraph& g, OperatorKind kind, std::complex<double> t,
                                 std::span<const double> k, int L, const Limits& limits) {
  return PrimeCycleTable(g, kind, L, limits).determinant(t, k, L);
}

SeriesApprox gamma_log_determinant(const FundamentalGraph& g, OperatorKind kind, std::complex<double> t, int L,
                                   const Limits& limits) {
  return PrimeCycleTable(g, kind, L, limits).gamma_log_determinant(t, L);
}

SeriesApprox l_function(const FundamentalGraph& g, std::complex<double> u, std::span<const double> k, int L,
                        const Limits& limits) {
  return PrimeCycleTable(g, OperatorKind::Adjacency, L, limits).l_function(u, k, L);
}

SeriesApprox ihara_zeta(const FundamentalGraph& g, std::complex<double> u, int L, const Limits& limits) {
  const auto classes = prime_classes(g, L, true, true, limits);
  std::complex<double> product = 1.0;
  for (const auto& c : classes) product *= 1.0 - std::pow(u, c.length);
  SeriesApprox out;
  out.truncation = L;
  out.value = 1.0 / product;
  // Non-backtracking cycles of length n number at most #A (kappa_+ - 1)^(n-1).
  const double branching = g.kappa_plus() - 1.0;
  const double q = std::abs(u) * branching;
  double tail = 0.0;
  if (q >= 1.0) {
    tail = kInfinity;
  } else if (branching > 0.0) {
    tail = g.edge_count() * std::abs(u) * std::pow(q, L) / ((L + 1) * (1.0 - q));
  }
  out.tail_bound = std::abs(out.value) * std::expm1(tail);
  return out;
}

std::vector<std::int64_t> ihara_log_derivative_from_classes(const FundamentalGraph& g, int L, const Limits& limits) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(L), 0);
  for (const auto& c : prime_classes(g, L, true, true, limits)) {
    for (int n = c.length; n <= L; n += c.length) out[static_cast<std::size_t>(n - 1)] += c.length;
  }
  return out;
}

std::vector<std::int64_t> ihara_log_derivative_bruteforce(const FundamentalGraph& g, int L, const Limits& limits) {
  const WeightedDigraph a = weighted_digraph(g, OperatorKind::Adjacency);
  std::vector<std::int64_t> out;
  for (int n = 1; n <= L; ++n) out.push_back(count_non_backtracking_cycles(a, n, true, limits));
  return out;
}

}  // namespace periodic_spectra
