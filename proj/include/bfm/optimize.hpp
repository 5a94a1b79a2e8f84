#pragma once
// Budgeted maximization: exact enumeration benchmark and the demand-query
// grid algorithm for subadditive valuations.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bfm/oracle.hpp"
#include "bfm/rational.hpp"
#include "bfm/types.hpp"
#include "bfm/valuation.hpp"

namespace bfm {

struct Instance {
  int n = 0;
  Q budget;
  std::vector<Q> costs;  // true costs, each <= budget
  ValuationSpec spec;
  std::string id;
  std::optional<std::uint64_t> seed;  // generator provenance, carried through files

  void validate() const {
    if (n < 0 || n > kMaxAgents) throw input_error("instance: bad agent count");
    if (budget <= 0) throw input_error("instance: budget must be positive");
    if (static_cast<int>(costs.size()) != n) throw input_error("instance: need one cost per agent");
    for (int i = 0; i < n; ++i) {
      if (costs[i] < 0) throw input_error("instance: negative cost for agent " + std::to_string(i));
      if (costs[i] > budget)
        throw input_error("instance: cost of agent " + std::to_string(i) +
                          " exceeds the budget (normalization requires c(i) <= B)");
    }
    if (spec.n != n) throw input_error("instance: valuation is over a different agent count");
  }
};

inline Instance make_instance(ValuationSpec spec, std::vector<Q> costs, Q budget,
                              std::string id = "") {
  Instance inst;
  inst.n = spec.n;
  inst.budget = std::move(budget);
  inst.costs = std::move(costs);
  inst.spec = std::move(spec);
  inst.id = std::move(id);
  inst.validate();
  return inst;
}

struct BudgetedSolution {
  AgentSet winners = 0;
  Q value;
};

namespace detail {
// ties: higher value, then fewer agents, then lexicographically smaller set
inline bool better_solution(const Q& v, AgentSet s, const Q& best_v, AgentSet best_s) {
  if (v != best_v) return v > best_v;
  int a = set_size(s), b = set_size(best_s);
  if (a != b) return a < b;
  return lex_less(s, best_s);
}

inline BudgetedSolution opt_exact_tab(const std::vector<Q>& vtab, AgentSet allowed,
                                      const std::vector<Q>& cost_sums, const Q& B) {
  BudgetedSolution best;  // empty set, value 0 — always feasible
  best.value = vtab[0];
  AgentSet s = allowed;
  while (true) {
    if (s != 0 && cost_sums[s] <= B && better_solution(vtab[s], s, best.value, best.winners)) {
      best.value = vtab[s];
      best.winners = s;
    }
    if (s == 0) break;
    s = (s - 1) & allowed;
  }
  return best;
}
}  // namespace detail

// Exact optimum of v(S) subject to given costs; `costs` is explicit so callers
// can substitute bids or fictitious uniform prices.
inline BudgetedSolution budgeted_opt_exact(const Instance& inst, const std::vector<Q>& costs,
                                           AgentSet allowed) {
  if (inst.n > kMaxAgents) throw capability_error("budgeted_opt_exact: too many agents");
  std::vector<Q> vtab = tabulate(inst.spec);
  return detail::opt_exact_tab(vtab, allowed, subset_sums(costs), inst.budget);
}

inline BudgetedSolution budgeted_opt_exact(const Instance& inst, const std::vector<Q>& costs) {
  return budgeted_opt_exact(inst, costs, full_set(inst.n));
}

inline BudgetedSolution budgeted_opt_exact(const Instance& inst) {
  return budgeted_opt_exact(inst, inst.costs, full_set(inst.n));
}

struct SaOptions {
  bool check_quarter = false;  // verify v(S_v) >= v/4 on each accepted grid point
};

namespace detail {
// Grid algorithm: for each candidate v, post prices v*c(i)/(2B), take the
// canonical demand set, and if it carries value >= v/2 fill greedily by
// decreasing cost until the budget would be exceeded. For subadditive values
// every accepted grid point yields v(S_v) >= v/4, which makes the best grid
// point an 8-approximation (grid step v* brackets opt within a factor 2).
inline BudgetedSolution sa_grid_core(const std::vector<Q>& vtab, int n, AgentSet allowed,
                                     const std::vector<Q>& costs, const Q& B, const Q& step,
                                     long grid_points, const SaOptions& opts) {
  BudgetedSolution best;
  best.value = 0;
  if (step <= 0 || grid_points <= 0) return best;
  PriceVector prices(n, Q(0));
  for (long m = 1; m <= grid_points; ++m) {
    Q v = step * m;
    for (int i = 0; i < n; ++i)
      if (contains(allowed, i)) prices[i] = v * costs[i] / (2 * B);
    AgentSet T = canonical_demand_query_tab(vtab, n, prices, allowed);
    if (2 * vtab[T] < v) continue;
    // decreasing cost, ties to the lower agent id; stop at the first overflow
    std::vector<int> order;
    for (AgentSet t = T; t; t &= t - 1) order.push_back(lowest_agent(t));
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return costs[a] > costs[b]; });
    AgentSet S = 0;
    Q spent = 0;
    for (int i : order) {
      if (spent + costs[i] > B) break;
      spent += costs[i];
      S |= bit(i);
    }
    if (opts.check_quarter && 4 * vtab[S] < v)
      throw std::logic_error("grid invariant failed: accepted point produced less than v/4");
    if (vtab[S] > best.value) {  // first grid point keeps ties
      best.value = vtab[S];
      best.winners = S;
    }
  }
  return best;
}

inline Q max_singleton(const std::vector<Q>& vtab, AgentSet allowed) {
  Q vstar = 0;
  for (AgentSet t = allowed; t; t &= t - 1)
    if (vtab[bit(lowest_agent(t))] > vstar) vstar = vtab[bit(lowest_agent(t))];
  return vstar;
}

inline BudgetedSolution sa_alg_max_tab(const std::vector<Q>& vtab, int n, AgentSet allowed,
                                       const std::vector<Q>& costs, const Q& B,
                                       const SaOptions& opts) {
  Q vstar = max_singleton(vtab, allowed);
  if (vstar == 0) return {0, Q(0)};
  return sa_grid_core(vtab, n, allowed, costs, B, vstar, set_size(allowed), opts);
}

inline BudgetedSolution sa_alg_max_fine_tab(const std::vector<Q>& vtab, int n, AgentSet allowed,
                                            const std::vector<Q>& costs, const Q& B, const Q& eps,
                                            const SaOptions& opts) {
  if (eps <= 0) throw input_error("fine grid: eps must be positive");
  Q vstar = max_singleton(vtab, allowed);
  if (vstar == 0) return {0, Q(0)};
  long points = ceil_q(Q(set_size(allowed)) / eps).convert_to<long>();
  return sa_grid_core(vtab, n, allowed, costs, B, eps * vstar, points, opts);
}
}  // namespace detail

inline BudgetedSolution sa_alg_max(const Instance& inst, const std::vector<Q>& costs,
                                   const SaOptions& opts = {}) {
  std::vector<Q> vtab = tabulate(inst.spec);
  return detail::sa_alg_max_tab(vtab, inst.n, full_set(inst.n), costs, inst.budget, opts);
}

inline BudgetedSolution sa_alg_max(const Instance& inst) { return sa_alg_max(inst, inst.costs); }

inline BudgetedSolution sa_alg_max_fine(const Instance& inst, const std::vector<Q>& costs,
                                        const Q& eps, const SaOptions& opts = {}) {
  std::vector<Q> vtab = tabulate(inst.spec);
  return detail::sa_alg_max_fine_tab(vtab, inst.n, full_set(inst.n), costs, inst.budget, eps, opts);
}

}  // namespace bfm
