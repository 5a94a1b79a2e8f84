// Independent reference implementations used to check the library. Everything
// here is written straight from definitions, deliberately ignoring the faster
// or cleverer routes the library takes, so agreement is meaningful.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bfm/types.hpp"

namespace orc {

using bfm::AgentSet;
using bfm::Q;

// ---- budgeted optimum by recursive include/exclude -------------------------

namespace detail {
inline void opt_rec(const std::vector<Q>& vtab, const std::vector<Q>& costs, const Q& budget,
                    int i, AgentSet chosen, Q spent, Q& best_v, AgentSet& best_s) {
  if (i < 0) {
    const Q& v = vtab[chosen];
    if (v > best_v || (v == best_v && (bfm::set_size(chosen) < bfm::set_size(best_s) ||
                                       (bfm::set_size(chosen) == bfm::set_size(best_s) &&
                                        bfm::lex_less(chosen, best_s))))) {
      best_v = v;
      best_s = chosen;
    }
    return;
  }
  opt_rec(vtab, costs, budget, i - 1, chosen, spent, best_v, best_s);
  if (spent + costs[i] <= budget)
    opt_rec(vtab, costs, budget, i - 1, chosen | bfm::bit(i), spent + costs[i], best_v, best_s);
}
}  // namespace detail

struct BruteOpt {
  Q value;
  AgentSet set;
};

inline BruteOpt brute_opt(const std::vector<Q>& vtab, int n, const std::vector<Q>& costs,
                          const Q& budget) {
  Q best_v = -1;
  AgentSet best_s = 0;
  detail::opt_rec(vtab, costs, budget, n - 1, 0, Q(0), best_v, best_s);
  return {best_v, best_s};
}

// ---- additive optimum by knapsack DP over integer costs --------------------
// Caller scales costs/budget to integers; dp[c] = best weight at total cost c.
inline Q knapsack_additive_opt(const std::vector<Q>& weights, const std::vector<long>& int_costs,
                               long int_budget) {
  std::vector<Q> dp(static_cast<std::size_t>(int_budget) + 1, Q(0));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (long c = int_budget; c >= int_costs[i]; --c) {
      Q cand = dp[static_cast<std::size_t>(c - int_costs[i])] + weights[i];
      if (cand > dp[static_cast<std::size_t>(c)]) dp[static_cast<std::size_t>(c)] = cand;
    }
  }
  Q best = 0;
  for (const Q& v : dp)
    if (v > best) best = v;
  return best;
}

// ---- graph valuations straight from their definitions ----------------------

struct EdgeRef {
  int u, v;
  Q w;
};

// max-weight matching restricted to the edge subset S, by trying all subsets
inline Q brute_matching_value(const std::vector<EdgeRef>& edges, AgentSet S) {
  Q best = 0;
  for (AgentSet m = 0; m < (AgentSet{1} << edges.size()); ++m) {
    if ((m & S) != m) continue;
    std::uint64_t used = 0;
    bool ok = true;
    Q total = 0;
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (!bfm::contains(m, static_cast<int>(j))) continue;
      std::uint64_t mask = (std::uint64_t{1} << edges[j].u) | (std::uint64_t{1} << edges[j].v);
      if (used & mask) {
        ok = false;
        break;
      }
      used |= mask;
      total += edges[j].w;
    }
    if (ok && total > best) best = total;
  }
  return best;
}

// best clique within vertex set S (agents are vertices); adjacency by edge list
inline Q brute_clique_value(int vertices, const std::vector<std::pair<int, int>>& edges,
                            const std::vector<Q>& vertex_values, AgentSet S) {
  auto adjacent = [&](int a, int b) {
    for (auto [u, v] : edges)
      if ((u == a && v == b) || (u == b && v == a)) return true;
    return false;
  };
  Q best = 0;
  for (AgentSet m = 0; m < (AgentSet{1} << vertices); ++m) {
    if ((m & S) != m) continue;
    bool clique = true;
    for (int a = 0; a < vertices && clique; ++a)
      for (int b = a + 1; b < vertices && clique; ++b)
        if (bfm::contains(m, a) && bfm::contains(m, b) && !adjacent(a, b)) clique = false;
    if (!clique) continue;
    Q total = 0;
    for (int a = 0; a < vertices; ++a)
      if (bfm::contains(m, a)) total += vertex_values[a];
    if (total > best) best = total;
  }
  return best;
}

inline Q cut_value(const std::vector<EdgeRef>& edges, AgentSet S) {
  Q total = 0;
  for (const auto& e : edges)
    if (bfm::contains(S, e.u) != bfm::contains(S, e.v)) total += e.w;
  return total;
}

// ---- definitional class checks (all-pairs, no shortcuts) -------------------

inline bool def_monotone(const std::vector<Q>& v, int n) {
  AgentSet full = bfm::full_set(n);
  for (AgentSet s = 0; s <= full; ++s)
    for (AgentSet t = s; t <= full; ++t)
      if ((s & t) == s && v[s] > v[t]) return false;
  return true;
}

inline bool def_subadditive(const std::vector<Q>& v, int n) {
  AgentSet full = bfm::full_set(n);
  for (AgentSet s = 0; s <= full; ++s)
    for (AgentSet t = 0; t <= full; ++t)
      if (v[s | t] > v[s] + v[t]) return false;
  return true;
}

inline bool def_submodular(const std::vector<Q>& v, int n) {
  AgentSet full = bfm::full_set(n);
  for (AgentSet s = 0; s <= full; ++s)
    for (AgentSet t = 0; t <= full; ++t)
      if (v[s] + v[t] < v[s | t] + v[s & t]) return false;
  return true;
}

inline bool def_supermodular(const std::vector<Q>& v, int n) {
  AgentSet full = bfm::full_set(n);
  for (AgentSet s = 0; s <= full; ++s)
    for (AgentSet t = 0; t <= full; ++t)
      if (v[s] + v[t] > v[s | t] + v[s & t]) return false;
  return true;
}

inline std::vector<Q> def_monotone_closure(const std::vector<Q>& v, int n) {
  std::vector<Q> out(std::size_t{1} << n);
  for (AgentSet m = 0; m < out.size(); ++m) {
    Q best = v[m];
    for (AgentSet t = m;; t = (t - 1) & m) {
      if (v[t] > best) best = v[t];
      if (t == 0) break;
    }
    out[m] = best;
  }
  return out;
}

// min over all partitions of S into nonempty blocks of the blockwise sum;
// recursion peels the block containing the lowest agent
inline std::vector<Q> def_subadditive_closure(const std::vector<Q>& v, int n) {
  std::vector<Q> out(std::size_t{1} << n, Q(-1));
  out[0] = 0;
  for (AgentSet m = 1; m < out.size(); ++m) {
    AgentSet low = bfm::bit(bfm::lowest_agent(m));
    Q best = -1;
    for (AgentSet blk = m;; blk = (blk - 1) & m) {
      if (blk & low) {
        Q cand = v[blk] + out[m ^ blk];
        if (best < 0 || cand < best) best = cand;
      }
      if (blk == 0) break;
    }
    out[m] = best;
  }
  return out;
}

// ---- LP certificate check ---------------------------------------------------
// Verifies that (value, alpha) is an optimal fractional cover of S and y an
// optimal dual, purely from feasibility + matching objectives. The LP under
// test prices every subset as a column and counts coverage through T ∩ S, so
// feasibility is checked for that formulation (equivalent to the textbook
// cover LP whenever the valuation is monotone).
inline bool cover_certificate_ok(const std::vector<Q>& vtab, int n, AgentSet S, const Q& value,
                                 const std::vector<std::pair<AgentSet, Q>>& alpha,
                                 const std::vector<Q>& y) {
  // primal feasibility and objective
  Q primal = 0;
  for (const auto& [set, a] : alpha) {
    if (a < 0) return false;
    if (set >= (AgentSet{1} << n)) return false;
    primal += a * vtab[set];
  }
  for (int i = 0; i < n; ++i) {
    if (!bfm::contains(S, i)) continue;
    Q cover = 0;
    for (const auto& [set, a] : alpha)
      if (bfm::contains(set, i)) cover += a;
    if (cover < 1) return false;
  }
  if (primal != value) return false;
  // dual feasibility and objective
  if (static_cast<int>(y.size()) != n) return false;
  Q dual = 0;
  for (int i = 0; i < n; ++i) {
    if (y[i] < 0) return false;
    if (!bfm::contains(S, i) && y[i] != 0) return false;
    if (bfm::contains(S, i)) dual += y[i];
  }
  for (AgentSet t = 0; t < (AgentSet{1} << n); ++t) {
    Q side = 0;
    for (AgentSet m = t & S; m; m &= m - 1) side += y[bfm::lowest_agent(m)];
    if (side > vtab[t]) return false;
  }
  return dual == value;
}

}  // namespace orc
