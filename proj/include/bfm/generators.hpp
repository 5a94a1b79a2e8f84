#pragma once
// Seeded instance generators. Every byte of output is a deterministic function
// of (kind, params, seed); costs and budgets are rationals, values integers.

#include <random>
#include <string>
#include <vector>

#include "bfm/classify.hpp"
#include "bfm/optimize.hpp"

namespace bfm {

struct GenParams {
  int n = 4;     // agents (edges for matching, vertices for clique/cut)
  int m = 3;     // clauses (xos only)
  int vmax = 4;  // value grid {0..vmax}
};

namespace detail {
inline long draw(std::mt19937_64& rng, long lo, long hi) {  // inclusive
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Q draw_budget(std::mt19937_64& rng, int vmax) {
  return Q(draw(rng, 1, 4L * vmax));
}

// rational multiples of B/16, never above B
inline std::vector<Q> draw_costs(std::mt19937_64& rng, int n, const Q& B) {
  std::vector<Q> c(n);
  for (int i = 0; i < n; ++i) c[i] = B * draw(rng, 0, 16) / 16;
  return c;
}

// Build the table in popcount order: each set gets an integer between the
// monotone floor (largest one-removed subset) and the subadditive ceiling
// (cheapest two-way split). Induction keeps floor <= ceiling, so no rejection
// is needed; the class check below still runs as a guard.
inline std::vector<Q> random_monotone_subadditive_table(std::mt19937_64& rng, int n, int vmax) {
  std::vector<AgentSet> order;
  for (AgentSet s = 1; s < (AgentSet{1} << n); ++s) order.push_back(s);
  std::sort(order.begin(), order.end(), [](AgentSet a, AgentSet b) {
    int pa = set_size(a), pb = set_size(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  std::vector<Q> t(std::size_t{1} << n, Q(0));
  for (AgentSet s : order) {
    if (set_size(s) == 1) {
      t[s] = draw(rng, 0, vmax);
      continue;
    }
    Q lo = 0;
    for (AgentSet r = s; r; r &= r - 1) {
      const Q& sub = t[s ^ bit(lowest_agent(r))];
      if (sub > lo) lo = sub;
    }
    Q hi;
    bool first = true;
    AgentSet low = s & (~s + 1);
    for (AgentSet u = (s - 1) & s; u; u = (u - 1) & s) {
      if (!(u & low)) continue;
      Q split = t[u] + t[s ^ u];
      if (first || split < hi) hi = split;
      first = false;
    }
    t[s] = lo + draw(rng, 0, (hi - lo).convert_to<long>());
  }
  return t;
}

// c(S) = sum of item costs plus a nonnegative pairwise synergy term
inline std::vector<Q> random_supermodular_cost_table(std::mt19937_64& rng, int n, int vmax) {
  std::vector<long> a(n);
  std::vector<std::vector<long>> b(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) a[i] = draw(rng, 0, vmax);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b[i][j] = draw(rng, 0, vmax);
  std::vector<Q> t(std::size_t{1} << n, Q(0));
  for (AgentSet s = 1; s < t.size(); ++s) {
    long c = 0;
    for (int i = 0; i < n; ++i) {
      if (!contains(s, i)) continue;
      c += a[i];
      for (int j = i + 1; j < n; ++j)
        if (contains(s, j)) c += b[i][j];
    }
    t[s] = c;
  }
  return t;
}
}  // namespace detail

inline std::vector<std::string> generator_kinds() {
  return {"additive", "xos", "table", "supermodular-cost", "matching", "clique", "cut", "unit"};
}

inline Instance generate_instance(const std::string& kind, const GenParams& p,
                                  std::uint64_t seed) {
  if (p.n < 1 || p.n > 12) throw input_error("generate: n must be in 1..12");
  if (p.m < 1 || p.m > 8) throw input_error("generate: m must be in 1..8");
  if (p.vmax < 1 || p.vmax > 1000) throw input_error("generate: vmax must be in 1..1000");
  std::mt19937_64 rng(seed);
  ValuationSpec spec;
  if (kind == "additive") {
    std::vector<Q> w(p.n);
    for (int i = 0; i < p.n; ++i) w[i] = detail::draw(rng, 0, p.vmax);
    spec = make_additive(std::move(w));
  } else if (kind == "xos") {
    std::vector<std::vector<Q>> clauses(p.m, std::vector<Q>(p.n));
    for (auto& c : clauses)
      for (auto& x : c) x = detail::draw(rng, 0, p.vmax);
    spec = make_xos(std::move(clauses));
  } else if (kind == "table") {
    std::vector<Q> t = detail::random_monotone_subadditive_table(rng, p.n, p.vmax);
    if (p.n <= 10 &&
        (!detail::monotone_tab(t, p.n) || !detail::subadditive_tab(t, p.n, true)))
      throw std::logic_error("generate: table sampler broke its class guarantee");
    spec = make_table(std::move(t));
  } else if (kind == "supermodular-cost") {
    spec = cost_saving_valuation(detail::random_supermodular_cost_table(rng, p.n, p.vmax));
  } else if (kind == "matching") {
    int vertices = std::max(2, p.n);
    std::vector<GraphEdge> edges(p.n);
    for (auto& e : edges) {
      e.u = static_cast<int>(detail::draw(rng, 0, vertices - 1));
      e.v = static_cast<int>(detail::draw(rng, 0, vertices - 2));
      if (e.v >= e.u) ++e.v;
      e.w = detail::draw(rng, 0, p.vmax);
    }
    spec = make_matching(vertices, std::move(edges));
  } else if (kind == "clique") {
    std::vector<GraphEdge> edges;
    for (int i = 0; i < p.n; ++i)
      for (int j = i + 1; j < p.n; ++j)
        if (detail::draw(rng, 0, 1)) edges.push_back({i, j, Q(0)});
    std::vector<Q> vals(p.n);
    for (auto& x : vals) x = detail::draw(rng, 0, p.vmax);
    spec = make_clique(p.n, std::move(edges), std::move(vals));
  } else if (kind == "cut") {
    std::vector<GraphEdge> edges;
    for (int i = 0; i < p.n; ++i)
      for (int j = i + 1; j < p.n; ++j)
        if (detail::draw(rng, 0, 1)) edges.push_back({i, j, Q(detail::draw(rng, 1, p.vmax))});
    spec = make_cut(p.n, std::move(edges));
  } else if (kind == "unit") {
    spec = make_additive(std::vector<Q>(p.n, Q(1)));
  } else {
    throw input_error("generate: unknown kind '" + kind + "' (try: " + [] {
      std::string s;
      for (const auto& k : generator_kinds()) s += (s.empty() ? "" : ", ") + k;
      return s;
    }() + ")");
  }
  Instance inst;
  inst.n = spec.n;
  if (kind == "unit") {
    inst.budget = Q(detail::draw(rng, 1, p.n));
    inst.costs.assign(inst.n, Q(1));
  } else {
    inst.budget = detail::draw_budget(rng, p.vmax);
    inst.costs = detail::draw_costs(rng, inst.n, inst.budget);
  }
  inst.spec = std::move(spec);
  inst.id = kind + "-n" + std::to_string(p.n) + "-s" + std::to_string(seed);
  inst.seed = seed;
  inst.validate();
  return inst;
}

}  // namespace bfm
