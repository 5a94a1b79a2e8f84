#pragma once
// Valuation kinds, value queries, closures, clause extraction.

#include <algorithm>
#include <utility>
#include <vector>

#include "bfm/types.hpp"

namespace bfm {

enum class VKind { Additive, XosClauses, Table, Matching, Clique, Cut, CostSaving };

inline const char* kind_name(VKind k) {
  switch (k) {
    case VKind::Additive: return "additive";
    case VKind::XosClauses: return "xos";
    case VKind::Table: return "table";
    case VKind::Matching: return "matching";
    case VKind::Clique: return "clique";
    case VKind::Cut: return "cut";
    case VKind::CostSaving: return "cost_saving";
  }
  return "?";
}

struct GraphEdge {
  int u = 0, v = 0;
  Q w;
};

struct ValuationSpec {
  VKind kind = VKind::Additive;
  int n = 0;  // number of agents
  std::vector<Q> weights;               // Additive
  std::vector<std::vector<Q>> clauses;  // XosClauses: each a weight vector
  std::vector<Q> table;                 // Table: v per mask; CostSaving: cost per mask
  int vertices = 0;                     // graph kinds
  std::vector<GraphEdge> edges;         // Matching: agents are edges; Clique/Cut: agents are vertices
  std::vector<Q> vertex_values;         // Clique
  std::vector<Q> cache;                 // precomputed values (Matching/Clique)
};

namespace detail {
inline void check_n(int n, int limit, const char* what) {
  if (n < 0 || n > limit)
    throw capability_error(std::string(what) + ": supports up to " +
                           std::to_string(limit) + " agents, got " + std::to_string(n));
}
inline void check_nonneg(const std::vector<Q>& v, const char* what) {
  for (const Q& x : v)
    if (x < 0) throw input_error(std::string(what) + ": negative entry");
}
}  // namespace detail

inline ValuationSpec make_additive(std::vector<Q> weights) {
  detail::check_n(static_cast<int>(weights.size()), kMaxAgents, "additive");
  detail::check_nonneg(weights, "additive weights");
  ValuationSpec s;
  s.kind = VKind::Additive;
  s.n = static_cast<int>(weights.size());
  s.weights = std::move(weights);
  return s;
}

inline ValuationSpec make_xos(std::vector<std::vector<Q>> clauses) {
  if (clauses.empty()) throw input_error("xos: needs at least one clause");
  ValuationSpec s;
  s.kind = VKind::XosClauses;
  s.n = static_cast<int>(clauses[0].size());
  detail::check_n(s.n, kMaxAgents, "xos");
  for (const auto& c : clauses) {
    if (static_cast<int>(c.size()) != s.n) throw input_error("xos: ragged clause matrix");
    detail::check_nonneg(c, "xos clause");
  }
  s.clauses = std::move(clauses);
  return s;
}

inline ValuationSpec make_table(std::vector<Q> values) {
  int n = 0;
  while ((std::size_t{1} << n) < values.size()) ++n;
  if ((std::size_t{1} << n) != values.size())
    throw input_error("table: size must be a power of two");
  detail::check_n(n, kMaxAgents, "table");
  if (!values.empty() && values[0] != 0) throw input_error("table: value of empty set must be 0");
  detail::check_nonneg(values, "table values");
  ValuationSpec s;
  s.kind = VKind::Table;
  s.n = n;
  s.table = std::move(values);
  return s;
}

namespace detail {
inline void check_edges(int vertices, const std::vector<GraphEdge>& edges, bool need_weights) {
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= vertices || e.v < 0 || e.v >= vertices)
      throw input_error("graph: edge endpoint out of range");
    if (e.u == e.v) throw input_error("graph: self loop");
    if (need_weights && e.w < 0) throw input_error("graph: negative edge weight");
  }
}

// max-weight matching value for every subset of edges, O(2^m)
inline std::vector<Q> matching_table(int vertices, const std::vector<GraphEdge>& edges) {
  int m = static_cast<int>(edges.size());
  std::vector<AgentSet> conflict(m, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (edges[a].u == edges[b].u || edges[a].u == edges[b].v ||
          edges[a].v == edges[b].u || edges[a].v == edges[b].v)
        conflict[a] |= bit(b);
  (void)vertices;
  std::vector<Q> out(std::size_t{1} << m);
  for (AgentSet s = 1; s < out.size(); ++s) {
    int h = highest_agent(s);
    out[s] = out[s ^ bit(h)];
    Q with = edges[h].w + out[s & ~conflict[h]];
    if (with > out[s]) out[s] = with;
  }
  return out;
}

// max-weight clique value for every subset of vertices, O(2^n)
inline std::vector<Q> clique_table(int n, const std::vector<AgentSet>& adj,
                                   const std::vector<Q>& val) {
  std::vector<Q> out(std::size_t{1} << n);
  for (AgentSet s = 1; s < out.size(); ++s) {
    int h = highest_agent(s);
    out[s] = out[s ^ bit(h)];
    Q with = val[h] + out[s & adj[h]];  // adj[h] excludes h
    if (with > out[s]) out[s] = with;
  }
  return out;
}
}  // namespace detail

inline ValuationSpec make_matching(int vertices, std::vector<GraphEdge> edges) {
  detail::check_n(static_cast<int>(edges.size()), kMaxAgents, "matching");
  detail::check_edges(vertices, edges, true);
  ValuationSpec s;
  s.kind = VKind::Matching;
  s.n = static_cast<int>(edges.size());
  s.vertices = vertices;
  s.edges = std::move(edges);
  s.cache = detail::matching_table(vertices, s.edges);
  return s;
}

inline ValuationSpec make_clique(int vertices, std::vector<GraphEdge> edges,
                                 std::vector<Q> vertex_values) {
  detail::check_n(vertices, kMaxAgents, "clique");
  detail::check_edges(vertices, edges, false);
  if (static_cast<int>(vertex_values.size()) != vertices)
    throw input_error("clique: need one value per vertex");
  detail::check_nonneg(vertex_values, "clique vertex values");
  std::vector<AgentSet> adj(vertices, 0);
  for (const auto& e : edges) {
    adj[e.u] |= bit(e.v);
    adj[e.v] |= bit(e.u);
  }
  ValuationSpec s;
  s.kind = VKind::Clique;
  s.n = vertices;
  s.vertices = vertices;
  s.edges = std::move(edges);
  s.vertex_values = std::move(vertex_values);
  s.cache = detail::clique_table(vertices, adj, s.vertex_values);
  return s;
}

inline ValuationSpec make_cut(int vertices, std::vector<GraphEdge> edges) {
  detail::check_n(vertices, kMaxAgents, "cut");
  detail::check_edges(vertices, edges, true);
  ValuationSpec s;
  s.kind = VKind::Cut;
  s.n = vertices;
  s.vertices = vertices;
  s.edges = std::move(edges);
  return s;
}

inline ValuationSpec make_cost_saving(std::vector<Q> cost_table) {
  int n = 0;
  while ((std::size_t{1} << n) < cost_table.size()) ++n;
  if ((std::size_t{1} << n) != cost_table.size())
    throw input_error("cost_saving: table size must be a power of two");
  detail::check_n(n, kMaxAgents, "cost_saving");
  if (!cost_table.empty() && cost_table[0] != 0)
    throw input_error("cost_saving: cost of empty set must be 0");
  ValuationSpec s;
  s.kind = VKind::CostSaving;
  s.n = n;
  s.table = std::move(cost_table);
  return s;
}

// v(S) = c(A) - c(A \ S): what the grand coalition saves by outsourcing S.
inline ValuationSpec cost_saving_valuation(std::vector<Q> cost_table) {
  return make_cost_saving(std::move(cost_table));
}

inline Q value(const ValuationSpec& s, AgentSet S) {
  if (S >= (AgentSet{1} << s.n))
    throw input_error("value: set mentions unknown agent " + set_to_string(S));
  switch (s.kind) {
    case VKind::Additive: {
      Q v = 0;
      for (AgentSet m = S; m; m &= m - 1) v += s.weights[lowest_agent(m)];
      return v;
    }
    case VKind::XosClauses: {
      Q best = 0;
      for (const auto& c : s.clauses) {
        Q v = 0;
        for (AgentSet m = S; m; m &= m - 1) v += c[lowest_agent(m)];
        if (v > best) best = v;
      }
      return best;
    }
    case VKind::Table:
      return s.table[S];
    case VKind::Matching:
    case VKind::Clique:
      return s.cache[S];
    case VKind::Cut: {
      Q v = 0;
      for (const auto& e : s.edges)
        if (contains(S, e.u) != contains(S, e.v)) v += e.w;
      return v;
    }
    case VKind::CostSaving: {
      AgentSet full = full_set(s.n);
      return s.table[full] - s.table[full & ~S];
    }
  }
  return Q(0);
}

inline std::vector<Q> tabulate(const ValuationSpec& s) {
  std::vector<Q> out(std::size_t{1} << s.n);
  switch (s.kind) {
    case VKind::Table:
      return s.table;
    case VKind::Matching:
    case VKind::Clique:
      return s.cache;
    case VKind::Additive:
      return subset_sums(s.weights);
    case VKind::XosClauses: {
      for (const auto& c : s.clauses) {
        std::vector<Q> sums = subset_sums(c);
        for (std::size_t m = 0; m < out.size(); ++m)
          if (sums[m] > out[m]) out[m] = sums[m];
      }
      return out;
    }
    default:
      for (AgentSet m = 0; m < out.size(); ++m) out[m] = value(s, m);
      return out;
  }
}

// The clause attaining v(S); ties by lowest clause index. The returned vector
// is the whole clause (defined on every agent), dominated by v pointwise.
inline std::vector<Q> xos_clause_at(const ValuationSpec& s, AgentSet S) {
  if (s.kind != VKind::XosClauses)
    throw capability_error("xos_clause_at: spec is not a clause list; use an LP dual witness");
  if (S >= (AgentSet{1} << s.n)) throw input_error("xos_clause_at: unknown agent in set");
  std::size_t best = 0;
  Q best_v = -1;
  for (std::size_t j = 0; j < s.clauses.size(); ++j) {
    Q v = 0;
    for (AgentSet m = S; m; m &= m - 1) v += s.clauses[j][lowest_agent(m)];
    if (v > best_v) {
      best_v = v;
      best = j;
    }
  }
  return s.clauses[best];
}

// pointwise max over subsets; repairs non-monotone inputs
inline ValuationSpec monotone_closure(const ValuationSpec& s) {
  detail::check_n(s.n, kMaxAgents, "monotone_closure");
  std::vector<Q> t = tabulate(s);
  for (AgentSet m = 1; m < t.size(); ++m)
    for (AgentSet r = m; r; r &= r - 1) {
      const Q& drop = t[m ^ bit(lowest_agent(r))];
      if (drop > t[m]) t[m] = drop;
    }
  return make_table(std::move(t));
}

// min total value over partitions, via binary-split DP (each partition
// decomposes into nested two-way splits)
inline ValuationSpec subadditive_closure(const ValuationSpec& s) {
  detail::check_n(s.n, 12, "subadditive_closure");
  std::vector<Q> v = tabulate(s);
  std::vector<Q> out(v.size());
  for (AgentSet m = 1; m < out.size(); ++m) {
    out[m] = v[m];
    AgentSet low = m & (~m + 1);
    for (AgentSet t = (m - 1) & m; t; t = (t - 1) & m) {
      if (!(t & low)) continue;  // fix lowest agent into one side, halves the scan
      Q split = out[t] + out[m ^ t];
      if (split < out[m]) out[m] = split;
    }
  }
  return make_table(std::move(out));
}

}  // namespace bfm
