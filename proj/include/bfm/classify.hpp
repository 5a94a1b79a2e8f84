#pragma once
// Exhaustive structural classification of a valuation (desk scale).

#include <optional>
#include <vector>

#include "bfm/lp.hpp"
#include "bfm/types.hpp"
#include "bfm/valuation.hpp"

namespace bfm {

struct ClassificationReport {
  bool monotone = false;
  bool subadditive = false;
  bool xos = false;
  bool submodular = false;
  bool supermodular = false;
  // max_S v(S)/v̌(S); absent when some v̌(S)=0 < v(S) (no finite constant)
  std::optional<Q> k_subadditive;
};

namespace detail {
inline bool monotone_tab(const std::vector<Q>& v, int n) {
  for (AgentSet m = 0; m < v.size(); ++m)
    for (int i = 0; i < n; ++i)
      if (!contains(m, i) && v[m | bit(i)] < v[m]) return false;
  return true;
}

// For monotone v the disjoint pairs suffice (v(T) >= v(T \ S)); otherwise all
// pairs are checked.
inline bool subadditive_tab(const std::vector<Q>& v, int n, bool monotone) {
  AgentSet full = full_set(n);
  if (monotone) {
    for (AgentSet s = 0; s <= full; ++s) {
      AgentSet rest = full & ~s;
      for (AgentSet t = rest;; t = (t - 1) & rest) {
        if (v[s] + v[t] < v[s | t]) return false;
        if (t == 0) break;
      }
    }
    return true;
  }
  for (AgentSet s = 0; s <= full; ++s)
    for (AgentSet t = 0; t <= full; ++t)
      if (v[s] + v[t] < v[s | t]) return false;
  return true;
}

// local characterization: v(S+i) + v(S+j) >= v(S+i+j) + v(S)
inline bool submodular_tab(const std::vector<Q>& v, int n, bool super) {
  for (AgentSet s = 0; s < v.size(); ++s)
    for (int i = 0; i < n; ++i) {
      if (contains(s, i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (contains(s, j)) continue;
        Q lhs = v[s | bit(i)] + v[s | bit(j)];
        Q rhs = v[s | bit(i) | bit(j)] + v[s];
        if (super ? lhs > rhs : lhs < rhs) return false;
      }
    }
  return true;
}
}  // namespace detail

inline ClassificationReport classify(const ValuationSpec& spec) {
  if (spec.n > 12) throw capability_error("classify: supports up to 12 agents");
  std::vector<Q> v = tabulate(spec);
  ClassificationReport rep;
  rep.monotone = detail::monotone_tab(v, spec.n);
  rep.subadditive = detail::subadditive_tab(v, spec.n, rep.monotone);
  rep.submodular = detail::submodular_tab(v, spec.n, false);
  rep.supermodular = detail::submodular_tab(v, spec.n, true);
  // deliberately goes through the LP gap even for explicit clause lists, so
  // the certifier is exercised against specs that are XOS by construction
  rep.xos = certify_xos_tab(v, spec.n);
  std::vector<Q> closed = tabulate(subadditive_closure(spec));
  Q k(1);
  bool bounded = true;
  for (AgentSet m = 1; m < v.size(); ++m) {
    if (closed[m] == 0) {
      if (v[m] != 0) {
        bounded = false;
        break;
      }
      continue;
    }
    Q ratio = v[m] / closed[m];
    if (ratio > k) k = ratio;
  }
  if (bounded) rep.k_subadditive = k;
  return rep;
}

}  // namespace bfm
