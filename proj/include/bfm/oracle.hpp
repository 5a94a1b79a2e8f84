#pragma once
// Demand queries over explicit enumeration, plus the fixed-order canonical
// variant mechanisms rely on for deterministic tie-breaking.

#include <vector>

#include "bfm/types.hpp"
#include "bfm/valuation.hpp"

namespace bfm {

using PriceVector = std::vector<Q>;  // one price per agent, >= 0

namespace detail {
inline void check_prices(const PriceVector& p, int n) {
  if (static_cast<int>(p.size()) != n) throw input_error("prices: need one entry per agent");
  for (const Q& x : p)
    if (x < 0) throw input_error("prices: negative price");
}

// argmax of vtab[S] - psum[S] over submasks of `allowed`; lowest mask wins ties
inline AgentSet demand_tab(const std::vector<Q>& vtab, const std::vector<Q>& psum,
                           AgentSet allowed) {
  AgentSet best = 0;
  Q best_s = 0;  // empty set surplus
  AgentSet s = allowed;
  while (true) {
    if (s != 0) {
      Q surplus = vtab[s] - psum[s];
      if (surplus > best_s || (surplus == best_s && s < best)) {
        best_s = surplus;
        best = s;
      }
    }
    if (s == 0) break;
    s = (s - 1) & allowed;
  }
  return best;
}
}  // namespace detail

// Fixed-order resolution: among all surplus maximizers, pick the one whose
// bitmask is lowest as an integer. A fixed order over *sets* is what the
// mechanisms need: when a member of the selected set lowers its bid, every
// maximizer still containing it shifts up by the same amount and every other
// set falls strictly behind, so the selected set does not change.
inline AgentSet canonical_demand_query_tab(const std::vector<Q>& vtab, int n,
                                           const PriceVector& prices, AgentSet allowed) {
  return detail::demand_tab(vtab, subset_sums(prices), allowed & full_set(n));
}

inline AgentSet demand_query(const ValuationSpec& spec, const PriceVector& prices) {
  detail::check_prices(prices, spec.n);
  std::vector<Q> vtab = tabulate(spec);
  std::vector<Q> psum = subset_sums(prices);
  return detail::demand_tab(vtab, psum, full_set(spec.n));
}

inline AgentSet canonical_demand_query(const ValuationSpec& spec, const PriceVector& prices) {
  detail::check_prices(prices, spec.n);
  std::vector<Q> vtab = tabulate(spec);
  return canonical_demand_query_tab(vtab, spec.n, prices, full_set(spec.n));
}

}  // namespace bfm
