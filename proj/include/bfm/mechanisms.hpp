#pragma once
// The procurement mechanisms, each a deterministic function of
// (instance, bids, randomness tape). Payments follow threshold rules, so
// truthfulness is testable per fixed tape with exact arithmetic.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfm/lp.hpp"
#include "bfm/optimize.hpp"
#include "bfm/rational.hpp"

namespace bfm {

// Every coin any mechanism flips: one sampling bit per agent, one bit choosing
// the mixture branch, one bit inside the additive subroutine.
struct RandomTape {
  AgentSet sample = 0;
  bool top = false;
  bool additive = false;
};

struct Outcome {
  AgentSet winners = 0;
  std::vector<Q> pay;  // size n, zero for non-winners
};

enum class Mech { LargestItem, Additive, SaSample, SaMain, XosSample, XosMain, SaMain2 };

inline const char* mech_name(Mech m) {
  switch (m) {
    case Mech::LargestItem: return "largest-item";
    case Mech::Additive: return "additive";
    case Mech::SaSample: return "sa-sample";
    case Mech::SaMain: return "sa-main";
    case Mech::XosSample: return "xos-sample";
    case Mech::XosMain: return "xos-main";
    case Mech::SaMain2: return "sa-main-2";
  }
  return "?";
}

inline std::optional<Mech> mech_from_name(const std::string& s) {
  for (Mech m : {Mech::LargestItem, Mech::Additive, Mech::SaSample, Mech::SaMain,
                 Mech::XosSample, Mech::XosMain, Mech::SaMain2})
    if (s == mech_name(m)) return m;
  return std::nullopt;
}

struct MechOptions {
  bool approx_sample_opt = false;  // estimate the sampled-side optimum with the
                                   // grid algorithm instead of exact enumeration
};

// Reusable scratch for one instance. Bid-independent caches survive misreport
// probes; bid-dependent ones are dropped by invalidate_bids().
struct MechContext {
  const Instance* inst = nullptr;
  std::vector<Q> vtab;
  Q theta;
  std::optional<bool> xos_cert;
  std::optional<std::vector<Q>> tilde;
  std::map<AgentSet, std::vector<Q>> witness;        // dual clauses on vtab
  std::map<AgentSet, std::vector<Q>> tilde_witness;  // dual clauses on tilde
  std::map<std::pair<AgentSet, int>, BudgetedSolution> sa_uniform;  // (eligible, k)
  // bid-dependent
  std::map<AgentSet, Q> sample_val;  // sampled-side grid value, costs = bids
  std::map<AgentSet, Q> opt_T, tilde_opt_T;
  std::optional<std::vector<Q>> bid_sums;

  void invalidate_bids() {
    sample_val.clear();
    opt_T.clear();
    tilde_opt_T.clear();
    bid_sums.reset();
  }
};

inline MechContext make_context(const Instance& inst) {
  MechContext c;
  c.inst = &inst;
  c.vtab = tabulate(inst.spec);
  c.theta = theta_factor(inst.n);
  return c;
}

namespace detail {
inline AgentSet eligible_set(const std::vector<Q>& bids, const Q& B, int n) {
  AgentSet e = 0;
  for (int i = 0; i < n; ++i)
    if (bids[i] >= 0 && bids[i] <= B) e |= bit(i);
  return e;
}

inline Outcome empty_outcome(int n) {
  Outcome o;
  o.pay.assign(n, Q(0));
  return o;
}

inline Outcome largest_item_tab(const std::vector<Q>& vt, int n, const std::vector<Q>& bids,
                                const Q& B) {
  Outcome out = empty_outcome(n);
  int best = -1;
  for (int i = 0; i < n; ++i) {
    if (bids[i] < 0 || bids[i] > B) continue;
    if (best < 0 || vt[bit(i)] > vt[bit(best)]) best = i;
  }
  if (best >= 0) {
    out.winners = bit(best);
    out.pay[best] = B;
  }
  return out;
}

// greedy proportional share winners: density order, keep the longest prefix in
// which every member's bid stays within its weight share of the budget
inline AgentSet ps_allocate(const std::vector<Q>& w, const std::vector<Q>& bids, const Q& B) {
  int n = static_cast<int>(w.size());
  std::vector<int> order;
  for (int i = 0; i < n; ++i)
    if (w[i] > 0 && bids[i] >= 0 && bids[i] <= B) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Q l = w[a] * bids[b], r = w[b] * bids[a];
    if (l != r) return l > r;
    return a < b;
  });
  AgentSet W = 0;
  Q wsum = 0;
  for (int i : order) {
    Q w2 = wsum + w[i];
    if (bids[i] * w2 <= w[i] * B) {
      W |= bit(i);
      wsum = w2;
    } else {
      break;  // validity is prefix-closed: growing the prefix only tightens it
    }
  }
  return W;
}

// Exact threshold of winner i: the supremum bid at which i still wins. The
// win predicate can only flip at density crossings with other agents, at i's
// own share bound for each possible prefix weight, or at B; scanning those
// candidates (and interval midpoints, for suprema that are not attained)
// top-down finds the boundary exactly.
inline Q ps_threshold(const std::vector<Q>& w, const std::vector<Q>& bids, const Q& B, int i) {
  int n = static_cast<int>(w.size());
  std::vector<Q> cand{B};
  std::vector<int> others;
  for (int j = 0; j < n; ++j) {
    if (j == i || w[j] <= 0 || bids[j] < 0 || bids[j] > B) continue;
    others.push_back(j);
    cand.push_back(w[i] * bids[j] / w[j]);
  }
  std::sort(others.begin(), others.end(), [&](int a, int b) {
    Q l = w[a] * bids[b], r = w[b] * bids[a];
    if (l != r) return l > r;
    return a < b;
  });
  Q pref = w[i];
  cand.push_back(w[i] * B / pref);
  for (int j : others) {
    pref += w[j];
    cand.push_back(w[i] * B / pref);
  }
  std::sort(cand.begin(), cand.end(), std::greater<Q>());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  auto wins = [&](const Q& b) {
    if (b > B || b < 0) return false;
    std::vector<Q> bb = bids;
    bb[i] = b;
    return contains(ps_allocate(w, bb, B), i);
  };
  for (std::size_t k = 0; k < cand.size(); ++k) {
    if (cand[k] <= 0) break;
    if (wins(cand[k])) return cand[k];
    Q below = k + 1 < cand.size() ? cand[k + 1] : Q(0);
    if (below < 0) below = 0;
    if (wins((cand[k] + below) / 2)) return cand[k];  // boundary at cand[k], open
  }
  return bids[i];  // unreachable for an actual winner
}
}  // namespace detail

// Budget-feasible subroutine for additive values: a coin picks either the
// largest-weight item (paid the whole budget) or the greedy proportional
// share with exact threshold payments.
inline Outcome additive_mechanism(const std::vector<Q>& weights, const std::vector<Q>& bids,
                                  const Q& B, bool selector) {
  int n = static_cast<int>(weights.size());
  if (static_cast<int>(bids.size()) != n) throw input_error("additive mechanism: bid count");
  for (const Q& x : weights)
    if (x < 0) throw input_error("additive mechanism: negative weight");
  Outcome out = detail::empty_outcome(n);
  if (!selector) {
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (bids[i] < 0 || bids[i] > B || weights[i] <= 0) continue;
      if (best < 0 || weights[i] > weights[best]) best = i;
    }
    if (best >= 0) {
      out.winners = bit(best);
      out.pay[best] = B;
    }
    return out;
  }
  AgentSet W = detail::ps_allocate(weights, bids, B);
  out.winners = W;
  for (AgentSet t = W; t; t &= t - 1) {
    int i = lowest_agent(t);
    out.pay[i] = detail::ps_threshold(weights, bids, B, i);
  }
  return out;
}

inline Outcome largest_item_mechanism(const Instance& inst, const std::vector<Q>& bids,
                                      MechContext& ctx) {
  return detail::largest_item_tab(ctx.vtab, inst.n, bids, inst.budget);
}

struct SaTrace {
  AgentSet T = 0, M = 0;
  Q sampled_value;
  int k = 0;  // accepted round; 0 = none
  Outcome out;
};

// Sample half the agents to learn the value scale, then post uniform prices
// B/k for shrinking k until the demanded bundle clears a theta fraction of the
// sampled value. Winners are paid the posted price.
inline SaTrace sa_random_sample_trace(const Instance& inst, const std::vector<Q>& bids,
                                      const RandomTape& tape, MechContext& ctx) {
  SaTrace tr;
  const Q& B = inst.budget;
  AgentSet eligible = detail::eligible_set(bids, B, inst.n);
  tr.T = tape.sample & eligible;
  tr.M = eligible & ~tr.T;
  tr.out = detail::empty_outcome(inst.n);
  auto it = ctx.sample_val.find(tr.T);
  if (it == ctx.sample_val.end())
    it = ctx.sample_val.emplace(tr.T,
            detail::sa_alg_max_tab(ctx.vtab, inst.n, tr.T, bids, B, {}).value).first;
  tr.sampled_value = it->second;
  int mm = set_size(tr.M);
  for (int k = 1; k <= mm; ++k) {
    Q bk = B / k;
    AgentSet E = 0;
    for (AgentSet t = tr.M; t; t &= t - 1)
      if (bids[lowest_agent(t)] <= bk) E |= bit(lowest_agent(t));
    auto key = std::make_pair(E, k);
    auto jt = ctx.sa_uniform.find(key);
    if (jt == ctx.sa_uniform.end()) {
      std::vector<Q> uniform(inst.n, bk);
      jt = ctx.sa_uniform.emplace(key,
              detail::sa_alg_max_tab(ctx.vtab, inst.n, E, uniform, B, {})).first;
    }
    if (jt->second.value >= ctx.theta * tr.sampled_value) {
      tr.k = k;
      tr.out.winners = jt->second.winners;
      for (AgentSet t = tr.out.winners; t; t &= t - 1) tr.out.pay[lowest_agent(t)] = bk;
      return tr;
    }
  }
  return tr;
}

inline Outcome sa_random_sample(const Instance& inst, const std::vector<Q>& bids,
                                const RandomTape& tape, MechContext& ctx) {
  return sa_random_sample_trace(inst, bids, tape, ctx).out;
}

inline Outcome sa_mechanism_main(const Instance& inst, const std::vector<Q>& bids,
                                 const RandomTape& tape, MechContext& ctx) {
  if (!tape.top) return largest_item_mechanism(inst, bids, ctx);
  return sa_random_sample(inst, bids, tape, ctx);
}

namespace detail {
inline const std::vector<Q>& ensure_tilde(MechContext& ctx) {
  if (!ctx.tilde) ctx.tilde = cover_value_table(ctx.vtab, ctx.inst->n);
  return *ctx.tilde;
}
inline const std::vector<Q>& bid_sums(MechContext& ctx, const std::vector<Q>& bids) {
  if (!ctx.bid_sums) ctx.bid_sums = subset_sums(bids);
  return *ctx.bid_sums;
}
}  // namespace detail

struct XosTrace {
  AgentSet T = 0, M = 0, S_star = 0;
  Q opt_T, t;
  std::vector<Q> clause;
  Outcome out;
};

// Sample to estimate the optimum, set the per-value price t, take the
// canonical surplus maximizer S* among the rest, and hand its supporting
// additive clause to the additive subroutine for winners and payments.
inline XosTrace xos_random_sample_trace(const Instance& inst, const std::vector<Q>& bids,
                                        const RandomTape& tape, MechContext& ctx,
                                        const MechOptions& opts = {}, bool use_tilde = false) {
  const Q& B = inst.budget;
  const std::vector<Q>& vt = use_tilde ? detail::ensure_tilde(ctx) : ctx.vtab;
  if (!use_tilde && inst.spec.kind != VKind::XosClauses) {
    if (!ctx.xos_cert) ctx.xos_cert = certify_xos_tab(ctx.vtab, inst.n);
    if (!*ctx.xos_cert)
      throw capability_error("xos mechanism: valuation is not XOS; run the cover-value "
                             "reduction instead");
  }
  XosTrace tr;
  tr.out = detail::empty_outcome(inst.n);
  AgentSet eligible = detail::eligible_set(bids, B, inst.n);
  tr.T = tape.sample & eligible;
  tr.M = eligible & ~tr.T;
  auto& om = use_tilde ? ctx.tilde_opt_T : ctx.opt_T;
  auto it = om.find(tr.T);
  if (it == om.end()) {
    Q o = opts.approx_sample_opt
              ? detail::sa_alg_max_tab(vt, inst.n, tr.T, bids, B, {}).value
              : detail::opt_exact_tab(vt, tr.T, detail::bid_sums(ctx, bids), B).value;
    it = om.emplace(tr.T, o).first;
  }
  tr.opt_T = it->second;
  tr.t = tr.opt_T / (8 * B);
  PriceVector prices(inst.n, Q(0));
  for (AgentSet m = tr.M; m; m &= m - 1) {
    int i = lowest_agent(m);
    prices[i] = tr.t * bids[i];
  }
  tr.S_star = canonical_demand_query_tab(vt, inst.n, prices, tr.M);
  if (!use_tilde && inst.spec.kind == VKind::XosClauses) {
    tr.clause = xos_clause_at(inst.spec, tr.S_star);
  } else {
    auto& wm = use_tilde ? ctx.tilde_witness : ctx.witness;
    auto jt = wm.find(tr.S_star);
    if (jt == wm.end())
      jt = wm.emplace(tr.S_star, dual_witness_tab(vt, inst.n, tr.S_star).y).first;
    tr.clause = jt->second;
  }
  std::vector<Q> w(inst.n, Q(0));
  for (AgentSet m = tr.S_star; m; m &= m - 1) {
    int i = lowest_agent(m);
    w[i] = tr.clause[i];
  }
  tr.out = additive_mechanism(w, bids, B, tape.additive);
  // Pay each winner the critical bid of the composed rule, not just the
  // additive subroutine's threshold: the win region is also bounded by the
  // bid at which the winner would drop out of the surplus maximizer, and
  // that cap is what keeps a losing agent from buying its way in below cost.
  if (tr.t > 0 && tr.out.winners != 0) {
    const std::vector<Q>& bsum = detail::bid_sums(ctx, bids);
    Q g = vt[tr.S_star] - tr.t * bsum[tr.S_star];  // maximal surplus
    for (AgentSet m = tr.out.winners; m; m &= m - 1) {
      int i = lowest_agent(m);
      AgentSet rest = tr.M & ~bit(i);
      Q l(0);  // best surplus over sets without i (empty set included)
      for (AgentSet s = rest; s; s = (s - 1) & rest) {
        Q surplus = vt[s] - tr.t * bsum[s];
        if (surplus > l) l = surplus;
      }
      Q cap = (g - l) / tr.t + bids[i];  // own-bid independent: g + t*b(i) and l are
      if (cap < tr.out.pay[i]) tr.out.pay[i] = cap;
    }
  }
  return tr;
}

inline Outcome xos_random_sample(const Instance& inst, const std::vector<Q>& bids,
                                 const RandomTape& tape, MechContext& ctx,
                                 const MechOptions& opts = {}) {
  return xos_random_sample_trace(inst, bids, tape, ctx, opts, false).out;
}

inline Outcome xos_mechanism_main(const Instance& inst, const std::vector<Q>& bids,
                                  const RandomTape& tape, MechContext& ctx,
                                  const MechOptions& opts = {}) {
  if (!tape.top) return largest_item_mechanism(inst, bids, ctx);
  return xos_random_sample(inst, bids, tape, ctx, opts);
}

// Gap reduction: run the XOS mixture against the cover-value table (always
// XOS), measuring results in the true valuation.
inline Outcome sa_mechanism_main_2(const Instance& inst, const std::vector<Q>& bids,
                                   const RandomTape& tape, MechContext& ctx,
                                   const MechOptions& opts = {}) {
  const std::vector<Q>& tl = detail::ensure_tilde(ctx);
  if (!tape.top) return detail::largest_item_tab(tl, inst.n, bids, inst.budget);
  return xos_random_sample_trace(inst, bids, tape, ctx, opts, true).out;
}

inline Outcome run_mechanism(Mech m, const Instance& inst, const std::vector<Q>& bids,
                             const RandomTape& tape, MechContext& ctx,
                             const MechOptions& opts = {}) {
  switch (m) {
    case Mech::LargestItem: return largest_item_mechanism(inst, bids, ctx);
    case Mech::Additive:
      if (inst.spec.kind != VKind::Additive)
        throw capability_error("additive mechanism needs an additive valuation");
      return additive_mechanism(inst.spec.weights, bids, inst.budget, tape.additive);
    case Mech::SaSample: return sa_random_sample(inst, bids, tape, ctx);
    case Mech::SaMain: return sa_mechanism_main(inst, bids, tape, ctx);
    case Mech::XosSample: return xos_random_sample(inst, bids, tape, ctx, opts);
    case Mech::XosMain: return xos_mechanism_main(inst, bids, tape, ctx, opts);
    case Mech::SaMain2: return sa_mechanism_main_2(inst, bids, tape, ctx, opts);
  }
  throw std::logic_error("unknown mechanism");
}

// no positive transfer, individual rationality, budget feasibility
inline std::optional<std::string> check_outcome(const Outcome& out, const std::vector<Q>& bids,
                                                const Q& B, int n) {
  if (static_cast<int>(out.pay.size()) != n) return "payment vector has wrong size";
  Q total = 0;
  for (int i = 0; i < n; ++i) {
    if (contains(out.winners, i)) {
      if (out.pay[i] < bids[i])
        return "winner " + std::to_string(i) + " paid below bid";
      total += out.pay[i];
    } else if (out.pay[i] != 0) {
      return "non-winner " + std::to_string(i) + " received a transfer";
    }
  }
  if (total > B) return "total payment exceeds the budget";
  return std::nullopt;
}

}  // namespace bfm
