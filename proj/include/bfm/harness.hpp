#pragma once
// Verification instruments: exact expectations over the full tape space,
// misreport probes with exact utility comparison, payment bisection,
// random-bipartition checks, and per-instance approximation reports.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bfm/mechanisms.hpp"

namespace bfm {

struct ProbeGrid {
  std::vector<Q> multipliers;  // applied to the agent's true cost; includes 1

  // 21 points from 1/10 to 10, denser around 1, true cost included
  static ProbeGrid standard() {
    ProbeGrid g;
    int num[] = {1, 1, 1, 1, 1, 1, 1, 2, 3, 9, 1, 10, 4, 3, 2, 3, 4, 5, 6, 8, 10};
    int den[] = {10, 8, 6, 5, 4, 3, 2, 3, 4, 10, 1, 9, 3, 2, 1, 1, 1, 1, 1, 1, 1};
    for (int i = 0; i < 21; ++i) g.multipliers.emplace_back(num[i], den[i]);
    return g;
  }
};

inline void for_each_tape(int n, const std::function<void(const RandomTape&)>& fn) {
  for (AgentSet s = 0; s < (AgentSet{1} << n); ++s)
    for (int top = 0; top < 2; ++top)
      for (int add = 0; add < 2; ++add) fn(RandomTape{s, top == 1, add == 1});
}

inline long tape_count(int n) { return 4L << n; }

// Exact expectation of v(winners) under uniform tapes; winners are always
// valued in the instance's true valuation.
inline Q expected_value_exact(Mech m, const Instance& inst, const std::vector<Q>& bids,
                              MechContext& ctx, const MechOptions& opts = {}) {
  if (inst.n > 14) throw capability_error("exact expectation: supports up to 14 agents");
  Q sum = 0;
  for_each_tape(inst.n, [&](const RandomTape& tape) {
    Outcome out = run_mechanism(m, inst, bids, tape, ctx, opts);
    sum += ctx.vtab[out.winners];
  });
  return sum / tape_count(inst.n);
}

// Monte Carlo estimate; tape bits come straight from the engine words so the
// stream is reproducible from the seed alone.
inline Q expected_value_mc(Mech m, const Instance& inst, const std::vector<Q>& bids,
                           MechContext& ctx, long trials, std::uint64_t seed,
                           const MechOptions& opts = {}) {
  std::mt19937_64 rng(seed);
  Q sum = 0;
  for (long t = 0; t < trials; ++t) {
    std::uint64_t word = rng();
    RandomTape tape;
    tape.sample = static_cast<AgentSet>(word) & full_set(inst.n);
    tape.top = (word >> inst.n) & 1;
    tape.additive = (word >> (inst.n + 1)) & 1;
    Outcome out = run_mechanism(m, inst, bids, tape, ctx, opts);
    sum += ctx.vtab[out.winners];
  }
  return sum / trials;
}

struct Violation {
  Mech mech;
  std::string instance_id;
  std::string kind;  // truthfulness | monotonicity | invariant
  int agent = -1;
  RandomTape tape;
  Q misreport;
  Q true_utility, deviation_utility;
  std::string detail;
};

struct ProbeStats {
  long runs = 0;            // mechanism executions
  long comparisons = 0;     // utility comparisons
  long invariant_checks = 0;
};

namespace detail {
inline Q agent_utility(const Outcome& out, int i, const Q& true_cost) {
  if (!contains(out.winners, i)) return Q(0);
  return out.pay[i] - true_cost;
}
}  // namespace detail

// For every agent, tape, and misreport bid: utility(truth) >= utility(lie),
// exactly. Also checks outcome invariants on every run and allocation
// monotonicity (a winner lowering the bid keeps winning). Bids other than the
// probed agent's stay at true costs.
inline std::vector<Violation> truthfulness_probe(Mech m, const Instance& inst,
                                                 const ProbeGrid& grid, MechContext& ctx,
                                                 ProbeStats* stats = nullptr,
                                                 const MechOptions& opts = {}) {
  std::vector<Violation> out;
  const int n = inst.n;
  const Q& B = inst.budget;
  long tapes = tape_count(n);

  auto note_invariant = [&](const Outcome& o, const std::vector<Q>& bids, const RandomTape& tape,
                            int agent, const Q& rep) {
    if (stats) ++stats->invariant_checks;
    if (auto bad = check_outcome(o, bids, B, n)) {
      Violation v;
      v.mech = m;
      v.instance_id = inst.id;
      v.kind = "invariant";
      v.agent = agent;
      v.tape = tape;
      v.misreport = rep;
      v.detail = *bad;
      out.push_back(std::move(v));
    }
  };

  // baseline pass at true costs
  std::vector<std::vector<Q>> base_util(static_cast<std::size_t>(tapes),
                                        std::vector<Q>(n));
  std::vector<AgentSet> base_win(static_cast<std::size_t>(tapes));
  ctx.invalidate_bids();
  {
    long idx = 0;
    for_each_tape(n, [&](const RandomTape& tape) {
      Outcome o = run_mechanism(m, inst, inst.costs, tape, ctx, opts);
      if (stats) ++stats->runs;
      note_invariant(o, inst.costs, tape, -1, Q(0));
      base_win[idx] = o.winners;
      for (int i = 0; i < n; ++i) base_util[idx][i] = detail::agent_utility(o, i, inst.costs[i]);
      ++idx;
    });
  }

  for (int i = 0; i < n; ++i) {
    // grid multiples of the true cost plus the posted-price boundaries B/k
    std::vector<Q> reports;
    for (const Q& mult : grid.multipliers) reports.push_back(mult * inst.costs[i]);
    for (int k = 1; k <= n; ++k) reports.push_back(B / k);
    std::sort(reports.begin(), reports.end());
    reports.erase(std::unique(reports.begin(), reports.end()), reports.end());

    std::vector<Q> bids = inst.costs;
    for (const Q& rep : reports) {
      if (rep == inst.costs[i]) continue;
      bids[i] = rep;
      ctx.invalidate_bids();
      long idx = 0;
      for_each_tape(n, [&](const RandomTape& tape) {
        Outcome o = run_mechanism(m, inst, bids, tape, ctx, opts);
        if (stats) ++stats->runs;
        note_invariant(o, bids, tape, i, rep);
        Q util = detail::agent_utility(o, i, inst.costs[i]);
        if (stats) ++stats->comparisons;
        if (util > base_util[idx][i]) {
          Violation v;
          v.mech = m;
          v.instance_id = inst.id;
          v.kind = "truthfulness";
          v.agent = i;
          v.tape = tape;
          v.misreport = rep;
          v.true_utility = base_util[idx][i];
          v.deviation_utility = util;
          out.push_back(std::move(v));
        }
        if (rep < inst.costs[i] && contains(base_win[idx], i) && !contains(o.winners, i)) {
          Violation v;
          v.mech = m;
          v.instance_id = inst.id;
          v.kind = "monotonicity";
          v.agent = i;
          v.tape = tape;
          v.misreport = rep;
          v.true_utility = base_util[idx][i];
          v.deviation_utility = util;
          v.detail = "winner lost by lowering the bid";
          out.push_back(std::move(v));
        }
        ++idx;
      });
    }
    ctx.invalidate_bids();
  }
  return out;
}

// Bisect the win/lose boundary of `agent`'s bid on [current bid, B]; posted
// prices are recovered exactly by the callers' direct checks, this gives the
// tol-wide bracket midpoint.
inline Q threshold_by_bisection(Mech m, const Instance& inst, std::vector<Q> bids,
                                const RandomTape& tape, int agent, const Q& tol,
                                MechContext& ctx, const MechOptions& opts = {}) {
  auto wins = [&](const Q& b) {
    bids[agent] = b;
    ctx.invalidate_bids();
    Outcome o = run_mechanism(m, inst, bids, tape, ctx, opts);
    return contains(o.winners, agent);
  };
  Q lo = bids[agent];
  if (!wins(lo)) throw input_error("threshold bisection: agent does not win at the given bid");
  if (wins(inst.budget)) {
    ctx.invalidate_bids();
    return inst.budget;
  }
  Q hi = inst.budget;
  while (hi - lo > tol) {
    Q mid = (lo + hi) / 2;
    if (wins(mid))
      lo = mid;
    else
      hi = mid;
  }
  ctx.invalidate_bids();
  return (lo + hi) / 2;
}

namespace detail {
inline void partition_precondition(const std::vector<Q>& vtab, AgentSet S, int k) {
  if (S == 0) throw input_error("partition check: set must be nonempty");
  if (k < 1) throw input_error("partition check: k must be >= 1");
  for (AgentSet t = S; t; t &= t - 1) {
    int i = lowest_agent(t);
    if (vtab[S] < k * vtab[bit(i)])
      throw input_error("partition check: v(S) < k*v({" + std::to_string(i) +
                        "}) violates the precondition");
  }
}
inline bool partition_good(const std::vector<Q>& vtab, AgentSet S, AgentSet T1, int k) {
  AgentSet T2 = S & ~T1;
  Q bound = Q(k - 1) * vtab[S];
  return 4 * k * vtab[T1] >= bound && 4 * k * vtab[T2] >= bound;
}
}  // namespace detail

// Exact probability (over all 2^|S| bipartitions) that both halves keep at
// least a (k-1)/4k fraction of v(S).
inline Q partition_check_exact(const ValuationSpec& spec, AgentSet S, int k) {
  std::vector<Q> vtab = tabulate(spec);
  detail::partition_precondition(vtab, S, k);
  long good = 0, total = 0;
  AgentSet sub = S;
  while (true) {
    ++total;
    if (detail::partition_good(vtab, S, sub, k)) ++good;
    if (sub == 0) break;
    sub = (sub - 1) & S;
  }
  return Q(good, total);
}

// Sampled frequency of the same event over `trials` uniform bipartitions.
inline Q partition_check(const ValuationSpec& spec, AgentSet S, int k, long trials,
                         std::uint64_t seed) {
  std::vector<Q> vtab = tabulate(spec);
  detail::partition_precondition(vtab, S, k);
  if (trials <= 0) throw input_error("partition check: trials must be positive");
  std::mt19937_64 rng(seed);
  long good = 0;
  for (long t = 0; t < trials; ++t) {
    AgentSet T1 = static_cast<AgentSet>(rng()) & S;
    if (detail::partition_good(vtab, S, T1, k)) ++good;
  }
  return Q(good, trials);
}

struct ExperimentReport {
  std::string instance_id;
  Mech mech;
  int n = 0;
  Q opt;
  Q expected;
  std::optional<Q> ratio;  // opt / expected; absent when expected = 0 < opt
  long tapes = 0;
  long invariant_violations = 0;
  std::uint64_t seed = 0;
};

inline ExperimentReport approximation_report(Mech m, const Instance& inst, MechContext& ctx,
                                             std::uint64_t seed = 0,
                                             const MechOptions& opts = {}) {
  ExperimentReport rep;
  rep.instance_id = inst.id;
  rep.mech = m;
  rep.n = inst.n;
  rep.seed = seed;
  rep.opt = budgeted_opt_exact(inst).value;
  rep.tapes = tape_count(inst.n);
  ctx.invalidate_bids();
  Q sum = 0;
  for_each_tape(inst.n, [&](const RandomTape& tape) {
    Outcome out = run_mechanism(m, inst, inst.costs, tape, ctx, opts);
    if (check_outcome(out, inst.costs, inst.budget, inst.n)) ++rep.invariant_violations;
    sum += ctx.vtab[out.winners];
  });
  rep.expected = sum / rep.tapes;
  if (rep.expected > 0)
    rep.ratio = rep.opt / rep.expected;
  else if (rep.opt == 0)
    rep.ratio = Q(1);
  return rep;
}

}  // namespace bfm
