#pragma once
// Named verification suites. Everything here is pinned: fixed seeds, fixed
// sizes, fixed mechanism lists, so suite contents never drift between runs.

#include <string>
#include <vector>

#include "bfm/generators.hpp"
#include "bfm/mechanisms.hpp"

namespace bfm {

struct SuiteEntry {
  Instance inst;
  std::vector<Mech> mechs;
};

// --- canonical fixed instances ----------------------------------------------

// symmetric 3-agent table: v = 1 on proper nonempty sets, 2 on the whole set;
// its fractional cover value at the top is 3/2, so the gap there is 4/3
inline Instance sym3_instance() {
  std::vector<Q> t(8, Q(1));
  t[0] = 0;
  t[7] = 2;
  return make_instance(make_table(std::move(t)), {Q(1, 4), Q(1, 4), Q(1, 4)}, Q(1), "sym3");
}

// four unit-value items at cost 1 under budget 2
inline Instance unit4_instance() {
  return make_instance(make_additive({Q(1), Q(1), Q(1), Q(1)}), {Q(1), Q(1), Q(1), Q(1)},
                       Q(2), "unit4");
}

inline Instance triangle_cut_instance() {
  return make_instance(make_cut(3, {{0, 1, Q(1)}, {1, 2, Q(1)}, {0, 2, Q(1)}}),
                       {Q(1, 2), Q(1, 2), Q(1, 2)}, Q(1), "cut-triangle");
}

inline Instance closed_instance(const Instance& raw, const std::string& id) {
  Instance inst;
  inst.n = raw.n;
  inst.budget = raw.budget;
  inst.costs = raw.costs;
  inst.spec = monotone_closure(raw.spec);
  inst.id = id;
  inst.validate();
  return inst;
}

// --- exhaustive family --------------------------------------------------------

// All monotone subadditive tables over the integer grid {0..vmax}, generated
// in popcount order with floor/ceiling pruning. fn receives each finished
// table.
template <typename Fn>
inline void enumerate_monotone_subadditive_tables(int n, int vmax, Fn&& fn) {
  if (n < 1 || n > 5) throw input_error("table enumeration: n must be in 1..5");
  std::vector<AgentSet> order;
  for (AgentSet s = 1; s < (AgentSet{1} << n); ++s) order.push_back(s);
  std::sort(order.begin(), order.end(), [](AgentSet a, AgentSet b) {
    int pa = set_size(a), pb = set_size(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  std::vector<Q> t(std::size_t{1} << n, Q(0));
  auto assign = [&](auto&& self, std::size_t idx) -> void {
    if (idx == order.size()) {
      fn(const_cast<const std::vector<Q>&>(t));
      return;
    }
    AgentSet s = order[idx];
    long lo = 0, hi = vmax;
    for (AgentSet r = s; r; r &= r - 1) {
      long sub = t[s ^ bit(lowest_agent(r))].convert_to<long>();
      if (sub > lo) lo = sub;
    }
    if (set_size(s) > 1) {
      AgentSet low = s & (~s + 1);
      for (AgentSet u = (s - 1) & s; u; u = (u - 1) & s) {
        if (!(u & low)) continue;
        long split = (t[u] + t[s ^ u]).convert_to<long>();
        if (split < hi) hi = split;
      }
    }
    for (long v = lo; v <= hi; ++v) {
      t[s] = v;
      self(self, idx + 1);
    }
    t[s] = 0;
  };
  assign(assign, 0);
}

// --- mechanism applicability ---------------------------------------------------

// Which mechanisms run on a given valuation class. The demand-query family
// needs nothing special; the surplus-pricing family needs the valuation to
// have exact fractional covers (clause lists and the classes below do, by
// construction); the additive subroutine needs additive weights.
inline std::vector<Mech> applicable_mechs(const Instance& inst) {
  std::vector<Mech> out{Mech::LargestItem, Mech::SaSample, Mech::SaMain, Mech::SaMain2};
  bool clauses_exact = false;
  switch (inst.spec.kind) {
    case VKind::Additive:
      out.push_back(Mech::Additive);
      clauses_exact = true;
      break;
    case VKind::XosClauses:
    case VKind::Matching:   // clauses: one per matching
    case VKind::Clique:     // clauses: one per clique
      clauses_exact = true;
      break;
    case VKind::CostSaving:
    case VKind::Table:
    case VKind::Cut:
      break;  // decided by the caller (certification or construction)
  }
  if (clauses_exact) {
    out.push_back(Mech::XosSample);
    out.push_back(Mech::XosMain);
  }
  return out;
}

inline std::vector<Mech> with_xos(std::vector<Mech> mechs) {
  for (Mech m : {Mech::XosSample, Mech::XosMain})
    if (std::find(mechs.begin(), mechs.end(), m) == mechs.end()) mechs.push_back(m);
  return mechs;
}

// --- named suites ---------------------------------------------------------------

namespace detail {
inline void add(std::vector<SuiteEntry>& v, Instance inst, std::vector<Mech> mechs) {
  v.push_back(SuiteEntry{std::move(inst), std::move(mechs)});
}
inline Instance gen(const std::string& kind, int n, std::uint64_t seed, int m = 3,
                    int vmax = 4) {
  GenParams p;
  p.n = n;
  p.m = m;
  p.vmax = vmax;
  return generate_instance(kind, p, seed);
}
}  // namespace detail

// small, fast release gate: one instance per valuation class
inline std::vector<SuiteEntry> suite_core() {
  std::vector<SuiteEntry> v;
  detail::add(v, sym3_instance(), applicable_mechs(sym3_instance()));
  detail::add(v, unit4_instance(), applicable_mechs(unit4_instance()));
  detail::add(v, triangle_cut_instance(), applicable_mechs(triangle_cut_instance()));
  detail::add(v, closed_instance(triangle_cut_instance(), "cut-triangle-closed"),
              applicable_mechs(triangle_cut_instance()));
  detail::add(v, detail::gen("xos", 3, 11), applicable_mechs(detail::gen("xos", 3, 11)));
  detail::add(v, detail::gen("matching", 3, 12), applicable_mechs(detail::gen("matching", 3, 12)));
  detail::add(v, detail::gen("supermodular-cost", 3, 13),
              with_xos(applicable_mechs(detail::gen("supermodular-cost", 3, 13))));
  return v;
}

// misreport-probe coverage: every valuation class and every mechanism, n <= 6
inline std::vector<SuiteEntry> suite_truthfulness() {
  std::vector<SuiteEntry> v = suite_core();
  for (int n = 2; n <= 6; ++n) {
    Instance a = detail::gen("additive", n, 100 + n);
    detail::add(v, a, applicable_mechs(a));
    Instance x = detail::gen("xos", n, 200 + n, std::min(4, n));
    detail::add(v, x, applicable_mechs(x));
  }
  for (int n = 2; n <= 5; ++n) {
    Instance t = detail::gen("table", n, 300 + n);
    detail::add(v, t, applicable_mechs(t));
  }
  for (int n = 3; n <= 5; ++n) {
    Instance mg = detail::gen("matching", n, 400 + n);
    detail::add(v, mg, applicable_mechs(mg));
    Instance cq = detail::gen("clique", n, 500 + n);
    detail::add(v, cq, applicable_mechs(cq));
    Instance sc = detail::gen("supermodular-cost", n, 600 + n);
    detail::add(v, sc, with_xos(applicable_mechs(sc)));
    Instance ct = detail::gen("cut", n, 700 + n);
    detail::add(v, ct, applicable_mechs(ct));
  }
  Instance u6 = detail::gen("unit", 6, 800);
  detail::add(v, u6, applicable_mechs(u6));
  return v;
}

// exhaustive small additive instances (budget 2, integer grids) plus seeded
// larger ones; zero weights and zero costs included on purpose
inline std::vector<SuiteEntry> suite_additive() {
  std::vector<SuiteEntry> v;
  const Q B(2);
  for (int n = 1; n <= 3; ++n) {
    long wspan = 1;
    for (int i = 0; i < n; ++i) wspan *= 4;  // weights in {0..3}
    long cspan = 1;
    for (int i = 0; i < n; ++i) cspan *= 3;  // costs in {0,1,2}
    for (long wi = 0; wi < wspan; ++wi) {
      std::vector<Q> w(n);
      long ww = wi;
      for (int i = 0; i < n; ++i) {
        w[i] = ww % 4;
        ww /= 4;
      }
      for (long ci = 0; ci < cspan; ++ci) {
        std::vector<Q> c(n);
        long cc = ci;
        for (int i = 0; i < n; ++i) {
          c[i] = cc % 3;
          cc /= 3;
        }
        std::string id = "add-n" + std::to_string(n) + "-w" + std::to_string(wi) + "-c" +
                         std::to_string(ci);
        detail::add(v, make_instance(make_additive(w), c, B, id), {Mech::Additive});
      }
    }
  }
  for (int n = 4; n <= 6; ++n)
    for (int s = 0; s < 100; ++s)
      detail::add(v, detail::gen("additive", n, 9000 + 100 * n + s), {Mech::Additive});
  return v;
}

// clause-list instances up to n = 8 for exact-expectation ratio measurement
inline std::vector<SuiteEntry> suite_xos() {
  std::vector<SuiteEntry> v;
  for (int n = 2; n <= 8; ++n)
    for (int m = 1; m <= 4; ++m) {
      Instance x = detail::gen("xos", n, 1000 + 10 * n + m, m);
      detail::add(v, x, {Mech::XosSample, Mech::XosMain});
    }
  return v;
}

// instances with integrality gap, plus certified gap-one tables for the
// equivalence check between the reduction and the direct XOS mechanism
inline std::vector<SuiteEntry> suite_gap() {
  std::vector<SuiteEntry> v;
  detail::add(v, sym3_instance(), {Mech::SaMain2});
  for (int n = 3; n <= 5; ++n) {
    Instance t = detail::gen("table", n, 2000 + n);
    detail::add(v, t, {Mech::SaMain2});
  }
  detail::add(v, closed_instance(triangle_cut_instance(), "cut-triangle-closed"),
              {Mech::SaMain2});
  return v;
}

// cut instances raw and closed, for the extension checks
inline std::vector<SuiteEntry> suite_extensions() {
  std::vector<SuiteEntry> v;
  detail::add(v, triangle_cut_instance(), applicable_mechs(triangle_cut_instance()));
  for (int n = 3; n <= 5; ++n) {
    Instance ct = detail::gen("cut", n, 3000 + n);
    detail::add(v, ct, applicable_mechs(ct));
    detail::add(v, closed_instance(ct, ct.id + "-closed"), applicable_mechs(ct));
  }
  return v;
}

inline std::vector<std::string> suite_names() {
  return {"core", "truthfulness", "additive", "xos", "gap", "extensions"};
}

inline std::vector<SuiteEntry> suite(const std::string& name) {
  if (name == "core") return suite_core();
  if (name == "truthfulness") return suite_truthfulness();
  if (name == "additive") return suite_additive();
  if (name == "xos") return suite_xos();
  if (name == "gap") return suite_gap();
  if (name == "extensions") return suite_extensions();
  throw input_error("unknown suite '" + name + "'");
}

// the seeded random side of the grid-algorithm ratio family
inline std::vector<Instance> sa_ratio_instances() {
  std::vector<Instance> v;
  const char* kinds[] = {"table", "xos", "additive", "matching", "clique"};
  int sizes[] = {6, 8, 8, 6, 6};
  for (int i = 0; i < 1000; ++i) {
    int ki = i % 5;
    int n = 2 + static_cast<int>((i / 5) % (sizes[ki] - 1));
    v.push_back(detail::gen(kinds[ki], n, 4000 + i));
  }
  return v;
}

}  // namespace bfm
