#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "bfm/harness.hpp"
#include "bfm/suites.hpp"

using bfm::AgentSet;
using bfm::Instance;
using bfm::Mech;
using bfm::MechContext;
using bfm::Outcome;
using bfm::ProbeGrid;
using bfm::ProbeStats;
using bfm::Q;
using bfm::RandomTape;

TEST_CASE("probe grid and tape enumeration basics", "[harness]") {
  ProbeGrid grid = ProbeGrid::standard();
  REQUIRE(grid.multipliers.size() == 21);
  // strictly increasing, spans 1/10..10, and includes the truthful point
  for (std::size_t i = 1; i < grid.multipliers.size(); ++i)
    REQUIRE(grid.multipliers[i - 1] < grid.multipliers[i]);
  REQUIRE(grid.multipliers.front() == Q(1, 10));
  REQUIRE(grid.multipliers.back() == Q(10));
  REQUIRE(std::count(grid.multipliers.begin(), grid.multipliers.end(), Q(1)) == 1);

  REQUIRE(bfm::tape_count(0) == 4);
  REQUIRE(bfm::tape_count(3) == 32);

  std::set<long> seen;
  bfm::for_each_tape(3, [&](const RandomTape& t) {
    REQUIRE((t.sample & ~bfm::full_set(3)) == 0);
    seen.insert(long(t.sample) | (long(t.top) << 8) | (long(t.additive) << 9));
  });
  REQUIRE(seen.size() == 32);
}

TEST_CASE("exact expectation rejects more than 14 agents", "[harness]") {
  std::vector<Q> w(15, Q(1)), c(15, Q(1));
  Instance inst = bfm::make_instance(bfm::make_additive(w), c, Q(1));
  MechContext ctx = bfm::make_context(inst);
  REQUIRE_THROWS_AS(bfm::expected_value_exact(Mech::LargestItem, inst, inst.costs, ctx),
                    bfm::capability_error);
}

TEST_CASE("monte carlo expectation is seed-reproducible and close to exact", "[harness]") {
  Instance inst = bfm::unit4_instance();
  MechContext ctx = bfm::make_context(inst);

  Q exact = bfm::expected_value_exact(Mech::SaMain, inst, inst.costs, ctx);
  REQUIRE(exact == Q(31, 32));

  Q mc1 = bfm::expected_value_mc(Mech::SaMain, inst, inst.costs, ctx, 10000, 777);
  Q mc2 = bfm::expected_value_mc(Mech::SaMain, inst, inst.costs, ctx, 10000, 777);
  REQUIRE(mc1 == mc2);  // same seed, bitwise-identical stream
  Q err = mc1 > exact ? mc1 - exact : exact - mc1;
  REQUIRE(err <= Q(1, 20));

  Q add = bfm::expected_value_mc(Mech::Additive, inst, inst.costs, ctx, 10000, 4242);
  Q aerr = add > Q(3, 2) ? add - Q(3, 2) : Q(3, 2) - add;
  REQUIRE(aerr <= Q(1, 20));
}

TEST_CASE("truthfulness probe finds no violations on the unit fixture", "[harness]") {
  Instance inst = bfm::unit4_instance();
  ProbeGrid grid = ProbeGrid::standard();
  for (Mech m : {Mech::LargestItem, Mech::Additive, Mech::SaMain}) {
    MechContext ctx = bfm::make_context(inst);
    ProbeStats st;
    auto bad = bfm::truthfulness_probe(m, inst, grid, ctx, &st);
    INFO(bfm::mech_name(m));
    REQUIRE(bad.empty());
    REQUIRE(st.runs > 0);
    REQUIRE(st.comparisons > 0);
    REQUIRE(st.invariant_checks == st.runs);  // every run is invariant-checked
    REQUIRE(st.runs == st.comparisons + bfm::tape_count(inst.n));  // baseline pass
  }
}

TEST_CASE("bid threshold bisection", "[harness]") {
  Instance inst = bfm::unit4_instance();
  MechContext ctx = bfm::make_context(inst);
  RandomTape tape;

  SECTION("agent that never wins is rejected") {
    // value ties under the largest-item rule go to agent 0
    REQUIRE_THROWS_AS(bfm::threshold_by_bisection(Mech::LargestItem, inst, inst.costs, tape, 1,
                                                  Q(1, 1024), ctx),
                      bfm::input_error);
  }

  SECTION("an agent that wins at the budget gets the exact budget back") {
    Q thr = bfm::threshold_by_bisection(Mech::LargestItem, inst, inst.costs, tape, 0,
                                        Q(1, 1024), ctx);
    REQUIRE(thr == inst.budget);
  }

  SECTION("proportional-share payment matches the bracketed boundary") {
    tape.additive = true;
    Outcome out = bfm::run_mechanism(Mech::Additive, inst, inst.costs, tape, ctx);
    REQUIRE(bfm::contains(out.winners, 0));
    Q tol(1, 1 << 20);
    Q thr = bfm::threshold_by_bisection(Mech::Additive, inst, inst.costs, tape, 0, tol, ctx);
    REQUIRE(thr >= out.pay[0]);
    REQUIRE(thr - out.pay[0] <= tol);
  }
}

TEST_CASE("partition frequency checks", "[harness]") {
  Instance unit = bfm::unit4_instance();
  AgentSet all4 = bfm::full_set(4);

  SECTION("four unit items split at k=4 succeed with probability 7/8") {
    REQUIRE(bfm::partition_check_exact(unit.spec, all4, 4) == Q(7, 8));
  }

  SECTION("k=1 makes the bound vacuous") {
    REQUIRE(bfm::partition_check_exact(unit.spec, all4, 1) == Q(1));
  }

  SECTION("two-clause fixture at k=3") {
    auto xos = bfm::make_xos({{Q(2), Q(2), Q(1), Q(1)}, {Q(1), Q(1), Q(2), Q(2)}});
    REQUIRE(bfm::partition_check_exact(xos, all4, 3) == Q(7, 8));
  }

  SECTION("sampled frequency is reproducible and close to exact") {
    Q f1 = bfm::partition_check(unit.spec, all4, 4, 4000, 99);
    Q f2 = bfm::partition_check(unit.spec, all4, 4, 4000, 99);
    REQUIRE(f1 == f2);
    Q err = f1 > Q(7, 8) ? f1 - Q(7, 8) : Q(7, 8) - f1;
    REQUIRE(err <= Q(1, 20));
    REQUIRE_THROWS_AS(bfm::partition_check(unit.spec, all4, 4, 0, 99), bfm::input_error);
    REQUIRE_THROWS_AS(bfm::partition_check(unit.spec, all4, 4, -5, 99), bfm::input_error);
  }

  SECTION("precondition violations are rejected") {
    Instance sym = bfm::sym3_instance();
    // v(A) = 2 < 3 * v({i}) = 3
    REQUIRE_THROWS_AS(bfm::partition_check_exact(sym.spec, bfm::full_set(3), 3),
                      bfm::input_error);
    REQUIRE_THROWS_AS(bfm::partition_check_exact(unit.spec, 0, 4), bfm::input_error);
    REQUIRE_THROWS_AS(bfm::partition_check_exact(unit.spec, all4, 0), bfm::input_error);
  }
}

TEST_CASE("approximation report fields", "[harness]") {
  SECTION("unit fixture under the subadditive main mechanism") {
    Instance inst = bfm::unit4_instance();
    MechContext ctx = bfm::make_context(inst);
    auto rep = bfm::approximation_report(Mech::SaMain, inst, ctx, 7);
    REQUIRE(rep.instance_id == "unit4");
    REQUIRE(rep.mech == Mech::SaMain);
    REQUIRE(rep.n == 4);
    REQUIRE(rep.opt == Q(2));
    REQUIRE(rep.expected == Q(31, 32));
    REQUIRE(rep.ratio.has_value());
    REQUIRE(*rep.ratio == Q(64, 31));
    REQUIRE(rep.tapes == 64);
    REQUIRE(rep.invariant_violations == 0);
    REQUIRE(rep.seed == 7);
  }

  SECTION("zero optimum reports ratio one") {
    Instance z = bfm::make_instance(bfm::make_additive({Q(0), Q(0)}), {Q(1), Q(1)}, Q(1));
    MechContext ctx = bfm::make_context(z);
    auto rep = bfm::approximation_report(Mech::LargestItem, z, ctx);
    REQUIRE(rep.opt == 0);
    REQUIRE(rep.expected == 0);
    REQUIRE(rep.ratio.has_value());
    REQUIRE(*rep.ratio == Q(1));
  }

  SECTION("zero expectation below a positive optimum leaves the ratio empty") {
    // singles are worthless, the pair is worth 1; the largest-item rule
    // always buys a single
    Instance p = bfm::make_instance(bfm::make_table({Q(0), Q(0), Q(0), Q(1)}),
                                    {Q(1, 2), Q(1, 2)}, Q(1));
    MechContext ctx = bfm::make_context(p);
    auto rep = bfm::approximation_report(Mech::LargestItem, p, ctx);
    REQUIRE(rep.opt == Q(1));
    REQUIRE(rep.expected == 0);
    REQUIRE_FALSE(rep.ratio.has_value());
  }
}
