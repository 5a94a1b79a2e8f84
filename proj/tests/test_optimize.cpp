#include <catch2/catch_amalgamated.hpp>

#include "bfm/generators.hpp"
#include "bfm/optimize.hpp"
#include "bfm/suites.hpp"
#include "support/oracles.hpp"

using bfm::AgentSet;
using bfm::Instance;
using bfm::Q;

TEST_CASE("instance validation", "[optimize]") {
  auto add = bfm::make_additive({Q(3), Q(4)});
  REQUIRE_NOTHROW(bfm::make_instance(add, {Q(2), Q(2)}, Q(2)));
  REQUIRE_THROWS_AS(bfm::make_instance(add, {Q(2), Q(3)}, Q(2)), bfm::input_error);  // c > B
  REQUIRE_THROWS_AS(bfm::make_instance(add, {Q(-1), Q(1)}, Q(2)), bfm::input_error);
  REQUIRE_THROWS_AS(bfm::make_instance(add, {Q(1)}, Q(2)), bfm::input_error);
  REQUIRE_THROWS_AS(bfm::make_instance(add, {Q(1), Q(1)}, Q(0)), bfm::input_error);
}

TEST_CASE("exact budgeted optimum", "[optimize]") {
  Instance inst = bfm::make_instance(bfm::make_additive({Q(3), Q(4)}), {Q(2), Q(2)}, Q(2));
  auto best = bfm::budgeted_opt_exact(inst);
  REQUIRE(best.winners == 0b10);
  REQUIRE(best.value == Q(4));

  SECTION("restricting the allowed set restricts the argmax") {
    auto r = bfm::budgeted_opt_exact(inst, inst.costs, 0b01);
    REQUIRE(r.winners == 0b01);
    REQUIRE(r.value == Q(3));
  }
}

TEST_CASE("optimum tie-breaking: value, then size, then lexicographic", "[optimize]") {
  SECTION("fewer agents win a value tie") {
    Instance inst = bfm::make_instance(bfm::make_table({Q(0), Q(2), Q(2), Q(2)}),
                                       {Q(1), Q(1)}, Q(2));
    auto best = bfm::budgeted_opt_exact(inst);
    REQUIRE(best.winners == 0b01);
    REQUIRE(best.value == Q(2));
  }
  SECTION("equal size falls back to the lowest differing agent") {
    std::vector<Q> t{Q(0), Q(0), Q(0), Q(2), Q(0), Q(2), Q(0), Q(2)};
    Instance inst = bfm::make_instance(bfm::make_table(t), {Q(1), Q(1), Q(1)}, Q(2));
    auto best = bfm::budgeted_opt_exact(inst);
    REQUIRE(best.winners == 0b011);
  }
}

TEST_CASE("exact optimum agrees with the include/exclude oracle", "[optimize]") {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      bfm::GenParams p;
      p.n = n;
      Instance inst = bfm::generate_instance("table", p, 7000 + seed * 13 + n);
      auto got = bfm::budgeted_opt_exact(inst);
      auto want = orc::brute_opt(bfm::tabulate(inst.spec), n, inst.costs, inst.budget);
      INFO(inst.id);
      REQUIRE(got.value == want.value);
      REQUIRE(got.winners == want.set);
    }
  }
}

TEST_CASE("additive optimum agrees with a knapsack sweep", "[optimize]") {
  for (int n = 3; n <= 6; ++n) {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      bfm::GenParams p;
      p.n = n;
      Instance inst = bfm::generate_instance("additive", p, 8100 + seed * 17 + n);
      // generated costs are 16ths of the budget, so scale to integers
      std::vector<long> ic(inst.n);
      for (int i = 0; i < inst.n; ++i) {
        Q scaled = inst.costs[i] * 16 / inst.budget;
        ic[i] = bfm::floor_q(scaled).convert_to<long>();
        REQUIRE(Q(ic[i]) == scaled);
      }
      Q dp = orc::knapsack_additive_opt(inst.spec.weights, ic, 16);
      REQUIRE(bfm::budgeted_opt_exact(inst).value == dp);
    }
  }
}

TEST_CASE("grid search worked example", "[optimize]") {
  // four unit items at unit cost, budget 2: every useful grid point buys the
  // two cheapest-by-order items
  Instance inst = bfm::unit4_instance();
  auto got = bfm::sa_alg_max(inst);
  REQUIRE(got.winners == 0b0011);
  REQUIRE(got.value == Q(2));
  REQUIRE(bfm::budgeted_opt_exact(inst).value == Q(2));
}

TEST_CASE("grid search stays within budget and within the allowed set", "[optimize]") {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      bfm::GenParams p;
      p.n = n;
      Instance inst = bfm::generate_instance("table", p, 8200 + seed * 29 + n);
      auto sol = bfm::sa_alg_max(inst);
      Q spent(0);
      for (int i = 0; i < n; ++i)
        if (bfm::contains(sol.winners, i)) spent += inst.costs[i];
      REQUIRE(spent <= inst.budget);
      REQUIRE(sol.value == bfm::value(inst.spec, sol.winners));
    }
  }
}

TEST_CASE("grid search approximation on monotone subadditive tables", "[optimize]") {
  bfm::SaOptions strict;
  strict.check_quarter = true;  // the acceptance invariant must hold here
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      bfm::GenParams p;
      p.n = n;
      Instance inst = bfm::generate_instance("table", p, 8300 + seed * 31 + n);
      Q opt = bfm::budgeted_opt_exact(inst).value;
      INFO(inst.id);
      Q coarse = bfm::sa_alg_max(inst, inst.costs, strict).value;
      REQUIRE(8 * coarse >= opt);
      for (Q eps : {Q(1, 2), Q(1, 4)}) {
        Q fine = bfm::sa_alg_max_fine(inst, inst.costs, eps, strict).value;
        REQUIRE((4 + 4 * eps) * fine >= opt);  // largest grid point <= opt is accepted
      }
    }
  }
}

TEST_CASE("grid search degenerate inputs", "[optimize]") {
  Instance zero = bfm::make_instance(bfm::make_additive({Q(0), Q(0)}), {Q(1), Q(1)}, Q(1));
  REQUIRE(bfm::sa_alg_max(zero).winners == 0);
  REQUIRE(bfm::sa_alg_max(zero).value == Q(0));
  Instance one = bfm::unit4_instance();
  REQUIRE_THROWS_AS(bfm::sa_alg_max_fine(one, one.costs, Q(0)), bfm::input_error);
  REQUIRE_THROWS_AS(bfm::sa_alg_max_fine(one, one.costs, Q(-1)), bfm::input_error);
}
