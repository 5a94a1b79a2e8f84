#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "bfm/lp.hpp"
#include "support/oracles.hpp"

using bfm::AgentSet;
using bfm::Q;
using bfm::ValuationSpec;

namespace {

ValuationSpec sym3() {
  return bfm::make_table({Q(0), Q(1), Q(1), Q(1), Q(1), Q(1), Q(1), Q(2)});
}

void require_certificates(const ValuationSpec& spec, AgentSet S) {
  std::vector<Q> vtab = bfm::tabulate(spec);
  auto [value, cover] = bfm::fractional_cover_value(spec, S);
  bfm::DualWitness w = bfm::dual_witness(spec, S);
  INFO("S = " << bfm::set_to_string(S));
  REQUIRE(orc::cover_certificate_ok(vtab, spec.n, S, value, cover.alpha, w.y));
}

}  // namespace

TEST_CASE("symmetric 3-agent instance: cover value, gap, witness", "[lp]") {
  ValuationSpec s = sym3();
  auto [value, cover] = bfm::fractional_cover_value(s, 0b111);
  REQUIRE(value == Q(3, 2));  // half of each pair
  bfm::DualWitness w = bfm::dual_witness(s, 0b111);
  REQUIRE(w.y == std::vector<Q>{Q(1, 2), Q(1, 2), Q(1, 2)});
  REQUIRE(bfm::integrality_gap(s, 0b111) == Q(4, 3));

  bfm::GapReport rep = bfm::max_integrality_gap(s);
  REQUIRE(rep.max_gap == Q(4, 3));
  REQUIRE(rep.argmax == 0b111);
  for (AgentSet m = 0; m < 7; ++m) REQUIRE(rep.per_subset[m] == Q(1));
  REQUIRE(rep.per_subset[7] == Q(4, 3));
  REQUIRE_FALSE(bfm::certify_xos_tab(bfm::tabulate(s), 3));
  require_certificates(s, 0b111);
}

TEST_CASE("covers of singletons and the empty set are trivial", "[lp]") {
  ValuationSpec s = sym3();
  for (int i = 0; i < 3; ++i)
    REQUIRE(bfm::fractional_cover_value(s, bfm::bit(i)).first == Q(1));
  REQUIRE(bfm::fractional_cover_value(s, 0).first == Q(0));
  REQUIRE(bfm::integrality_gap(s, 0) == Q(1));  // 0/0 reads as 1
}

TEST_CASE("declared structure certifies at gap one", "[lp]") {
  ValuationSpec add = bfm::make_additive({Q(2), Q(3), Q(1)});
  REQUIRE(bfm::certify_xos_tab(bfm::tabulate(add), 3));
  REQUIRE(bfm::max_integrality_gap(add).max_gap == Q(1));

  ValuationSpec xos = bfm::make_xos({{Q(2), Q(1), Q(0)}, {Q(0), Q(1), Q(2)}});
  REQUIRE(bfm::certify_xos_tab(bfm::tabulate(xos), 3));
  std::vector<Q> tilde = bfm::tabulate(bfm::tilde_valuation_table(xos));
  REQUIRE(tilde == bfm::tabulate(xos));  // gap one means the relaxation is exact
}

TEST_CASE("free riders force an undefined gap but a clean refusal", "[lp]") {
  // two worthless singletons whose union has value: the fractional cover is free
  ValuationSpec s = bfm::make_table({Q(0), Q(0), Q(0), Q(1)});
  REQUIRE(bfm::fractional_cover_value(s, 0b11).first == Q(0));
  REQUIRE_THROWS_AS(bfm::integrality_gap(s, 0b11), std::domain_error);
  REQUIRE_THROWS_AS(bfm::max_integrality_gap(s), std::domain_error);
  REQUIRE_FALSE(bfm::certify_xos_tab(bfm::tabulate(s), 2));  // refuses without throwing
  REQUIRE(bfm::integrality_gap(s, 0b01) == Q(1));            // 0/0 on a worthless singleton
}

TEST_CASE("relaxed table is sandwiched and re-certifies", "[lp]") {
  ValuationSpec s = sym3();
  ValuationSpec tilde = bfm::tilde_valuation_table(s);
  std::vector<Q> t = bfm::tabulate(tilde);
  REQUIRE(t == std::vector<Q>{Q(0), Q(1), Q(1), Q(1), Q(1), Q(1), Q(1), Q(3, 2)});
  std::vector<Q> v = bfm::tabulate(s);
  Q I = bfm::max_integrality_gap(s).max_gap;
  for (AgentSet m = 0; m < 8; ++m) {
    REQUIRE(t[m] <= v[m]);
    REQUIRE(v[m] <= I * t[m]);
  }
  REQUIRE(bfm::certify_xos_tab(t, 3));
  REQUIRE(bfm::tabulate(bfm::tilde_valuation_table(tilde)) == t);  // idempotent
}

TEST_CASE("witness weights vanish outside the queried set", "[lp]") {
  ValuationSpec s = sym3();
  bfm::DualWitness w = bfm::dual_witness(s, 0b011);
  REQUIRE(w.y.size() == 3);
  REQUIRE(w.y[2] == Q(0));
  Q total = w.y[0] + w.y[1];
  REQUIRE(total == bfm::fractional_cover_value(s, 0b011).first);
}

TEST_CASE("primal and dual certificates agree on random tables", "[lp]") {
  std::mt19937 rng(991231);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);  // 2..5
    std::vector<Q> t(std::size_t{1} << n, Q(0));
    for (std::size_t m = 1; m < t.size(); ++m) t[m] = Q(static_cast<int>(rng() % 9));
    ValuationSpec s = bfm::make_table(t);
    AgentSet full = bfm::full_set(n);
    require_certificates(s, full);
    require_certificates(s, full & ~AgentSet{1});
    require_certificates(s, AgentSet{rng()} & full);
    std::vector<Q> covers = bfm::cover_value_table(t, n);
    REQUIRE(covers[full] == bfm::fractional_cover_value(s, full).first);
    for (AgentSet m = 0; m <= full; ++m) REQUIRE(covers[m] <= t[m]);
  }
}
