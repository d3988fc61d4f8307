#include "doctest.h"

#include <vector>

#include "delivery/errors.hpp"
#include "delivery/fast_dp.hpp"
#include "delivery/gen.hpp"
#include "delivery/metric.hpp"
#include "delivery/oracle.hpp"
#include "delivery/schedule.hpp"
#include "test_util.hpp"

using namespace delivery;
using testutil::make_instance;
using testutil::R;

namespace {

// Schedules from the minimum-time solver must be well-formed and never use
// an agent twice; carrier velocities are non-decreasing along the relay.
void check_fast_schedule(const Instance& inst, const EvalResult& res) {
  CHECK(validate_schedule(inst, res.schedule).empty());
  for (size_t i = 0; i + 1 < res.schedule.legs.size(); ++i) {
    const Agent* a = inst.agent_by_id(res.schedule.legs[i].agent);
    const Agent* b = inst.agent_by_id(res.schedule.legs[i + 1].agent);
    REQUIRE(a != nullptr);
    REQUIRE(b != nullptr);
    CHECK((a->velocity <= b->velocity));
  }
}

}  // namespace

TEST_CASE("prune_collocated keeps the fastest agent per node") {
  const Instance inst = make_instance(
      3, {{0, 1, R(4)}, {1, 2, R(4)}},
      {{5, 0, R(1), R(2)}, {3, 0, R(9), R(2)}, {9, 1, R(0), R(1)}}, 0, 2);

  SUBCASE("velocity tie broken by lowest id") {
    const Instance pruned = prune_collocated(inst);
    REQUIRE(pruned.agents.size() == 2);
    CHECK(pruned.agents[0].id == 3);
    CHECK(pruned.agents[1].id == 9);
  }
  SUBCASE("strictly faster agent wins regardless of id") {
    Instance alt = inst;
    alt.agents[0].velocity = R(7);
    const Instance pruned = prune_collocated(alt);
    REQUIRE(pruned.agents.size() == 2);
    CHECK(pruned.agents[0].id == 5);
    CHECK(pruned.agents[1].id == 9);
  }
  SUBCASE("agents on distinct nodes all survive") {
    Instance alt = inst;
    alt.agents[1].start = 2;
    CHECK(prune_collocated(alt).agents.size() == 3);
  }
}

TEST_CASE("dp tables: base row and agent order") {
  const Instance inst = make_instance(
      3, {{0, 1, R(3)}, {1, 2, R(4)}},
      {{1, 2, R(1), R(5)}, {2, 0, R(1), R(2)}}, 0, 2);
  const FastDpTables tb = fast_dp_tables(inst);

  REQUIRE(tb.order.size() == 2);
  CHECK(tb.order[0].id == 2);  // velocity 2 before velocity 5
  CHECK(tb.order[1].id == 1);

  REQUIRE(tb.T.size() == 3);
  REQUIRE(tb.T[0].size() == 3);
  CHECK_FALSE(tb.T[0][0].is_inf());
  CHECK(rat_str(tb.T[0][0].finite()) == "0/1");  // package waits at s
  CHECK(tb.T[0][1].is_inf());
  CHECK(tb.T[0][2].is_inf());
  for (int v = 0; v < 3; ++v) CHECK(tb.A[0][v] == 0);
}

TEST_CASE("dp rows are monotone: more agents never hurt") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = gen_random(GenKind::Graph, 6, 4, seed);
    const FastDpTables tb = fast_dp_tables(inst);
    for (size_t r = 0; r + 1 < tb.T.size(); ++r) {
      for (int v = 0; v < inst.graph.node_count; ++v) {
        CHECK((tb.T[r + 1][v] <= tb.T[r][v]));
        CHECK(tb.A[r][v] >= 0);
        CHECK(tb.A[r][v] <= static_cast<int>(r));
      }
    }
  }
}

TEST_CASE("in-edge pick-up on a single edge beats node handovers") {
  // One long edge; a slow carrier leaves s while a fast agent walks in from
  // t. They meet a quarter of the way in; restricting handovers to nodes
  // forces the fast agent to walk all the way to s first.
  const Instance inst = make_instance(
      2, {{0, 1, R(10)}}, {{1, 0, R(1), R(1)}, {2, 1, R(0), R(3)}}, 0, 1);

  const FastDpTables with = fast_dp_tables(inst);
  REQUIRE(with.T.size() == 3);
  CHECK_FALSE(with.T[2][1].is_inf());
  CHECK(rat_str(with.T[2][1].finite()) == "5/1");
  CHECK(with.A[2][1] == 2);
  REQUIRE(with.picks.size() == 1);
  CHECK(with.picks[0].agent == 2);
  CHECK(with.picks[0].u == 0);
  CHECK(with.picks[0].v == 1);
  CHECK(rat_str(with.picks[0].dist_to_v) == "15/2");

  const FastDpTables without = fast_dp_tables(inst, false);
  CHECK(rat_str(without.T[2][1].finite()) == "20/3");
  CHECK(without.picks.empty());

  const EvalResult res = solve_fast(inst);
  CHECK(rat_str(res.report.delivery_time) == "5/1");
  CHECK(rat_str(res.report.energy) == "5/2");
  REQUIRE(res.schedule.legs.size() == 2);
  CHECK(res.schedule.legs[0].agent == 1);
  CHECK(res.schedule.legs[1].agent == 2);
  const GraphPoint meet = GraphPoint::on_edge(inst.graph, 0, 1, R(5, 2));
  CHECK(res.schedule.legs[0].dropoff == meet);
  CHECK(res.schedule.legs[1].pickup == meet);
  check_fast_schedule(inst, res);
}

TEST_CASE("two-leg relay: the interior meeting point shaves the wait") {
  // The node-handover relay delivers at time 8; meeting inside the last edge
  // removes the fast agent's idle time and lands at 36/5.
  const Instance inst = testutil::two_leg_fixture();

  const EvalResult res = solve_fast(inst);
  CHECK(rat_str(res.report.delivery_time) == "36/5");
  CHECK(rat_str(res.report.energy) == "72/1");
  check_fast_schedule(inst, res);
  REQUIRE(res.schedule.legs.size() == 2);
  CHECK(res.schedule.legs[1].pickup ==
        GraphPoint::on_edge(inst.graph, 2, 3, R(6, 5)));

  const FastDpTables nodes_only = fast_dp_tables(inst, false);
  CHECK(rat_str(nodes_only.T[2][3].finite()) == "8/1");
}

TEST_CASE("single agent: fetch and deliver") {
  const Instance inst = make_instance(
      3, {{0, 1, R(3)}, {1, 2, R(4)}}, {{1, 2, R(5), R(2)}}, 0, 2);
  const EvalResult res = solve_fast(inst);
  CHECK(rat_str(res.report.delivery_time) == "7/1");
  CHECK(rat_str(res.report.energy) == "70/1");
  REQUIRE(res.schedule.legs.size() == 1);
  CHECK(rat_str(res.schedule.legs[0].approach_distance) == "7/1");
  CHECK(rat_str(res.schedule.legs[0].carry_distance) == "7/1");
  check_fast_schedule(inst, res);
}

TEST_CASE("source equals target: the empty schedule") {
  const Instance inst =
      make_instance(2, {{0, 1, R(5)}}, {{1, 1, R(2), R(1)}}, 0, 0);
  const EvalResult res = solve_fast(inst);
  CHECK(res.schedule.legs.empty());
  CHECK(rat_str(res.report.delivery_time) == "0/1");
  CHECK(rat_str(res.report.energy) == "0/1");
}

TEST_CASE("infeasible deliveries throw") {
  SUBCASE("target in another component") {
    const Instance inst = make_instance(
        4, {{0, 1, R(5)}, {2, 3, R(5)}}, {{1, 0, R(1), R(1)}}, 0, 2);
    CHECK_THROWS_AS(solve_fast(inst), Infeasible);
  }
  SUBCASE("no agent can reach the package") {
    const Instance inst = make_instance(
        3, {{0, 1, R(5)}}, {{1, 2, R(1), R(1)}}, 0, 1);
    CHECK_THROWS_AS(solve_fast(inst), Infeasible);
  }
}

TEST_CASE("an extra fast agent at the source never increases T") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    // Generated graphs are connected, so every instance is feasible.
    const Instance inst = gen_random(GenKind::Graph, 6, 3, seed);
    const EvalResult base = solve_fast(inst);
    check_fast_schedule(inst, base);

    Instance more = inst;
    int max_id = 0;
    for (const Agent& a : inst.agents) max_id = std::max(max_id, a.id);
    more.agents.push_back({max_id + 1, inst.source, R(0), R(8)});
    const EvalResult faster = solve_fast(more);
    CHECK((faster.report.delivery_time <= base.report.delivery_time));
    check_fast_schedule(more, faster);

    // With a velocity-8 agent already at s, a direct run bounds T.
    const DistanceMatrix dist = apsp(inst.graph);
    const Rat direct = dist.at(inst.source, inst.target).finite() / R(8);
    CHECK((faster.report.delivery_time <= direct));
  }
}

TEST_CASE("pick-up points lie strictly inside their edge") {
  for (std::uint64_t seed = 20; seed <= 26; ++seed) {
    const Instance inst = gen_random(GenKind::Graph, 5, 4, seed);
    const FastDpTables tb = fast_dp_tables(inst);
    for (const InEdgePick& p : tb.picks) {
      CHECK(inst.agent_by_id(p.agent) != nullptr);
      const Edge* e = inst.graph.find_edge(p.u, p.v);
      REQUIRE(e != nullptr);
      CHECK((p.dist_to_v > Rat(0)));
      CHECK((p.dist_to_v < e->length));
    }
  }
}

TEST_CASE("fast solver never exceeds the subdivided oracle") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Instance inst = gen_random(GenKind::Graph, 5, 3, seed);
    const EvalResult fast = solve_fast(inst);
    for (int parts : {1, 2, 4}) {
      const EvalResult oo = oracle_fast_subdivided(inst, parts);
      CHECK((fast.report.delivery_time <= oo.report.delivery_time));
      CHECK(validate_schedule(inst, oo.schedule).empty());
    }
  }
}
