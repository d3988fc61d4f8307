#include "doctest.h"

#include <vector>

#include "delivery/errors.hpp"
#include "delivery/gen.hpp"
#include "delivery/metric.hpp"
#include "test_util.hpp"

using namespace delivery;
using testutil::make_graph;
using testutil::R;
using testutil::TestRng;

namespace {

// Independent reference: minimum length over all simple paths, found by
// depth-first enumeration. Exponential, fine for tiny graphs.
ExtRat brute_distance(const Graph& g, NodeId from, NodeId to) {
  const auto adj = g.adjacency();
  std::vector<bool> used(g.node_count, false);
  ExtRat best = ExtRat::infinity();
  Rat acc(0);
  auto dfs = [&](auto&& self, NodeId v) -> void {
    if (v == to) {
      if (ExtRat(acc) < best) best = ExtRat(acc);
      return;
    }
    used[v] = true;
    for (const auto& [w, ei] : adj[v]) {
      if (used[w]) continue;
      acc += g.edges[ei].length;
      self(self, w);
      acc -= g.edges[ei].length;
    }
    used[v] = false;
  };
  dfs(dfs, from);
  return best;
}

GraphPoint random_point(TestRng& rng, const Graph& g) {
  if (g.edges.empty() || rng.pick(3) == 0)
    return GraphPoint::node(rng.pick(g.node_count));
  const Edge& e = g.edges[rng.pick(static_cast<int>(g.edges.size()))];
  // Offset strictly inside the edge.
  const Rat off = e.length * Rat(1 + rng.pick(7)) / 8;
  return GraphPoint::on_edge(g, e.u, e.v, off);
}

}  // namespace

TEST_CASE("apsp on a two-edge path") {
  const Graph g = make_graph(3, {{0, 1, R(2)}, {1, 2, R(3)}});
  const DistanceMatrix d = apsp(g);
  CHECK(d.at(0, 2) == ExtRat(5));
  CHECK(d.at(2, 0) == ExtRat(5));
  CHECK(d.at(0, 0) == ExtRat(0));
  CHECK(d.at(0, 1) == ExtRat(2));
}

TEST_CASE("apsp prefers the two unit edges over a long direct edge") {
  const Graph g = make_graph(3, {{0, 1, R(1)}, {1, 2, R(1)}, {0, 2, R(3)}});
  const DistanceMatrix d = apsp(g);
  CHECK(d.at(0, 2) == ExtRat(2));
}

TEST_CASE("apsp reports disconnected pairs as infinite") {
  const Graph g = make_graph(4, {{0, 1, R(1)}, {2, 3, R(1)}});
  const DistanceMatrix d = apsp(g);
  CHECK(d.at(0, 3).is_inf());
  CHECK(d.at(1, 2).is_inf());
  CHECK(d.at(2, 3) == ExtRat(1));
}

TEST_CASE("apsp equals exhaustive path enumeration on random graphs") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Instance inst = gen_random(GenKind::Graph, 6, 1, seed);
    const DistanceMatrix d = apsp(inst.graph);
    for (NodeId u = 0; u < 6; ++u)
      for (NodeId v = 0; v < 6; ++v)
        CHECK(d.at(u, v) == brute_distance(inst.graph, u, v));
  }
}

TEST_CASE("sssp matches the corresponding apsp row") {
  const Instance inst = gen_random(GenKind::Graph, 7, 1, 42);
  const DistanceMatrix d = apsp(inst.graph);
  for (NodeId s = 0; s < 7; ++s) {
    const auto row = sssp(inst.graph, s);
    for (NodeId v = 0; v < 7; ++v) CHECK(row[v] == d.at(s, v));
  }
}

TEST_CASE("point_distance handles interior points") {
  const Graph g = make_graph(2, {{0, 1, R(10)}});
  const DistanceMatrix d = apsp(g);
  const GraphPoint a = GraphPoint::on_edge(g, 0, 1, R(1));

  SUBCASE("interior point to its own endpoint") {
    CHECK(point_distance(g, d, a, GraphPoint::node(0)) == ExtRat(1));
    CHECK(point_distance(g, d, a, GraphPoint::node(1)) == ExtRat(9));
  }
  SUBCASE("two points on the same edge take the direct segment") {
    const GraphPoint b = GraphPoint::on_edge(g, 0, 1, R(2));
    const GraphPoint c = GraphPoint::on_edge(g, 0, 1, R(7));
    CHECK(point_distance(g, d, b, c) == ExtRat(5));
  }
  SUBCASE("identical points are at distance zero") {
    CHECK(point_distance(g, d, a, a) == ExtRat(0));
  }
}

TEST_CASE("point_distance routes around when the detour beats the edge") {
  // Edge {0,1} is long; 0-2-1 is a two-hop shortcut of length 2. Points at
  // offsets 1 and 9 of the long edge are 4 apart via the shortcut, 8 direct.
  const Graph g =
      make_graph(3, {{0, 1, R(10)}, {0, 2, R(1)}, {1, 2, R(1)}});
  const DistanceMatrix d = apsp(g);
  const GraphPoint a = GraphPoint::on_edge(g, 0, 1, R(1));
  const GraphPoint b = GraphPoint::on_edge(g, 0, 1, R(9));
  CHECK(point_distance(g, d, a, b) == ExtRat(4));
}

TEST_CASE("point_distance is symmetric, zero on equal points, and triangular") {
  TestRng rng(2026);
  for (int it = 0; it < 30; ++it) {
    const Instance inst = gen_random(GenKind::Graph, 6, 1, 100 + it);
    const DistanceMatrix d = apsp(inst.graph);
    const GraphPoint a = random_point(rng, inst.graph);
    const GraphPoint b = random_point(rng, inst.graph);
    const GraphPoint c = random_point(rng, inst.graph);
    const ExtRat ab = point_distance(inst.graph, d, a, b);
    const ExtRat ba = point_distance(inst.graph, d, b, a);
    const ExtRat bc = point_distance(inst.graph, d, b, c);
    const ExtRat ac = point_distance(inst.graph, d, a, c);
    CHECK(ab == ba);
    CHECK(point_distance(inst.graph, d, a, a) == ExtRat(0));
    CHECK((ac <= ab + bc));
  }
}

TEST_CASE("subdivision leaves all pairwise node distances unchanged") {
  for (int parts = 2; parts <= 4; ++parts) {
    const Instance inst = gen_random(GenKind::Graph, 6, 1, 7);
    const DistanceMatrix before = apsp(inst.graph);
    const SubdividedGraph sub = subdivide(inst.graph, parts);
    sub.graph.validate();
    const DistanceMatrix after = apsp(sub.graph);
    for (NodeId u = 0; u < 6; ++u)
      for (NodeId v = 0; v < 6; ++v) CHECK(before.at(u, v) == after.at(u, v));
  }
}

TEST_CASE("subdivide maps new nodes to interior points of original edges") {
  const Graph g = make_graph(3, {{0, 1, R(3)}, {1, 2, R(5, 2)}});
  const SubdividedGraph sub = subdivide(g, 2);
  CHECK(sub.original_node_count == 3);
  // One midpoint per edge.
  CHECK(sub.graph.node_count == 5);
  CHECK(sub.graph.edges.size() == 4);
  for (NodeId v = 0; v < sub.graph.node_count; ++v) {
    const GraphPoint p = sub.original_point(v);
    if (v < 3) {
      CHECK(p == GraphPoint::node(v));
    } else {
      CHECK_FALSE(p.is_node());
      const Edge* e = g.find_edge(p.u, p.v);
      REQUIRE(e != nullptr);
      CHECK((p.offset > 0));
      CHECK((p.offset < e->length));
    }
  }
  // The two midpoints of edge {0,1} and {1,2} sit at half the lengths.
  const GraphPoint m0 = sub.original_point(3);
  const GraphPoint m1 = sub.original_point(4);
  CHECK(rat_str(m0.offset) == "3/2");
  CHECK(rat_str(m1.offset) == "5/4");
}

TEST_CASE("subdivide with parts = 1 is the identity construction") {
  const Graph g = make_graph(3, {{0, 1, R(3)}, {1, 2, R(4)}});
  const SubdividedGraph sub = subdivide(g, 1);
  CHECK(sub.graph.node_count == 3);
  CHECK(sub.graph.edges.size() == 2);
  CHECK_THROWS_AS(subdivide(g, 0), BadParameters);
}
