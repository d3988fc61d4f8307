#pragma once

#include <utility>
#include <vector>

#include "delivery/rational.hpp"

namespace delivery {

using NodeId = int;

struct Edge {
  NodeId u = -1;  // stored canonically with u < v
  NodeId v = -1;
  Rat length;     // > 0
};

// Simple undirected graph with positive rational edge lengths. No self-loops,
// no parallel edges.
struct Graph {
  int node_count = 0;
  std::vector<Edge> edges;

  // Index of edge {u,v} in `edges`, or -1 if absent. Order of u, v is
  // irrelevant.
  int edge_index(NodeId u, NodeId v) const;
  const Edge* find_edge(NodeId u, NodeId v) const;

  // adjacency()[v] lists (neighbour, edge index).
  std::vector<std::vector<std::pair<NodeId, int>>> adjacency() const;

  // Throws ParseError when a structural invariant is violated.
  void validate() const;
};

// A point of the graph: either a node or a point strictly inside an edge,
// identified by the canonical edge orientation (u < v) and the offset from u.
// Endpoints are always represented as nodes, so representations are unique.
struct GraphPoint {
  NodeId u = -1;
  NodeId v = -1;
  Rat offset;  // distance from u; 0 for node points (u == v)

  static GraphPoint node(NodeId n) { return GraphPoint{n, n, Rat(0)}; }

  // Canonicalizing constructor for a point on edge {a,b} at `offset_from_a`.
  // Offsets 0 and length collapse to the corresponding node; orientation is
  // flipped to u < v as needed. Throws ParseError when the edge does not
  // exist or the offset is out of range.
  static GraphPoint on_edge(const Graph& g, NodeId a, NodeId b,
                            const Rat& offset_from_a);

  bool is_node() const { return u == v; }

  bool operator==(const GraphPoint& o) const {
    return u == o.u && v == o.v && offset == o.offset;
  }
  bool operator!=(const GraphPoint& o) const { return !(*this == o); }

  std::string str() const;
};

struct Agent {
  int id = 0;
  NodeId start = 0;  // p_i
  Rat weight;        // omega_i >= 0
  Rat velocity;      // upsilon_i > 0, finite
};

struct Instance {
  Graph graph;
  std::vector<Agent> agents;
  NodeId source = 0;  // s
  NodeId target = 0;  // t

  const Agent* agent_by_id(int id) const;

  // Structural validation (ids, ranges, graph invariants, at least one
  // agent). Connectivity of s and t is a solver-level concern and reported
  // as Infeasible there, not here.
  void validate() const;
};

}  // namespace delivery
