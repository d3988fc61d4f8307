#pragma once

#include <vector>

#include "delivery/model.hpp"
#include "delivery/rational.hpp"

namespace delivery {

// All-pairs shortest path distances with exact rational values; entries are
// infinite for disconnected pairs. Immutable after construction.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(int n) : n_(n), d_(static_cast<size_t>(n) * n) {}

  int size() const { return n_; }
  const ExtRat& at(NodeId u, NodeId v) const {
    return d_[static_cast<size_t>(u) * n_ + v];
  }
  ExtRat& at(NodeId u, NodeId v) { return d_[static_cast<size_t>(u) * n_ + v]; }

 private:
  int n_ = 0;
  std::vector<ExtRat> d_;
};

// Exact APSP: a label-settling single-source run (binary heap Dijkstra with
// rational keys) from every node.
DistanceMatrix apsp(const Graph& g);

// Single-source variant; dist[v] is infinite when v is unreachable.
std::vector<ExtRat> sssp(const Graph& g, NodeId source);

// Shortest distance between two arbitrary points of the graph: minimum of
// the same-edge direct segment (when applicable) and the four routings via
// the points' anchoring endpoints.
ExtRat point_distance(const Graph& g, const DistanceMatrix& d,
                      const GraphPoint& a, const GraphPoint& b);

// Result of splitting every edge into `parts` equal pieces. New nodes are
// appended after the original ones, so original node ids keep their meaning.
struct SubdividedGraph {
  Graph graph;
  // For every new node: which original edge it subdivides and the offset
  // from the canonical u endpoint, as a GraphPoint of the *original* graph.
  std::vector<GraphPoint> new_node_points;

  // Point of the original graph corresponding to any node of the subdivided
  // graph.
  GraphPoint original_point(NodeId subdivided_node) const;

  int original_node_count = 0;
};

SubdividedGraph subdivide(const Graph& g, int parts);

}  // namespace delivery
