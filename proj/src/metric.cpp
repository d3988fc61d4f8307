#include "delivery/metric.hpp"

#include <queue>
#include <utility>

#include "delivery/errors.hpp"

namespace delivery {

namespace {

// Heap entries carry a copy of the key; stale entries are skipped on pop.
struct HeapEntry {
  Rat dist;
  NodeId node;
  bool operator>(const HeapEntry& o) const { return dist > o.dist; }
};

}  // namespace

std::vector<ExtRat> sssp(const Graph& g, NodeId source) {
  auto adj = g.adjacency();
  std::vector<ExtRat> dist(g.node_count);  // default: infinite
  std::vector<bool> settled(g.node_count, false);
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  dist[source] = ExtRat(Rat(0));
  heap.push({Rat(0), source});
  while (!heap.empty()) {
    HeapEntry top = heap.top();
    heap.pop();
    if (settled[top.node]) continue;
    settled[top.node] = true;
    for (auto [next, ei] : adj[top.node]) {
      if (settled[next]) continue;
      Rat cand = top.dist + g.edges[ei].length;
      if (dist[next].is_inf() || cand < dist[next].finite()) {
        dist[next] = ExtRat(cand);
        heap.push({std::move(cand), next});
      }
    }
  }
  return dist;
}

DistanceMatrix apsp(const Graph& g) {
  DistanceMatrix d(g.node_count);
  for (NodeId s = 0; s < g.node_count; ++s) {
    auto dist = sssp(g, s);
    for (NodeId v = 0; v < g.node_count; ++v) d.at(s, v) = dist[v];
  }
  return d;
}

ExtRat point_distance(const Graph& g, const DistanceMatrix& d,
                      const GraphPoint& a, const GraphPoint& b) {
  if (a == b) return ExtRat(Rat(0));

  // Anchor each point to its incident node(s) with the offset cost.
  auto anchors = [&](const GraphPoint& p) {
    std::vector<std::pair<NodeId, Rat>> out;
    if (p.is_node()) {
      out.emplace_back(p.u, Rat(0));
    } else {
      const Edge* e = g.find_edge(p.u, p.v);
      out.emplace_back(p.u, p.offset);
      out.emplace_back(p.v, e->length - p.offset);
    }
    return out;
  };

  ExtRat best = ExtRat::infinity();
  // Both strictly inside the same edge: the direct segment is a candidate
  // (an external route via the endpoints may still win).
  if (!a.is_node() && !b.is_node() && a.u == b.u && a.v == b.v) {
    Rat direct = a.offset < b.offset ? b.offset - a.offset : a.offset - b.offset;
    best = ExtRat(direct);
  }
  for (const auto& [na, ca] : anchors(a))
    for (const auto& [nb, cb] : anchors(b)) {
      ExtRat via = d.at(na, nb) + ca;
      via = via + cb;
      if (via < best) best = via;
    }
  return best;
}

SubdividedGraph subdivide(const Graph& g, int parts) {
  if (parts < 1) throw BadParameters("subdivision needs parts >= 1");
  SubdividedGraph out;
  out.original_node_count = g.node_count;
  out.graph.node_count = g.node_count;
  if (parts == 1) {
    out.graph = g;
    return out;
  }
  for (const Edge& e : g.edges) {
    Rat piece = e.length / parts;
    NodeId prev = e.u;
    for (int i = 1; i < parts; ++i) {
      NodeId fresh = out.graph.node_count++;
      out.new_node_points.push_back(GraphPoint{e.u, e.v, piece * i});
      NodeId a = prev, b = fresh;
      if (a > b) std::swap(a, b);
      out.graph.edges.push_back(Edge{a, b, piece});
      prev = fresh;
    }
    NodeId a = prev, b = e.v;
    if (a > b) std::swap(a, b);
    out.graph.edges.push_back(Edge{a, b, piece});
  }
  return out;
}

GraphPoint SubdividedGraph::original_point(NodeId subdivided_node) const {
  if (subdivided_node < original_node_count)
    return GraphPoint::node(subdivided_node);
  return new_node_points[subdivided_node - original_node_count];
}

}  // namespace delivery
