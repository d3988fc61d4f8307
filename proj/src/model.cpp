#include "delivery/model.hpp"

#include <set>
#include <string>

#include "delivery/errors.hpp"

namespace delivery {

int Graph::edge_index(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].u == u && edges[i].v == v) return static_cast<int>(i);
  return -1;
}

const Edge* Graph::find_edge(NodeId u, NodeId v) const {
  int i = edge_index(u, v);
  return i < 0 ? nullptr : &edges[i];
}

std::vector<std::vector<std::pair<NodeId, int>>> Graph::adjacency() const {
  std::vector<std::vector<std::pair<NodeId, int>>> adj(node_count);
  for (size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].emplace_back(edges[i].v, static_cast<int>(i));
    adj[edges[i].v].emplace_back(edges[i].u, static_cast<int>(i));
  }
  return adj;
}

void Graph::validate() const {
  if (node_count < 0) throw ParseError("negative node count");
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count)
      throw ParseError("edge endpoint out of range");
    if (e.u == e.v) throw ParseError("self-loop on node " + std::to_string(e.u));
    if (e.u > e.v) throw ParseError("edge not stored canonically (u < v)");
    if (!seen.insert({e.u, e.v}).second)
      throw ParseError("parallel edge {" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + "}");
    if (e.length <= 0) throw ParseError("non-positive edge length");
  }
}

GraphPoint GraphPoint::on_edge(const Graph& g, NodeId a, NodeId b,
                               const Rat& offset_from_a) {
  const Edge* e = g.find_edge(a, b);
  if (e == nullptr)
    throw ParseError("no edge {" + std::to_string(a) + "," +
                     std::to_string(b) + "}");
  Rat off = a < b ? offset_from_a : e->length - offset_from_a;
  if (off < 0 || off > e->length)
    throw ParseError("edge offset out of range");
  if (off == 0) return node(e->u);
  if (off == e->length) return node(e->v);
  return GraphPoint{e->u, e->v, off};
}

std::string GraphPoint::str() const {
  if (is_node()) return "node " + std::to_string(u);
  return "edge " + std::to_string(u) + " " + std::to_string(v) + " " +
         rat_str(offset);
}

const Agent* Instance::agent_by_id(int id) const {
  for (const Agent& a : agents)
    if (a.id == id) return &a;
  return nullptr;
}

void Instance::validate() const {
  graph.validate();
  if (agents.empty()) throw ParseError("instance has no agents");
  if (source < 0 || source >= graph.node_count)
    throw ParseError("source out of range");
  if (target < 0 || target >= graph.node_count)
    throw ParseError("target out of range");
  std::set<int> ids;
  for (const Agent& a : agents) {
    if (!ids.insert(a.id).second)
      throw ParseError("duplicate agent id " + std::to_string(a.id));
    if (a.start < 0 || a.start >= graph.node_count)
      throw ParseError("agent start out of range");
    if (a.weight < 0) throw ParseError("negative agent weight");
    if (a.velocity <= 0)
      throw ParseError("agent velocity must be a positive finite rational");
  }
}

}  // namespace delivery
