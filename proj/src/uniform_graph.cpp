#include "delivery/uniform_graph.hpp"

#include <algorithm>
#include <queue>

#include "delivery/errors.hpp"

namespace delivery {

Rat uniform_velocity(const Instance& inst) {
  if (inst.agents.empty()) throw NonUniformVelocities("instance has no agents");
  const Rat v = inst.agents.front().velocity;
  for (const Agent& a : inst.agents) {
    if (a.velocity != v) {
      throw NonUniformVelocities("agent velocities are not all equal");
    }
  }
  return v;
}

namespace {

// Interior candidates on edge {u,v} for one agent: exact solutions of
// d(p_i,q) = delta + d(s,q) in the edge offset. Both sides are concave
// piecewise-linear (min of the two endpoint routings), so it suffices to try
// the two opposite-slope piece intersections plus the two slope-switch
// offsets and keep whatever verifies exactly.
void interior_candidates(const Graph& g, const DistanceMatrix& dist,
                         NodeId start, NodeId s, NodeId t, const Rat& delta,
                         const Edge& e, std::vector<GraphPoint>& out) {
  const ExtRat& pu = dist.at(start, e.u);
  const ExtRat& pv = dist.at(start, e.v);
  const ExtRat& su = dist.at(s, e.u);
  const ExtRat& sv = dist.at(s, e.v);
  if (pu.is_inf() || pv.is_inf() || su.is_inf() || sv.is_inf()) return;
  const Rat& l = e.length;

  std::vector<Rat> offsets;
  // approach via u meets package via v, and vice versa
  offsets.push_back(Rat((delta + sv.finite() + l - pu.finite()) / 2));
  offsets.push_back(Rat((pv.finite() + l - delta - su.finite()) / 2));
  // slope-switch points (cover degenerate whole-piece coincidences)
  offsets.push_back(Rat((pv.finite() + l - pu.finite()) / 2));
  offsets.push_back(Rat((sv.finite() + l - su.finite()) / 2));

  const GraphPoint sp = GraphPoint::node(s);
  const GraphPoint tp = GraphPoint::node(t);
  const GraphPoint ap = GraphPoint::node(start);
  const ExtRat dst = dist.at(s, t);
  for (const Rat& o : offsets) {
    if (!(o > 0 && o < l)) continue;
    GraphPoint q = GraphPoint::on_edge(g, e.u, e.v, o);
    ExtRat dpq = point_distance(g, dist, ap, q);
    ExtRat dsq = point_distance(g, dist, sp, q);
    ExtRat dqt = point_distance(g, dist, q, tp);
    if (dpq.is_inf() || dsq.is_inf() || dqt.is_inf()) continue;
    if (dpq.finite() != delta + dsq.finite()) continue;      // tight reach
    if (dsq.finite() + dqt.finite() != dst.finite()) continue;  // on a path
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  }
}

}  // namespace

CandidateSet candidate_pickups(const Instance& inst) {
  inst.validate();
  uniform_velocity(inst);
  const Graph& g = inst.graph;
  DistanceMatrix dist = apsp(g);
  if (dist.at(inst.source, inst.target).is_inf()) {
    throw Infeasible("source and target are disconnected");
  }

  ExtRat delta = ExtRat::infinity();
  for (const Agent& a : inst.agents) {
    delta = min(delta, dist.at(a.start, inst.source));
  }
  if (delta.is_inf()) throw Infeasible("no agent can reach the source");

  CandidateSet cs;
  cs.delta = delta.finite();
  cs.per_agent.resize(inst.agents.size());
  const Rat dst = dist.at(inst.source, inst.target).finite();

  for (size_t ai = 0; ai < inst.agents.size(); ++ai) {
    const Agent& a = inst.agents[ai];
    std::vector<GraphPoint>& q = cs.per_agent[ai];
    for (NodeId v = 0; v < g.node_count; ++v) {
      const ExtRat& sv = dist.at(inst.source, v);
      const ExtRat& vt = dist.at(v, inst.target);
      const ExtRat& pv = dist.at(a.start, v);
      if (sv.is_inf() || vt.is_inf() || pv.is_inf()) continue;
      if (sv.finite() + vt.finite() != dst) continue;
      if (pv.finite() > cs.delta + sv.finite()) continue;
      q.push_back(GraphPoint::node(v));
    }
    for (const Edge& e : g.edges) {
      // only edges some shortest s-t path crosses can host interior points
      const ExtRat& su = dist.at(inst.source, e.u);
      const ExtRat& sv = dist.at(inst.source, e.v);
      const ExtRat& ut = dist.at(e.u, inst.target);
      const ExtRat& vt = dist.at(e.v, inst.target);
      if (su.is_inf() || sv.is_inf() || ut.is_inf() || vt.is_inf()) continue;
      const bool fwd = su.finite() + e.length + vt.finite() == dst;
      const bool bwd = sv.finite() + e.length + ut.finite() == dst;
      if (!fwd && !bwd) continue;
      interior_candidates(g, dist, a.start, inst.source, inst.target,
                          cs.delta, e, q);
    }
  }
  return cs;
}

EvalResult solve_uniform(const Instance& inst) {
  inst.validate();
  const Rat vel = uniform_velocity(inst);
  if (inst.source == inst.target) {
    return evaluate_schedule(inst, Handovers{});
  }
  const Graph& g = inst.graph;
  DistanceMatrix dist = apsp(g);
  CandidateSet cs = candidate_pickups(inst);
  const Rat dst = dist.at(inst.source, inst.target).finite();
  const GraphPoint tp = GraphPoint::node(inst.target);

  struct Node {
    int agent;  // index into inst.agents
    GraphPoint q;
    Rat ds;        // d(s, q)
    Rat approach;  // d(p_agent, q)
  };
  std::vector<Node> nodes;
  for (size_t ai = 0; ai < inst.agents.size(); ++ai) {
    for (const GraphPoint& q : cs.per_agent[ai]) {
      if (q == tp) continue;  // picking up at the target is vacuous
      Node nd;
      nd.agent = static_cast<int>(ai);
      nd.q = q;
      nd.ds = point_distance(g, dist, GraphPoint::node(inst.source), q).finite();
      nd.approach =
          point_distance(g, dist, GraphPoint::node(inst.agents[ai].start), q)
              .finite();
      nodes.push_back(nd);
    }
  }

  const size_t nn = nodes.size();
  std::vector<ExtRat> best(nn, ExtRat::infinity());
  std::vector<int> parent(nn, -1);
  using QItem = std::pair<Rat, size_t>;
  auto cmp = [](const QItem& l, const QItem& r) {
    if (l.first != r.first) return l.first > r.first;
    return l.second > r.second;
  };
  std::priority_queue<QItem, std::vector<QItem>, decltype(cmp)> pq(cmp);

  // Source arcs: only the closest agents may perform the first pick-up (at s,
  // with zero waiting), or the package would start late.
  for (size_t x = 0; x < nn; ++x) {
    if (nodes[x].q == GraphPoint::node(inst.source) &&
        nodes[x].approach == cs.delta) {
      best[x] = ExtRat(Rat(0));
      pq.push({Rat(0), x});
    }
  }

  ExtRat best_total = ExtRat::infinity();
  int best_last = -1;
  std::vector<bool> settled(nn, false);
  while (!pq.empty()) {
    auto [d0, x] = pq.top();
    pq.pop();
    if (settled[x]) continue;
    settled[x] = true;
    const Node& nx = nodes[x];
    const Rat carry_out_base = nx.approach;  // walked distance before pickup
    {
      // arc to the sink: carry to t
      const Rat w = inst.agents[nx.agent].weight *
                    (carry_out_base + (dst - nx.ds));
      const ExtRat total = ExtRat(Rat(d0 + w));
      if (total < best_total) {
        best_total = total;
        best_last = static_cast<int>(x);
      }
    }
    for (size_t y = 0; y < nn; ++y) {
      if (settled[y] || nodes[y].agent == nx.agent) continue;
      ExtRat dxy = point_distance(g, dist, nx.q, nodes[y].q);
      if (dxy.is_inf()) continue;
      // handover point q_y must keep the package on a shortest s-t path
      if (nx.ds + dxy.finite() != nodes[y].ds) continue;
      const Rat w = inst.agents[nx.agent].weight *
                    (carry_out_base + dxy.finite());
      const Rat cand = d0 + w;
      if (ExtRat(cand) < best[y]) {
        best[y] = ExtRat(cand);
        parent[y] = static_cast<int>(x);
        pq.push({cand, y});
      }
    }
  }

  if (best_total.is_inf()) {
    throw Infeasible("no agent can start the delivery at the source");
  }

  std::vector<int> chain;
  for (int cur = best_last; cur >= 0; cur = parent[cur]) chain.push_back(cur);
  std::reverse(chain.begin(), chain.end());

  Handovers hs;
  for (size_t m = 0; m < chain.size(); ++m) {
    const GraphPoint drop = (m + 1 < chain.size()) ? nodes[chain[m + 1]].q : tp;
    hs.push_back(Handover{inst.agents[nodes[chain[m]].agent].id, drop});
  }
  EvalResult res = evaluate_schedule(inst, dist, hs);
  const Rat expect_T = (cs.delta + dst) / vel;
  if (res.report.delivery_time != expect_T ||
      ExtRat(res.report.energy) != best_total) {
    throw Error("internal: uniform schedule misses its objectives");
  }
  return res;
}

}  // namespace delivery
