#include "delivery/fast_dp.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "delivery/errors.hpp"

namespace delivery {

namespace {

// Pick-up record for one (agent, directed edge) pair: the agent meets the
// package at distance x from v while it crosses (u -> v). The package got
// there either straight from u (feeder departs u) or out of the feeder's own
// pick-up point on the same directed edge.
struct PickRec {
  Rat x;
  int feeder = -1;     // position in the sorted order
  bool via_pick = false;
};

struct Prov {
  enum class Tag { Base, Copy, InEdge, Move } tag = Tag::Base;
  NodeId edge_u = -1;       // InEdge: package crossed (edge_u -> node)
  NodeId from = -1;         // Move: takeover node
  bool from_step2 = false;  // Move: source was this row's fresh in-edge value
};

struct RawLeg {
  int agent;  // position in the sorted order
  GraphPoint pickup;
  GraphPoint dropoff;
};

Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

struct Dp {
  // Owned copy: callers hand over the freshly pruned instance, whose
  // temporary would otherwise die under a reference member.
  Instance inst;
  DistanceMatrix dist;
  std::vector<Agent> order;
  int n;
  int k;
  std::vector<std::vector<ExtRat>> T;
  std::vector<std::vector<int>> A;  // 1-based carrier position, 0 = none
  std::vector<std::vector<Prov>> prov;
  std::vector<std::vector<NodeId>> s2_edge;
  std::vector<std::map<int, PickRec>> picks;  // per agent, keyed by dir edge

  explicit Dp(Instance pruned)
      : inst(std::move(pruned)),
        dist(apsp(inst.graph)),
        order(inst.agents),
        n(inst.graph.node_count),
        k(static_cast<int>(inst.agents.size())) {
    std::sort(order.begin(), order.end(), [](const Agent& l, const Agent& r) {
      if (l.velocity != r.velocity) return l.velocity < r.velocity;
      return l.id < r.id;
    });
  }

  int dir_key(NodeId u, NodeId v) const {
    int ei = inst.graph.edge_index(u, v);
    return 2 * ei + (inst.graph.edges[ei].u == u ? 0 : 1);
  }

  void run(bool in_edge_pickups) {
    T.assign(k + 1, std::vector<ExtRat>(n, ExtRat::infinity()));
    A.assign(k + 1, std::vector<int>(n, 0));
    prov.assign(k + 1, std::vector<Prov>(n));
    s2_edge.assign(k + 1, std::vector<NodeId>(n, -1));
    picks.assign(k, {});
    T[0][inst.source] = ExtRat(Rat(0));

    for (int i = 0; i < k; ++i) {
      const Agent& ag = order[i];
      const std::vector<ExtRat>& prev = T[i];
      std::vector<ExtRat>& cur = T[i + 1];
      for (int v = 0; v < n; ++v) {
        cur[v] = prev[v];
        A[i + 1][v] = A[i][v];
        prov[i + 1][v].tag = Prov::Tag::Copy;
      }

      if (in_edge_pickups) {
        for (size_t ei = 0; ei < inst.graph.edges.size(); ++ei) {
          const Edge& e = inst.graph.edges[ei];
          step2(i, e.u, e.v, e.length);
          step2(i, e.v, e.u, e.length);
        }
      }

      // Snapshot before the dense pass: its sources must stay addressable
      // for backtracking even when the pass later improves them too.
      std::vector<ExtRat> snap = cur;
      std::vector<bool> snap_s2(n);
      for (int v = 0; v < n; ++v) {
        snap_s2[v] = (prov[i + 1][v].tag == Prov::Tag::InEdge);
      }

      for (int v = 0; v < n; ++v) {
        if (snap[v].is_inf()) continue;
        const ExtRat& dv = dist.at(ag.start, v);
        if (dv.is_inf()) continue;
        const Rat depart = rat_max(snap[v].finite(), Rat(dv.finite() / ag.velocity));
        for (int u = 0; u < n; ++u) {
          if (u == v) continue;
          const ExtRat& dvu = dist.at(v, u);
          if (dvu.is_inf()) continue;
          const Rat val = depart + dvu.finite() / ag.velocity;
          if (ExtRat(val) < cur[u]) {
            cur[u] = ExtRat(val);
            A[i + 1][u] = i + 1;
            Prov p;
            p.tag = Prov::Tag::Move;
            p.from = v;
            p.from_step2 = snap_s2[v];
            prov[i + 1][u] = p;
          }
        }
      }
    }
  }

  // In-edge pick-up scan for agent i on the directed pair (u, v).
  void step2(int i, NodeId u, NodeId v, const Rat& l) {
    const Agent& ag = order[i];
    const std::vector<ExtRat>& prev = T[i];
    const ExtRat& dv = dist.at(ag.start, v);
    if (dv.is_inf()) return;
    const Rat dv_t = dv.finite() / ag.velocity;
    if (!(ExtRat(dv_t) < prev[v])) return;
    if (prev[u].is_inf()) return;  // package never passes through u
    const ExtRat& du = dist.at(ag.start, u);
    if (!du.is_inf() && !(du.finite() / ag.velocity > prev[u].finite())) {
      return;  // agent reaches u in time; node handover at u dominates
    }
    const Rat tu = prev[u].finite();
    const int key = dir_key(u, v);

    bool have = false;
    Rat best_x;
    int best_j = -1;
    bool best_via = false;
    auto consider = [&](const Rat& x, int j, bool via) {
      if (!have || x < best_x) {
        have = true;
        best_x = x;
        best_j = j;
        best_via = via;
      }
    };

    const int lo = A[i][u] == 0 ? 0 : A[i][u] - 1;
    for (int j = lo; j < i; ++j) {
      const Agent& fd = order[j];
      if (fd.velocity >= ag.velocity) continue;
      const Rat denom = Rat(1) / ag.velocity + Rat(1) / fd.velocity;
      const ExtRat& dju = dist.at(fd.start, u);
      if (!dju.is_inf()) {
        // Feeder departs u (waiting for the package if it gets there first)
        // and walks into the edge; both reach x from v simultaneously.
        const Rat w = rat_max(tu, Rat(dju.finite() / fd.velocity));
        const Rat x = (w + l / fd.velocity - dv_t) / denom;
        if (x > 0 && x < l) consider(x, j, false);
      }
      auto it = picks[j].find(key);
      if (it != picks[j].end()) {
        // Feeder carries out of its own pick-up point towards v.
        const ExtRat& djv = dist.at(fd.start, v);
        if (!djv.is_inf()) {
          const Rat x =
              ((djv.finite() + 2 * it->second.x) / fd.velocity - dv_t) / denom;
          if (x > 0 && x < l && x <= it->second.x) consider(x, j, true);
        }
      }
    }
    if (!have) return;

    picks[i][key] = PickRec{best_x, best_j, best_via};
    const Rat val = (dv.finite() + 2 * best_x) / ag.velocity;
    if (ExtRat(val) < T[i + 1][v]) {
      T[i + 1][v] = ExtRat(val);
      A[i + 1][v] = i + 1;
      Prov p;
      p.tag = Prov::Tag::InEdge;
      p.edge_u = u;
      prov[i + 1][v] = p;
      s2_edge[i + 1][v] = u;
    }
  }

  // --- backtracking ---------------------------------------------------

  std::vector<RawLeg> legs_to(int row, NodeId v) const {
    if (row == 0) {
      if (v != inst.source) throw Error("internal: dp backtrack lost the package");
      return {};
    }
    const Prov& p = prov[row][v];
    switch (p.tag) {
      case Prov::Tag::Copy:
        return legs_to(row - 1, v);
      case Prov::Tag::InEdge:
        return inedge_chain(row, p.edge_u, v);
      case Prov::Tag::Move: {
        std::vector<RawLeg> c =
            p.from_step2 ? inedge_chain(row, s2_edge[row][p.from], p.from)
                         : legs_to(row - 1, p.from);
        c.push_back(RawLeg{row - 1, GraphPoint::node(p.from),
                           GraphPoint::node(v)});
        return c;
      }
      case Prov::Tag::Base:
        return {};
    }
    throw Error("internal: corrupt dp provenance");
  }

  // Chain realizing agent (row-1)'s in-edge pick-up on (u -> v), ending with
  // that agent dropping the package at node v.
  std::vector<RawLeg> inedge_chain(int row, NodeId u, NodeId v) const {
    const int i = row - 1;
    const PickRec& rec = picks[i].at(dir_key(u, v));
    const GraphPoint meet = GraphPoint::on_edge(inst.graph, v, u, rec.x);
    std::vector<RawLeg> c;
    if (!rec.via_pick) {
      c = legs_to(row - 1, u);
      c.push_back(RawLeg{rec.feeder, GraphPoint::node(u), meet});
    } else {
      c = pick_chain(rec.feeder, u, v, rec.x);
    }
    c.push_back(RawLeg{i, meet, GraphPoint::node(v)});
    return c;
  }

  // Chain after which agent j carries the package from its own pick-up point
  // on (u -> v) up to distance x_end from v (where its successor waits).
  std::vector<RawLeg> pick_chain(int j, NodeId u, NodeId v,
                                 const Rat& x_end) const {
    const PickRec& rec = picks[j].at(dir_key(u, v));
    const GraphPoint mine = GraphPoint::on_edge(inst.graph, v, u, rec.x);
    std::vector<RawLeg> c;
    if (!rec.via_pick) {
      c = legs_to(j, u);
      c.push_back(RawLeg{rec.feeder, GraphPoint::node(u), mine});
    } else {
      c = pick_chain(rec.feeder, u, v, rec.x);
    }
    c.push_back(RawLeg{j, mine, GraphPoint::on_edge(inst.graph, v, u, x_end)});
    return c;
  }
};

}  // namespace

Instance prune_collocated(const Instance& inst) {
  std::map<NodeId, const Agent*> best;
  for (const Agent& a : inst.agents) {
    const Agent*& slot = best[a.start];
    if (!slot || a.velocity > slot->velocity ||
        (a.velocity == slot->velocity && a.id < slot->id)) {
      slot = &a;
    }
  }
  Instance out = inst;
  out.agents.clear();
  for (const Agent& a : inst.agents) {
    if (best[a.start] == &a) out.agents.push_back(a);
  }
  return out;
}

FastDpTables fast_dp_tables(const Instance& inst, bool in_edge_pickups) {
  inst.validate();
  Dp dp(prune_collocated(inst));
  dp.run(in_edge_pickups);
  FastDpTables out;
  out.order = dp.order;
  out.T = dp.T;
  out.A = dp.A;
  for (int i = 0; i < dp.k; ++i) {
    for (const auto& [key, rec] : dp.picks[i]) {
      const Edge& e = dp.inst.graph.edges[key / 2];
      const bool fwd = (key % 2 == 0);
      out.picks.push_back(InEdgePick{dp.order[i].id, fwd ? e.u : e.v,
                                     fwd ? e.v : e.u, rec.x});
    }
  }
  return out;
}

EvalResult solve_fast(const Instance& inst) {
  inst.validate();
  if (inst.source == inst.target) {
    return evaluate_schedule(inst, Handovers{});
  }
  Dp dp(prune_collocated(inst));
  dp.run(true);
  const ExtRat& best = dp.T[dp.k][inst.target];
  if (best.is_inf()) {
    throw Infeasible("no schedule can bring the package to the target");
  }

  std::vector<RawLeg> raw = dp.legs_to(dp.k, inst.target);
  std::vector<RawLeg> merged;
  for (const RawLeg& leg : raw) {
    if (leg.pickup == leg.dropoff) continue;
    if (!merged.empty() && merged.back().agent == leg.agent) {
      merged.back().dropoff = leg.dropoff;  // carrying straight through
    } else {
      merged.push_back(leg);
    }
  }
  Handovers hs;
  hs.reserve(merged.size());
  for (const RawLeg& leg : merged) {
    hs.push_back(Handover{dp.order[leg.agent].id, leg.dropoff});
  }
  EvalResult res = evaluate_schedule(inst, dp.dist, hs);
  if (ExtRat(res.report.delivery_time) != best) {
    throw Error("internal: reconstructed schedule misses the dp optimum");
  }
  return res;
}

}  // namespace delivery
