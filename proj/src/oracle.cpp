#include "delivery/oracle.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "delivery/errors.hpp"
#include "delivery/metric.hpp"
#include "delivery/uniform_graph.hpp"

namespace delivery {

namespace {

// Multi-seed label relaxation at one carrying velocity: on entry dist holds
// seed labels (infinite = not a seed), on exit the closure under "continue
// along an edge, paying length / vel". origin reports the seed each settled
// label descends from; ties settle the smaller node first, so the result is
// deterministic.
void relax_carry(const Graph& g, const Rat& vel, std::vector<ExtRat>& dist,
                 std::vector<int>& origin) {
  const auto adj = g.adjacency();
  using Item = std::pair<Rat, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  origin.assign(dist.size(), -1);
  for (NodeId q = 0; q < static_cast<NodeId>(dist.size()); ++q) {
    if (!dist[q].is_inf()) {
      origin[q] = q;
      pq.push({dist[q].finite(), q});
    }
  }
  std::vector<char> done(dist.size(), 0);
  while (!pq.empty()) {
    auto [dv, q] = pq.top();
    pq.pop();
    if (done[q]) continue;
    if (dist[q] != ExtRat(dv)) continue;  // superseded queue entry
    done[q] = 1;
    for (const auto& [nb, ei] : adj[q]) {
      if (done[nb]) continue;
      Rat nd = dv + g.edges[ei].length / vel;
      if (ExtRat(nd) < dist[nb]) {
        dist[nb] = ExtRat(nd);
        origin[nb] = origin[q];
        pq.push({nd, nb});
      }
    }
  }
}

}  // namespace

EvalResult oracle_fast_subdivided(const Instance& inst, int parts) {
  inst.validate();
  if (parts < 1)
    throw BadParameters("the subdivision factor must be at least 1");
  const int k = static_cast<int>(inst.agents.size());
  if (k > 6)
    throw GuardExceeded("oracle_fast_subdivided handles at most 6 agents");
  if (inst.graph.node_count > 8)
    throw GuardExceeded("oracle_fast_subdivided handles at most 8 nodes");
  if (inst.source == inst.target) return evaluate_schedule(inst, Handovers{});

  const SubdividedGraph sub = subdivide(inst.graph, parts);
  const int n = sub.graph.node_count;

  // When each agent can be at each subdivision node, walking freely.
  std::vector<std::vector<ExtRat>> reach(k);
  for (int a = 0; a < k; ++a) {
    std::vector<ExtRat> d = sssp(sub.graph, inst.agents[a].start);
    reach[a].resize(n);
    for (NodeId q = 0; q < n; ++q) {
      if (d[q].is_inf()) continue;
      Rat t = d[q].finite() / inst.agents[a].velocity;
      reach[a][q] = ExtRat(t);
    }
  }

  // Carrier orders with strictly increasing velocities cover every useful
  // order for the minimum-time objective; slower-after-faster never helps.
  std::vector<int> by_vel(k);
  std::iota(by_vel.begin(), by_vel.end(), 0);
  std::sort(by_vel.begin(), by_vel.end(), [&](int a, int b) {
    if (inst.agents[a].velocity != inst.agents[b].velocity)
      return inst.agents[a].velocity < inst.agents[b].velocity;
    return inst.agents[a].id < inst.agents[b].id;
  });
  std::vector<std::vector<int>> sequences;
  std::vector<int> cur_seq;
  std::function<void(int)> build = [&](int from) {
    if (!cur_seq.empty()) sequences.push_back(cur_seq);
    for (int i = from; i < k; ++i) {
      int a = by_vel[i];
      if (!cur_seq.empty() &&
          inst.agents[a].velocity <= inst.agents[cur_seq.back()].velocity)
        continue;
      cur_seq.push_back(a);
      build(i + 1);
      cur_seq.pop_back();
    }
  };
  build(0);

  ExtRat best = ExtRat::infinity();
  std::vector<int> best_seq;
  std::vector<std::vector<int>> best_origin;

  for (const auto& seq : sequences) {
    std::vector<ExtRat> cur(n);
    cur[inst.source] = ExtRat(Rat(0));
    std::vector<std::vector<int>> origins;
    for (int a : seq) {
      // Pick-up readiness: the later of package arrival and agent arrival.
      std::vector<ExtRat> lab(n);
      for (NodeId q = 0; q < n; ++q) {
        if (cur[q].is_inf() || reach[a][q].is_inf()) continue;
        const Rat& pk = cur[q].finite();
        const Rat& ar = reach[a][q].finite();
        lab[q] = ExtRat(pk >= ar ? pk : ar);
      }
      std::vector<int> origin;
      relax_carry(sub.graph, inst.agents[a].velocity, lab, origin);
      origins.push_back(std::move(origin));
      cur = std::move(lab);
    }
    if (cur[inst.target] < best) {
      best = cur[inst.target];
      best_seq = seq;
      best_origin = std::move(origins);
    }
  }

  if (best.is_inf())
    throw Infeasible("no schedule can bring the package to the target");

  // Walk the per-stage origins backwards to recover the pick-up chain.
  const int r = static_cast<int>(best_seq.size());
  std::vector<NodeId> picks(r), drops(r);
  NodeId node = inst.target;
  for (int m = r - 1; m >= 0; --m) {
    drops[m] = node;
    picks[m] = best_origin[m][node];
    node = picks[m];
  }
  Handovers hs;
  for (int m = 0; m < r; ++m) {
    if (picks[m] == drops[m]) continue;  // this carrier never moved the package
    hs.push_back({inst.agents[best_seq[m]].id, sub.original_point(drops[m])});
  }
  EvalResult res = evaluate_schedule(inst, hs);
  if (ExtRat(res.report.delivery_time) != best)
    throw Error("internal: subdivided oracle schedule misses its delivery time");
  return res;
}

EvalResult oracle_uniform_lex(const Instance& inst) {
  inst.validate();
  const Rat vel = uniform_velocity(inst);
  const int k = static_cast<int>(inst.agents.size());
  if (k > 5)
    throw GuardExceeded("oracle_uniform_lex handles at most 5 agents");
  if (inst.source == inst.target) return evaluate_schedule(inst, Handovers{});

  const CandidateSet cs = candidate_pickups(inst);
  const DistanceMatrix dist = apsp(inst.graph);
  const GraphPoint s_point = GraphPoint::node(inst.source);
  const GraphPoint t_point = GraphPoint::node(inst.target);
  const Rat dst = dist.at(inst.source, inst.target).finite();

  // Global candidate list; a pick-up at the target itself is vacuous.
  std::vector<GraphPoint> pts;
  for (const auto& list : cs.per_agent)
    for (const auto& p : list) {
      if (p == t_point) continue;
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
  const int np = static_cast<int>(pts.size());
  int s_idx = -1;
  for (int i = 0; i < np; ++i)
    if (pts[i] == s_point) s_idx = i;
  if (s_idx < 0)
    throw Error("internal: the source is missing from the candidate set");

  std::vector<ExtRat> ds(np), dt(np);
  for (int i = 0; i < np; ++i) {
    ds[i] = point_distance(inst.graph, dist, s_point, pts[i]);
    dt[i] = point_distance(inst.graph, dist, pts[i], t_point);
  }
  std::vector<std::vector<ExtRat>> pp(np, std::vector<ExtRat>(np));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j)
      pp[i][j] = point_distance(inst.graph, dist, pts[i], pts[j]);

  // Approach distances and the no-later-than-the-package condition.
  std::vector<std::vector<ExtRat>> app(k, std::vector<ExtRat>(np));
  std::vector<std::vector<char>> feas(k, std::vector<char>(np, 0));
  for (int a = 0; a < k; ++a) {
    const GraphPoint from = GraphPoint::node(inst.agents[a].start);
    for (int i = 0; i < np; ++i) {
      app[a][i] = point_distance(inst.graph, dist, from, pts[i]);
      feas[a][i] =
          !app[a][i].is_inf() && !ds[i].is_inf() && app[a][i] <= ds[i] + cs.delta;
    }
  }

  // Residual minimum energy from (package at point, used agents). The
  // delivery time is forced, so the point determines the clock and the state
  // space is exact.
  struct Entry {
    bool done = false;
    ExtRat val;
    int agent = -1;
    int next = -2;  // candidate index, or -1 for the target
  };
  std::vector<Entry> memo(static_cast<size_t>(np) << k);
  std::function<const Entry&(int, unsigned)> residual =
      [&](int p, unsigned mask) -> const Entry& {
    Entry& e = memo[(static_cast<size_t>(p) << k) | mask];
    if (e.done) return e;
    e.done = true;
    e.val = ExtRat::infinity();
    for (int a = 0; a < k; ++a) {
      if (mask & (1u << a)) continue;
      if (!feas[a][p]) continue;
      // Carry straight to the target.
      if (!dt[p].is_inf() && ds[p] + dt[p].finite() == ExtRat(dst)) {
        Rat c = inst.agents[a].weight * (app[a][p].finite() + dt[p].finite());
        if (ExtRat(c) < e.val) {
          e.val = ExtRat(c);
          e.agent = a;
          e.next = -1;
        }
      }
      // Or hand over at a further candidate point on a shortest path.
      for (int y = 0; y < np; ++y) {
        if (y == p || pp[p][y].is_inf()) continue;
        if (ds[p] + pp[p][y].finite() != ds[y]) continue;
        const Entry& rest = residual(y, mask | (1u << a));
        if (rest.val.is_inf()) continue;
        Rat c = inst.agents[a].weight * (app[a][p].finite() + pp[p][y].finite());
        ExtRat total = rest.val + c;
        if (total < e.val) {
          e.val = total;
          e.agent = a;
          e.next = y;
        }
      }
    }
    return e;
  };

  const Entry& root = residual(s_idx, 0);
  if (root.val.is_inf())
    throw Infeasible("no agent can start the delivery at the source");

  Handovers hs;
  int p = s_idx;
  unsigned mask = 0;
  while (true) {
    const Entry& e = residual(p, mask);
    hs.push_back(
        {inst.agents[e.agent].id, e.next < 0 ? t_point : pts[e.next]});
    if (e.next < 0) break;
    mask |= 1u << e.agent;
    p = e.next;
  }

  EvalResult res = evaluate_schedule(inst, dist, hs);
  Rat want_t = (cs.delta + dst) / vel;
  if (res.report.delivery_time != want_t ||
      ExtRat(res.report.energy) != root.val)
    throw Error("internal: uniform oracle schedule misses its objectives");
  return res;
}

LineSolution oracle_path_lex(const LineInstance& inst) {
  const int k = static_cast<int>(inst.agents.size());
  if (k > 6) throw GuardExceeded("oracle_path_lex handles at most 6 agents");
  if (inst.target < 0)
    throw BadParameters("the line target must be nonnegative");
  if (inst.target == 0) return LineSolution{Rat(0), Rat(0), {}};
  if (inst.agents.empty())
    throw Infeasible("no agents are available to move the package");
  for (const auto& a : inst.agents) {
    if (a.velocity <= 0)
      throw BadParameters("agent velocities must be positive");
    if (a.weight < 0) throw BadParameters("agent weights must be nonnegative");
  }

  std::vector<int> ord(k);
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(), [&](int a, int b) {
    if (inst.agents[a].pos != inst.agents[b].pos)
      return inst.agents[a].pos < inst.agents[b].pos;
    return inst.agents[a].id < inst.agents[b].id;
  });
  const Rat t = inst.target;

  bool found = false;
  Rat best_t, best_e;
  std::vector<LineLeg> best_legs;
  std::vector<LineLeg> legs;

  // Depth-first search over carrier sequences. The package sits at (x, tau)
  // in the hands of `carrier` (picked up at `pick`). Each next carrier either
  // intercepts the moving package as early as possible or waits at its own
  // start; carriers that start right of the source are used in
  // non-decreasing start order.
  std::function<void(Rat, Rat, int, Rat, Rat, unsigned, bool, Rat)> rec =
      [&](Rat x, Rat tau, int carrier, Rat pick, Rat energy, unsigned mask,
          bool have_floor, Rat right_floor) {
        if (carrier >= 0) {
          const LineAgent& c = inst.agents[carrier];
          Rat arr = tau + (t - x) / c.velocity;
          Rat tot = energy + c.weight * (t - x);
          if (!found || arr < best_t || (arr == best_t && tot < best_e)) {
            found = true;
            best_t = arr;
            best_e = tot;
            best_legs = legs;
            best_legs.push_back({c.id, pick, t});
          }
        }
        for (int i = 0; i < k; ++i) {
          const int ai = ord[i];
          if (mask & (1u << ai)) continue;
          const LineAgent& m = inst.agents[ai];
          const bool is_right = m.pos >= 0;
          if (is_right && have_floor && m.pos < right_floor) continue;

          // Intercept: meet the package as early as possible.
          {
            bool ok = true;
            Rat y, meet;
            if (carrier < 0) {
              // The package rests at the source until somebody lifts it.
              y = 0;
              Rat away = m.pos >= 0 ? m.pos : Rat(-m.pos);
              meet = away / m.velocity;
            } else {
              const Rat& u = inst.agents[carrier].velocity;
              if (m.pos >= x) {
                Rat gap = m.pos - x;
                if (gap <= m.velocity * tau) {
                  meet = tau;
                  y = x;
                } else {
                  meet = (gap + u * tau) / (m.velocity + u);
                  y = x + u * (meet - tau);
                }
              } else {
                Rat gap = x - m.pos;
                if (gap <= m.velocity * tau) {
                  meet = tau;
                  y = x;
                } else if (m.velocity > u) {
                  meet = (gap - u * tau) / (m.velocity - u);
                  y = x + u * (meet - tau);
                } else {
                  ok = false;  // a chaser this slow never catches up
                }
              }
            }
            if (ok && y < t && !(found && meet >= best_t)) {
              Rat e2 = energy;
              if (carrier >= 0)
                e2 += inst.agents[carrier].weight * (y - x);
              Rat walk = m.pos >= y ? Rat(m.pos - y) : Rat(y - m.pos);
              e2 += m.weight * walk;
              const size_t mark = legs.size();
              if (carrier >= 0 && y > pick)
                legs.push_back({inst.agents[carrier].id, pick, y});
              rec(y, meet, ai, y, e2, mask | (1u << ai),
                  have_floor || is_right, is_right ? m.pos : right_floor);
              legs.resize(mark);
            }
          }

          // Wait at the own start while the current carrier brings the
          // package there.
          if (carrier >= 0 && m.pos > x && m.pos < t) {
            const Rat& u = inst.agents[carrier].velocity;
            Rat meet = tau + (m.pos - x) / u;
            if (!(found && meet >= best_t)) {
              Rat e2 = energy + inst.agents[carrier].weight * (m.pos - x);
              const size_t mark = legs.size();
              legs.push_back({inst.agents[carrier].id, pick, m.pos});
              rec(m.pos, meet, ai, m.pos, e2, mask | (1u << ai),
                  have_floor || is_right, is_right ? m.pos : right_floor);
              legs.resize(mark);
            }
          }
        }
      };
  rec(Rat(0), Rat(0), -1, Rat(0), Rat(0), 0, false, Rat(0));

  if (!found) throw Infeasible("package can never reach the target");
  return LineSolution{best_t, best_e, best_legs};
}

EvalResult oracle_combined(const Instance& inst, const Rat& epsilon,
                           int parts) {
  inst.validate();
  if (epsilon <= 0 || epsilon >= 1)
    throw EpsilonOutOfRange("epsilon must satisfy 0 < eps < 1");
  if (parts < 1)
    throw BadParameters("the subdivision factor must be at least 1");
  const int k = static_cast<int>(inst.agents.size());
  if (k > 6) throw GuardExceeded("oracle_combined handles at most 6 agents");
  if (inst.graph.node_count > 8)
    throw GuardExceeded("oracle_combined handles at most 8 nodes");
  if (inst.source == inst.target) {
    EvalResult res = evaluate_schedule(inst, Handovers{});
    res.report.combined = combined_value(res.report, epsilon);
    return res;
  }

  const SubdividedGraph sub = subdivide(inst.graph, parts);
  const int n = sub.graph.node_count;
  const DistanceMatrix d = apsp(sub.graph);
  const Rat rest_w = 1 - epsilon;

  // Per ordered agent subset, a Pareto DP over (stage, node): undominated
  // (arrival time, spent energy) pairs. No velocity-monotonicity pruning;
  // that shortcut is specific to the pure minimum-time objective.
  struct State {
    Rat tau;
    Rat energy;
    int prev_node;
    int prev_idx;
  };
  auto insert_state = [](std::vector<State>& list, State s) {
    // Kept sorted by tau ascending with energy strictly descending.
    size_t i = 0;
    while (i < list.size() && list[i].tau < s.tau) ++i;
    if (i > 0 && list[i - 1].energy <= s.energy) return;
    if (i < list.size() && list[i].tau == s.tau && list[i].energy <= s.energy)
      return;
    size_t j = i;
    while (j < list.size() && list[j].energy >= s.energy) ++j;
    list.erase(list.begin() + i, list.begin() + j);
    list.insert(list.begin() + i, std::move(s));
  };

  ExtRat best = ExtRat::infinity();
  Handovers best_hs;

  std::vector<int> seq;
  std::vector<char> used(k, 0);
  std::vector<std::vector<std::vector<State>>> tables;

  auto run_seq = [&]() {
    const int r = static_cast<int>(seq.size());
    tables.assign(r + 1, {});
    tables[0].assign(n, {});
    tables[0][inst.source].push_back({Rat(0), Rat(0), -1, -1});
    for (int m = 0; m < r; ++m) {
      const Agent& a = inst.agents[seq[m]];
      tables[m + 1].assign(n, {});
      const bool last = (m == r - 1);
      for (NodeId q = 0; q < n; ++q) {
        if (tables[m][q].empty()) continue;
        const ExtRat& ap = d.at(a.start, q);
        if (ap.is_inf()) continue;
        Rat ap_t = ap.finite() / a.velocity;
        for (int si = 0; si < static_cast<int>(tables[m][q].size()); ++si) {
          // Copy: insert_state below may reallocate sibling lists, never this
          // one, but the pick time is derived data anyway.
          const State st = tables[m][q][si];
          Rat pick_t = st.tau >= ap_t ? st.tau : ap_t;
          const NodeId y_lo = last ? inst.target : 0;
          const NodeId y_hi = last ? inst.target + 1 : n;
          for (NodeId y = y_lo; y < y_hi; ++y) {
            if (y == q || (!last && y == inst.target)) continue;
            const ExtRat& carry = d.at(q, y);
            if (carry.is_inf()) continue;
            Rat drop_t = pick_t + carry.finite() / a.velocity;
            Rat e2 = st.energy + a.weight * (ap.finite() + carry.finite());
            Rat bound = epsilon * drop_t + rest_w * e2;
            if (ExtRat(bound) >= best) continue;  // the tail only adds cost
            if (last) {
              best = ExtRat(bound);
              // Recover the pick-up chain for this candidate.
              std::vector<NodeId> picks(r), drops(r);
              drops[r - 1] = inst.target;
              picks[r - 1] = q;
              NodeId cn = q;
              int ci = si;
              for (int j = r - 1; j >= 1; --j) {
                const State& s2 = tables[j][cn][ci];
                picks[j - 1] = s2.prev_node;
                drops[j - 1] = cn;
                cn = s2.prev_node;
                ci = s2.prev_idx;
              }
              best_hs.clear();
              for (int j = 0; j < r; ++j)
                best_hs.push_back({inst.agents[seq[j]].id,
                                   sub.original_point(drops[j])});
            } else {
              insert_state(tables[m + 1][y], State{drop_t, e2, q, si});
            }
          }
        }
      }
    }
  };

  std::function<void()> enumerate = [&]() {
    if (!seq.empty()) run_seq();
    if (static_cast<int>(seq.size()) == k) return;
    for (int a = 0; a < k; ++a) {
      if (used[a]) continue;
      used[a] = 1;
      seq.push_back(a);
      enumerate();
      seq.pop_back();
      used[a] = 0;
    }
  };
  enumerate();

  if (best.is_inf())
    throw Infeasible("no schedule can bring the package to the target");
  EvalResult res = evaluate_schedule(inst, best_hs);
  res.report.combined = combined_value(res.report, epsilon);
  if (ExtRat(*res.report.combined) != best)
    throw Error("internal: combined oracle schedule misses its objective");
  return res;
}

}  // namespace delivery
