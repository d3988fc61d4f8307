#include "delivery/line.hpp"

#include <algorithm>
#include <map>

#include "delivery/errors.hpp"

namespace delivery {

namespace {

std::vector<LineAgent> sorted_agents(const LineInstance& inst) {
  std::vector<LineAgent> sorted = inst.agents;
  std::sort(sorted.begin(), sorted.end(),
            [](const LineAgent& l, const LineAgent& r) {
              if (l.pos != r.pos) return l.pos < r.pos;
              return l.id < r.id;
            });
  return sorted;
}

// Feeds every agent's holding line into the envelope. Left agents contribute
// their chase line y = v*x + pos unconditionally (it stays at or below the
// envelope until the catch point, so inserting it as a full line never
// distorts the envelope on x >= 0). Right agents are rooted at the leftmost
// point where their approach line meets the envelope and are dropped when a
// strictly steeper line already passes through that root.
template <class Env>
std::vector<AgentRay> compute_rays_impl(const std::vector<LineAgent>& sorted,
                                        Env& env) {
  std::vector<AgentRay> rays;
  rays.reserve(sorted.size());
  env.insert(Rat(0), Rat(0), -1);  // the package may always wait at 0
  for (const LineAgent& a : sorted) {
    if (a.pos < 0) {
      env.insert(a.velocity, a.pos, a.id);
      AgentRay r;
      r.agent_id = a.id;
      r.left = true;
      r.discarded = false;
      r.x0 = Rat(-a.pos / a.velocity);
      r.y0 = Rat(0);
      r.slope = a.velocity;
      rays.push_back(r);
      continue;
    }
    auto hit = env.leftmost_intersection(a.pos, a.velocity);
    if (!hit) throw Error("internal: agent approach line misses the envelope");
    AgentRay r;
    r.agent_id = a.id;
    r.left = false;
    r.discarded = hit->slope > a.velocity;
    r.x0 = hit->x;
    r.y0 = hit->y;
    r.slope = a.velocity;
    if (!r.discarded) {
      env.insert(a.velocity, Rat(hit->y - a.velocity * hit->x), a.id);
    }
    rays.push_back(r);
  }
  return rays;
}

struct Phase {
  Rat sigma;    // package coordinate at entry
  Rat depart;   // time the package leaves sigma
  Rat u;        // carry velocity
  Rat y_exit;   // package coordinate at exit
  Rat line_b;   // supporting line y = u*x + line_b
};

struct PhaseMember {
  int agent_id;
  Rat P;     // model position (>= sigma)
  Rat base;  // energy spent reaching sigma before the package departs
  Rat w;
};

struct PhaseResult {
  ExtRat energy;
  std::vector<LineLeg> legs;
};

enum class PickMode { SigmaSource, ExtendPick, HomePick, ShortenPick };

// Minimum-energy relay moving the package from (sigma, depart) to y_exit at
// speed u. States are "member i holds the package at its model position";
// handover points are probed through two line families over
// f_j(q) = E[j] + w_j*(q - P_j): extending j's carry forward (any state,
// P_j <= q) or shortening j's own fetch (states whose last carry is their
// own, q < P_j).
template <class Win>
PhaseResult run_phase(const Phase& ph, std::vector<PhaseMember> members) {
  PhaseResult res;
  if (ph.y_exit == ph.sigma) {
    res.energy = ExtRat(Rat(0));
    return res;
  }
  if (members.empty()) {
    res.energy = ExtRat::infinity();
    return res;
  }
  std::sort(members.begin(), members.end(),
            [](const PhaseMember& l, const PhaseMember& r) {
              if (l.P != r.P) return l.P < r.P;
              if (l.base != r.base) return l.base < r.base;
              if (l.w != r.w) return l.w < r.w;
              return l.agent_id < r.agent_id;
            });
  const size_t n = members.size();
  const Rat D = ph.u * ph.depart;

  std::vector<Rat> q(n);
  for (size_t i = 0; i < n; ++i) {
    Rat bal = (members[i].P + ph.sigma - D) / 2;
    q[i] = (bal > ph.sigma) ? bal : ph.sigma;
  }

  Win extend, own;
  std::vector<ExtRat> E(n, ExtRat::infinity());
  std::vector<PickMode> mode(n, PickMode::SigmaSource);
  std::vector<int> par(n, -1);
  std::vector<bool> own_carry(n, false);

  for (size_t i = 0; i < n; ++i) {
    const PhaseMember& m = members[i];
    ExtRat best = ExtRat::infinity();
    PickMode bm = PickMode::SigmaSource;
    int bp = -1;
    auto relax = [&](const Rat& v, PickMode pm, int pj) {
      if (ExtRat(v) < best) {
        best = ExtRat(v);
        bm = pm;
        bp = pj;
      }
    };
    const Rat fetch_cost = 2 * m.w * (m.P - q[i]);
    if (q[i] == ph.sigma) {
      relax(Rat(m.base + 2 * m.w * (m.P - ph.sigma)), PickMode::SigmaSource,
            -1);
    }
    if (auto r = extend.min_prefix(q[i], q[i])) {
      relax(Rat(r->value + m.base + fetch_cost), PickMode::ExtendPick,
            r->owner);
    }
    if (auto r = extend.min_prefix(m.P, m.P)) {
      relax(Rat(r->value + m.base), PickMode::HomePick, r->owner);
    }
    if (auto r = own.min_in_open(q[i], m.P, q[i], /*hi_inclusive=*/true)) {
      relax(Rat(r->value + m.base + fetch_cost), PickMode::ShortenPick,
            r->owner);
    }
    E[i] = best;
    mode[i] = bm;
    par[i] = bp;
    own_carry[i] = (bm != PickMode::HomePick);
    if (!E[i].is_inf()) {
      const Rat fa = m.w;
      const Rat fb = E[i].finite() - m.w * m.P;
      extend.add(m.P, fa, fb, static_cast<int>(i));
      if (own_carry[i]) own.add(m.P, fa, fb, static_cast<int>(i));
    }
  }

  // Delivery at the exit coordinate.
  const Rat Y = ph.y_exit;
  ExtRat bestE = ExtRat::infinity();
  int del = -1;
  if (auto r = extend.min_prefix(Y, Y)) {
    bestE = ExtRat(r->value);
    del = r->owner;
  }
  {
    const Rat p_hi = 2 * Y - ph.sigma + D;  // keys above it have q_j >= Y
    if (auto r = own.min_in_open(Y, p_hi, Y)) {
      if (ExtRat(r->value) < bestE) {
        bestE = ExtRat(r->value);
        del = r->owner;
      }
    }
  }
  res.energy = bestE;
  if (bestE.is_inf()) return res;

  // Walk parents backwards; each state's dropoff is the next pickup.
  Rat drop = Y;
  int cur = del;
  std::vector<LineLeg> rev;
  while (cur >= 0) {
    Rat pick;
    switch (mode[cur]) {
      case PickMode::SigmaSource:
        pick = ph.sigma;
        break;
      case PickMode::HomePick:
        pick = members[cur].P;
        break;
      default:
        pick = q[cur];
        break;
    }
    if (pick != drop) {
      rev.push_back(LineLeg{members[cur].agent_id, pick, drop});
    }
    drop = pick;
    cur = par[cur];
  }
  res.legs.assign(rev.rbegin(), rev.rend());
  return res;
}

std::vector<PhaseMember> members_for(const Phase& ph,
                                     const std::vector<LineAgent>& sorted) {
  std::vector<PhaseMember> out;
  for (const LineAgent& a : sorted) {
    if (a.velocity != ph.u) continue;
    if (a.pos >= ph.sigma) {
      out.push_back(PhaseMember{a.id, a.pos, Rat(0), a.weight});
    } else if (a.pos >= ph.line_b) {
      // Can still reach sigma before the package departs; model it as
      // standing at sigma with its approach pre-paid.
      out.push_back(
          PhaseMember{a.id, ph.sigma, Rat(a.weight * (ph.sigma - a.pos)), a.weight});
    }
  }
  return out;
}

template <class Env, class Win>
LineSolution solve_line_impl(const LineInstance& inst) {
  LineSolution sol;
  if (inst.target == 0) {
    sol.time = Rat(0);
    sol.energy = Rat(0);
    return sol;
  }
  if (inst.target < 0) throw BadParameters("line target must be non-negative");
  if (inst.agents.empty()) {
    throw Infeasible("no agents available to move the package");
  }
  for (const LineAgent& a : inst.agents) {
    if (a.velocity <= 0) throw BadParameters("agent velocity must be positive");
    if (a.weight < 0) throw BadParameters("agent weight must be non-negative");
  }
  const std::vector<LineAgent> sorted = sorted_agents(inst);

  Env env;
  compute_rays_impl(sorted, env);
  const std::vector<EnvelopeSegment> segs = upper_envelope_segments(env.lines());

  const Rat t = inst.target;

  // Delivery time: first abscissa where the envelope reaches t.
  Rat T;
  {
    bool found = false;
    for (const EnvelopeSegment& s : segs) {
      if (s.a <= 0) continue;
      Rat v_from = s.a * s.x_from + s.b;
      if (t < v_from) continue;  // cannot happen before this segment
      if (!s.x_to.is_inf()) {
        Rat v_to = s.a * s.x_to.finite() + s.b;
        if (t > v_to) continue;
      }
      T = (t - s.b) / s.a;
      found = true;
      break;
    }
    if (!found) throw Infeasible("package can never reach the target");
    sol.time = T;
  }

  // Phases of the envelope trajectory, clipped at t.
  std::vector<Phase> phases;
  for (const EnvelopeSegment& s : segs) {
    if (s.a <= 0) continue;
    Rat y_in = s.a * s.x_from + s.b;
    if (y_in >= t) break;
    Rat y_out = t;
    if (!s.x_to.is_inf()) {
      Rat v_to = s.a * s.x_to.finite() + s.b;
      if (v_to < t) y_out = v_to;
    }
    phases.push_back(Phase{y_in, s.x_from, s.a, y_out, s.b});
    if (y_out == t) break;
  }

  const size_t np = phases.size();
  std::vector<PhaseResult> base(np);
  std::vector<ExtRat> suffixE(np + 1, ExtRat(Rat(0)));
  for (size_t r = 0; r < np; ++r) {
    base[r] = run_phase<Win>(phases[r], members_for(phases[r], sorted));
  }
  for (size_t r = np; r-- > 0;) {
    if (base[r].energy.is_inf()) {
      throw Error("internal: envelope phase has no feasible relay");
    }
    suffixE[r] = ExtRat(Rat(base[r].energy.finite() + suffixE[r + 1].finite()));
  }

  struct CandidatePlan {
    bool has_prefix = false;
    Phase prefix;
    size_t suffix_from = 0;
  };

  ExtRat bestE = suffixE[0];
  CandidatePlan bestPlan;  // base candidate: suffix from 0, no prefix
  PhaseResult bestPrefixResult;

  // Velocity classes, ascending.
  std::map<Rat, Rat> class_delta;  // velocity -> min |pos|
  for (const LineAgent& a : sorted) {
    Rat d = a.pos < 0 ? Rat(-a.pos) : a.pos;
    auto it = class_delta.find(a.velocity);
    if (it == class_delta.end() || d < it->second) {
      class_delta[a.velocity] = d;
    }
  }

  for (const auto& [u_c, delta_c] : class_delta) {
    // Locate the vertex where the envelope's slope first reaches u_c and
    // test whether the fetch line y = u_c*x - delta_c touches there.
    Rat x_v, y_v;
    bool vertex_contact = false;
    {
      size_t idx = segs.size();
      for (size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].a >= u_c) {
          idx = i;
          break;
        }
      }
      if (idx < segs.size()) {
        x_v = segs[idx].x_from;
        y_v = segs[idx].a * x_v + segs[idx].b;
        vertex_contact = (y_v == u_c * x_v - delta_c);
      }
    }
    bool terminal_contact = (t == u_c * T - delta_c);

    Rat splice_y;
    if (vertex_contact && y_v > 0 && y_v < t) {
      splice_y = y_v;
    } else if (terminal_contact) {
      splice_y = t;
    } else {
      continue;
    }

    Phase prefix{Rat(0), Rat(delta_c / u_c), u_c, splice_y, Rat(-delta_c)};
    size_t suffix_from = np;
    if (splice_y < t) {
      size_t rs = np;
      for (size_t r = 0; r < np; ++r) {
        if (phases[r].sigma == splice_y) {
          rs = r;
          break;
        }
      }
      if (rs == np) continue;  // splice vertex not a phase boundary (defensive)
      if (phases[rs].u == u_c) {
        prefix.y_exit = phases[rs].y_exit;  // collinear: absorb that phase
        rs += 1;
      }
      suffix_from = rs;
    }

    PhaseResult pr = run_phase<Win>(prefix, members_for(prefix, sorted));
    if (pr.energy.is_inf()) continue;
    ExtRat total = ExtRat(Rat(pr.energy.finite() + suffixE[suffix_from].finite()));
    if (total < bestE) {
      bestE = total;
      bestPlan.has_prefix = true;
      bestPlan.prefix = prefix;
      bestPlan.suffix_from = suffix_from;
      bestPrefixResult = std::move(pr);
    }
  }

  if (bestE.is_inf()) throw Error("internal: no feasible relay to the target");
  sol.energy = bestE.finite();
  if (bestPlan.has_prefix) {
    sol.legs = bestPrefixResult.legs;
    for (size_t r = bestPlan.suffix_from; r < np; ++r) {
      sol.legs.insert(sol.legs.end(), base[r].legs.begin(),
                      base[r].legs.end());
    }
  } else {
    for (size_t r = 0; r < np; ++r) {
      sol.legs.insert(sol.legs.end(), base[r].legs.begin(),
                      base[r].legs.end());
    }
  }
  return sol;
}

}  // namespace

LineSolution solve_line(const LineInstance& inst) {
  return solve_line_impl<LineEnvelope, WindowedLineMin>(inst);
}

LineSolution solve_line_naive(const LineInstance& inst) {
  return solve_line_impl<NaiveLineSet, NaiveWindowMin>(inst);
}

std::vector<AgentRay> compute_rays(const LineInstance& inst,
                                   std::vector<EnvLine>* env_lines) {
  const std::vector<LineAgent> sorted = sorted_agents(inst);
  LineEnvelope env;
  std::vector<AgentRay> rays = compute_rays_impl(sorted, env);
  if (env_lines) *env_lines = env.lines();
  return rays;
}

GraphPoint PathLayout::point_at(const Graph& g, const Rat& c) const {
  // Binary search the node whose coordinate is the last one <= c.
  size_t lo = 0, hi = coords.size();
  while (lo + 1 < hi) {
    size_t mid = (lo + hi) / 2;
    if (coords[mid] <= c) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (coords[lo] > c || (lo + 1 == coords.size() && coords[lo] != c)) {
    throw UnreachablePoint("coordinate outside the embedded path");
  }
  if (coords[lo] == c) return GraphPoint::node(order[lo]);
  return GraphPoint::on_edge(g, order[lo], order[lo + 1],
                             Rat(c - coords[lo]));
}

PathLayout path_layout(const Instance& inst) {
  const Graph& g = inst.graph;
  const int n = g.node_count;
  if (n == 0) throw NotAPath("graph has no nodes");
  if (static_cast<int>(g.edges.size()) != n - 1) {
    throw NotAPath("a path on n nodes needs exactly n-1 edges");
  }
  auto adj = g.adjacency();
  int deg1 = 0;
  for (int v = 0; v < n; ++v) {
    if (adj[v].size() > 2) throw NotAPath("node degree exceeds 2");
    if (adj[v].size() == 1) ++deg1;
    if (n > 1 && adj[v].empty()) throw NotAPath("isolated node");
  }
  if (n > 1 && deg1 != 2) throw NotAPath("graph is not a single path");

  std::vector<Rat> coord(n, Rat(0));
  std::vector<bool> seen(n, false);
  seen[inst.source] = true;
  // Walk away from the source along both directions.
  bool first_dir = true;
  for (const auto& [nb0, ei0] : adj[inst.source]) {
    Rat sign = first_dir ? Rat(1) : Rat(-1);
    first_dir = false;
    int prev = inst.source;
    int cur = nb0;
    Rat acc = g.edges[ei0].length;
    while (true) {
      coord[cur] = sign * acc;
      seen[cur] = true;
      int next = -1;
      int next_edge = -1;
      for (const auto& [nb, ei] : adj[cur]) {
        if (nb != prev) {
          next = nb;
          next_edge = ei;
        }
      }
      if (next < 0) break;
      acc += g.edges[next_edge].length;
      prev = cur;
      cur = next;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!seen[v]) throw NotAPath("graph is disconnected");
  }
  if (coord[inst.target] < 0) {
    for (int v = 0; v < n; ++v) coord[v] = -coord[v];
  }

  PathLayout layout;
  layout.node_coord = coord;
  layout.target = coord[inst.target];
  std::vector<int> idx(n);
  for (int v = 0; v < n; ++v) idx[v] = v;
  std::sort(idx.begin(), idx.end(),
            [&](int l, int r) { return coord[l] < coord[r]; });
  layout.order.assign(idx.begin(), idx.end());
  layout.coords.reserve(n);
  for (int v : layout.order) layout.coords.push_back(coord[v]);
  return layout;
}

LineInstance line_of_instance(const Instance& inst, const PathLayout& layout) {
  LineInstance li;
  li.target = layout.target;
  li.agents.reserve(inst.agents.size());
  for (const Agent& a : inst.agents) {
    li.agents.push_back(LineAgent{a.id, layout.node_coord[a.start], a.weight,
                                  a.velocity});
  }
  return li;
}

}  // namespace delivery
