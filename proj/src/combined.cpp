#include "delivery/combined.hpp"

#include "delivery/errors.hpp"
#include "delivery/metric.hpp"

namespace delivery {

AgentScore minimal_agent(const Instance& inst, const Rat& epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) {
    throw EpsilonOutOfRange("epsilon must satisfy 0 < eps < 1");
  }
  inst.validate();
  std::vector<ExtRat> from_s = sssp(inst.graph, inst.source);
  if (from_s[inst.target].is_inf()) {
    throw Infeasible("source and target are disconnected");
  }
  const Rat dst = from_s[inst.target].finite();

  bool have = false;
  AgentScore best;
  for (const Agent& a : inst.agents) {
    if (from_s[a.start].is_inf()) continue;
    const Rat unit = epsilon / a.velocity + (1 - epsilon) * a.weight;
    const Rat route = unit * (from_s[a.start].finite() + dst);
    if (!have || route < best.route_cost ||
        (route == best.route_cost && a.id < best.agent_id)) {
      have = true;
      best.agent_id = a.id;
      best.unit_cost = unit;
      best.route_cost = route;
    }
  }
  if (!have) throw Infeasible("no agent can reach the source");
  return best;
}

EvalResult solve_combined_3approx(const Instance& inst, const Rat& epsilon) {
  AgentScore pick = minimal_agent(inst, epsilon);
  Handovers hs;
  if (inst.source != inst.target) {
    hs.push_back(Handover{pick.agent_id, GraphPoint::node(inst.target)});
  }
  EvalResult res = evaluate_schedule(inst, hs);
  res.report.combined = combined_value(res.report, epsilon);
  return res;
}

}  // namespace delivery
