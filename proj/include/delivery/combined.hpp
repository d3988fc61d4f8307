#pragma once

#include "delivery/schedule.hpp"

namespace delivery {

// Variant (iii) scoring of a single agent: unit_cost is what one unit of
// travelled-and-carried distance contributes to eps*T + (1-eps)*E.
struct AgentScore {
  int agent_id = 0;
  Rat unit_cost;   // eps/velocity + (1-eps)*weight
  Rat route_cost;  // unit_cost * (d(p,s) + d(s,t))
};

// The agent minimizing route_cost (ties by lowest id).
// Throws EpsilonOutOfRange unless 0 < eps < 1, Infeasible when no agent can
// reach s or t is unreachable.
AgentScore minimal_agent(const Instance& inst, const Rat& epsilon);

// Single-agent schedule of the minimal agent: walk to s, carry straight to
// t. Its combined value is within a factor 3 of the optimum.
EvalResult solve_combined_3approx(const Instance& inst, const Rat& epsilon);

}  // namespace delivery
