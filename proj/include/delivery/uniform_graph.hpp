#pragma once

#include <vector>

#include "delivery/metric.hpp"
#include "delivery/schedule.hpp"

namespace delivery {

// Potential pick-up locations per agent on a uniform-velocity instance:
// points q on a shortest s-t path (d(s,q) + d(q,t) = d(s,t)) that the agent
// reaches no later than the package (d(p_i,q) <= delta + d(s,q), with
// exact equality required for edge-interior points).
struct CandidateSet {
  Rat delta;  // distance from s to the closest agent
  std::vector<std::vector<GraphPoint>> per_agent;  // parallel to inst.agents
};

CandidateSet candidate_pickups(const Instance& inst);

// Variant (ii) on general graphs with equal velocities: delivery time is
// forced to (delta + d(s,t)) / velocity; energy is minimized by a shortest
// path over the handover DAG of candidate pick-up points.
EvalResult solve_uniform(const Instance& inst);

// The shared uniform velocity. Throws NonUniformVelocities otherwise.
Rat uniform_velocity(const Instance& inst);

}  // namespace delivery
