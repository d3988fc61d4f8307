#pragma once

#include <vector>

#include "delivery/metric.hpp"
#include "delivery/schedule.hpp"

namespace delivery {

// Keeps, per start node, only the fastest agent (ties: lowest id). Safe for
// the minimum-time objective: a collocated slower agent can always be
// replaced by the faster one without delaying any handover.
Instance prune_collocated(const Instance& inst);

// One in-edge pick-up point: `agent` (original id) receives the package at
// distance `dist_to_v` from node v, strictly inside edge {u, v}, while the
// package crosses the edge from u towards v.
struct InEdgePick {
  int agent = 0;
  NodeId u = -1;
  NodeId v = -1;
  Rat dist_to_v;
};

// DP state exposed for inspection and property tests. Row r of T holds the
// earliest package arrival per node using only the r slowest agents (row 0:
// none). A mirrors T with the 1-based position (in `order`) of the last
// carrying agent; 0 means the package has not moved.
struct FastDpTables {
  std::vector<Agent> order;  // pruned agents, velocity ascending (ties by id)
  std::vector<std::vector<ExtRat>> T;  // (k+1) x n
  std::vector<std::vector<int>> A;     // (k+1) x n
  std::vector<InEdgePick> picks;       // every pick-up point computed
};

FastDpTables fast_dp_tables(const Instance& inst, bool in_edge_pickups = true);

// Variant (i): a minimum-time schedule on a general graph. Throws Infeasible
// when the package cannot reach the target. The reported energy is the cost
// of the returned schedule; it is not minimized (that is variant (ii)).
EvalResult solve_fast(const Instance& inst);

}  // namespace delivery
