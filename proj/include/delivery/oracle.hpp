#pragma once

#include "delivery/line.hpp"
#include "delivery/schedule.hpp"

namespace delivery {

// Brute-force reference solvers. Deliberately simple and exponential; they
// share only the core model and the metric with the production solvers.
// Every oracle returns a concrete schedule (re-evaluated through
// evaluate_schedule) so results can be validated independently.
// Size guards throw GuardExceeded instead of silently truncating.

// Variant (i) upper bound: handovers restricted to the nodes of the graph
// with every edge split into `parts` equal pieces; all agent subsequences
// with strictly increasing velocities are enumerated. Equals the optimum
// whenever the optimal pick-up points lie on the subdivision.
// Guards: k <= 6 and n <= 8 (before subdivision).
EvalResult oracle_fast_subdivided(const Instance& inst, int parts);

// Variant (ii), uniform velocities: exact lexicographic optimum by a
// memoized search over (candidate point, used-agent set). Guard: k <= 5.
EvalResult oracle_uniform_lex(const Instance& inst);

// Variant (ii) on the line: exact lexicographic optimum. Enumerates agent
// subsets (carriers right of the source in non-decreasing start order) and,
// per handover, one of two modes: intercept the moving package as early as
// possible, or wait at the own start. Guard: k <= 6.
LineSolution oracle_path_lex(const LineInstance& inst);

// Variant (iii) upper bound with subdivision handovers; agent order is NOT
// restricted to increasing velocities (that pruning is specific to the
// minimum-time objective). Guards as oracle_fast_subdivided.
EvalResult oracle_combined(const Instance& inst, const Rat& epsilon,
                           int parts);

}  // namespace delivery
