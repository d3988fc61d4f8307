#pragma once

#include "delivery/schedule.hpp"

namespace delivery {

// Lexicographically optimal (delivery time, energy) schedule on a path
// graph. Runs in O(k log^2 k + n log n). Throws NotAPath when the graph is
// not a simple path and Infeasible when no schedule exists.
EvalResult solve_path(const Instance& inst);

}  // namespace delivery
