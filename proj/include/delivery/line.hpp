#pragma once

#include <optional>
#include <vector>

#include "delivery/envelope.hpp"
#include "delivery/model.hpp"

namespace delivery {

// Delivery instance embedded on the real line: the package starts at
// coordinate 0 and must reach `target` > 0. Agents live anywhere.
struct LineAgent {
  int id = 0;
  Rat pos;
  Rat weight;
  Rat velocity;
};

struct LineInstance {
  Rat target;
  std::vector<LineAgent> agents;
};

struct LineLeg {
  int agent;
  Rat pickup;
  Rat dropoff;
};

struct LineSolution {
  Rat time;    // minimum delivery time
  Rat energy;  // minimum energy among time-optimal schedules
  std::vector<LineLeg> legs;
};

// Root/holding-line facts per agent, mainly for tests and structural dumps.
struct AgentRay {
  int agent_id;
  bool left;       // starts left of the source
  bool discarded;  // a strictly steeper holding line already covers its root
  Rat x0;          // root abscissa (activation abscissa for left agents)
  Rat y0;          // package coordinate at the root
  Rat slope;
};

// Lex-optimal (time, energy) solver for line instances. The default entry
// point uses the bucketed envelope and windowed-minimum structures
// (O(k log^2 k)); the naive variant uses plain scans (O(k^2)) and must agree
// bit-for-bit.
LineSolution solve_line(const LineInstance& inst);
LineSolution solve_line_naive(const LineInstance& inst);

// Holding-line computation shared by both variants and by structural dumps:
// feeds every agent through the envelope left to right and reports roots.
// The envelope is returned via `env_lines` as full lines (f0 included).
std::vector<AgentRay> compute_rays(const LineInstance& inst,
                                   std::vector<EnvLine>* env_lines);

// Mapping between a path-shaped graph instance and line coordinates.
struct PathLayout {
  std::vector<NodeId> order;   // path nodes left to right
  std::vector<Rat> coords;     // coordinate of order[i], strictly increasing
  std::vector<Rat> node_coord; // coordinate by node id
  Rat target;                  // coordinate of the instance target (> 0 unless s == t)

  GraphPoint point_at(const Graph& g, const Rat& c) const;
};

// Throws NotAPath unless the graph is a simple path. The source maps to 0;
// coordinates are reflected so the target is positive.
PathLayout path_layout(const Instance& inst);

LineInstance line_of_instance(const Instance& inst, const PathLayout& layout);

}  // namespace delivery
