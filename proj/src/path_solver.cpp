#include "delivery/path_solver.hpp"

#include <unordered_map>
#include <utility>

#include "delivery/errors.hpp"
#include "delivery/line.hpp"

namespace delivery {

namespace {

Rat gap(const Rat& a, const Rat& b) { return a >= b ? Rat(a - b) : Rat(b - a); }

}  // namespace

EvalResult solve_path(const Instance& inst) {
  inst.validate();
  const PathLayout layout = path_layout(inst);
  if (inst.source == inst.target) {
    return evaluate_schedule(inst, Handovers{});
  }
  const LineInstance li = line_of_instance(inst, layout);
  const LineSolution ls = solve_line(li);

  // Rebuild the timed schedule straight from line coordinates. On a path the
  // distance between two points is a coordinate difference, so routing this
  // through the generic evaluator would spend quadratic time and space on an
  // APSP pass and dominate the O(k log^2 k + n log n) budget on big inputs.
  std::unordered_map<int, const LineAgent*> by_id;
  by_id.reserve(li.agents.size());
  for (const LineAgent& a : li.agents) by_id.emplace(a.id, &a);

  EvalResult res;
  Rat clock(0), energy(0);
  for (const LineLeg& leg : ls.legs) {
    const LineAgent& ag = *by_id.at(leg.agent);
    Leg out;
    out.agent = leg.agent;
    out.pickup = layout.point_at(inst.graph, leg.pickup);
    out.dropoff = layout.point_at(inst.graph, leg.dropoff);
    out.approach_distance = gap(ag.pos, leg.pickup);
    out.carry_distance = gap(leg.dropoff, leg.pickup);
    Rat ready = out.approach_distance / ag.velocity;
    out.pickup_time = ready > clock ? ready : clock;
    out.dropoff_time = out.pickup_time + out.carry_distance / ag.velocity;
    clock = out.dropoff_time;
    energy += ag.weight * (out.approach_distance + out.carry_distance);
    res.schedule.legs.push_back(std::move(out));
  }
  res.report.delivery_time = clock;
  res.report.energy = energy;
  if (res.report.delivery_time != ls.time || res.report.energy != ls.energy) {
    throw Error("internal: reconstructed path schedule misses its objectives");
  }
  return res;
}

}  // namespace delivery
