#include "delivery/schedule.hpp"

#include <set>
#include <string>

#include "delivery/errors.hpp"

namespace delivery {

namespace {

Rat finite_distance(const Graph& g, const DistanceMatrix& d,
                    const GraphPoint& a, const GraphPoint& b,
                    const char* what) {
  ExtRat dist = point_distance(g, d, a, b);
  if (dist.is_inf())
    throw UnreachablePoint(std::string("unreachable ") + what + ": " +
                           a.str() + " -> " + b.str());
  return dist.finite();
}

}  // namespace

EvalResult evaluate_schedule(const Instance& inst, const Handovers& handovers) {
  return evaluate_schedule(inst, apsp(inst.graph), handovers);
}

EvalResult evaluate_schedule(const Instance& inst, const DistanceMatrix& dist,
                             const Handovers& handovers) {
  EvalResult res;
  res.report.delivery_time = 0;
  res.report.energy = 0;
  if (handovers.empty()) {
    if (inst.source == inst.target) return res;  // empty schedule, (0,0)
    throw EmptyHandoverList("empty handover list but s != t");
  }
  if (!(handovers.back().dropoff == GraphPoint::node(inst.target)))
    throw ParseError("last dropoff is not the target");

  std::set<int> used;
  GraphPoint package_at = GraphPoint::node(inst.source);
  Rat package_time(0);
  for (const Handover& h : handovers) {
    const Agent* agent = inst.agent_by_id(h.agent);
    if (agent == nullptr)
      throw UnknownAgent("unknown agent id " + std::to_string(h.agent));
    if (!used.insert(h.agent).second)
      throw ParseError("agent " + std::to_string(h.agent) +
                       " appears twice in handover list");

    Leg leg;
    leg.agent = h.agent;
    leg.pickup = package_at;
    leg.dropoff = h.dropoff;
    leg.approach_distance = finite_distance(
        inst.graph, dist, GraphPoint::node(agent->start), package_at,
        "approach");
    leg.carry_distance =
        finite_distance(inst.graph, dist, package_at, h.dropoff, "carry");
    Rat agent_arrival = leg.approach_distance / agent->velocity;
    leg.pickup_time = package_time > agent_arrival ? package_time : agent_arrival;
    leg.dropoff_time = leg.pickup_time + leg.carry_distance / agent->velocity;
    res.report.energy +=
        agent->weight * (leg.approach_distance + leg.carry_distance);

    package_at = h.dropoff;
    package_time = leg.dropoff_time;
    res.schedule.legs.push_back(std::move(leg));
  }
  res.report.delivery_time = package_time;
  return res;
}

std::vector<Violation> validate_schedule(const Instance& inst,
                                         const Schedule& schedule) {
  return validate_schedule(inst, apsp(inst.graph), schedule);
}

std::vector<Violation> validate_schedule(const Instance& inst,
                                         const DistanceMatrix& dist,
                                         const Schedule& schedule) {
  std::vector<Violation> out;
  auto flag = [&out](ViolationCode code, std::string msg) {
    out.push_back(Violation{code, std::move(msg)});
  };

  if (schedule.legs.empty()) {
    if (inst.source != inst.target)
      flag(ViolationCode::WrongEndpoints,
           "empty schedule but source differs from target");
    return out;
  }

  if (!(schedule.legs.front().pickup == GraphPoint::node(inst.source)))
    flag(ViolationCode::WrongEndpoints, "first pickup is not the source");
  if (!(schedule.legs.back().dropoff == GraphPoint::node(inst.target)))
    flag(ViolationCode::WrongEndpoints, "last dropoff is not the target");

  std::set<int> used;
  for (size_t i = 0; i < schedule.legs.size(); ++i) {
    const Leg& leg = schedule.legs[i];
    if (inst.agent_by_id(leg.agent) == nullptr) {
      flag(ViolationCode::BadLeg,
           "leg " + std::to_string(i) + " uses unknown agent " +
               std::to_string(leg.agent));
      return out;
    }
    if (!used.insert(leg.agent).second)
      flag(ViolationCode::DuplicateAgent,
           "agent " + std::to_string(leg.agent) + " carries twice");
    if (i > 0) {
      if (!(schedule.legs[i - 1].dropoff == leg.pickup))
        flag(ViolationCode::ContinuityBreak,
             "leg " + std::to_string(i) + " pickup differs from previous dropoff");
      if (leg.pickup_time < schedule.legs[i - 1].dropoff_time)
        flag(ViolationCode::TimeInconsistency,
             "leg " + std::to_string(i) + " starts before previous dropoff");
    }
    if (leg.dropoff_time < leg.pickup_time)
      flag(ViolationCode::TimeInconsistency,
           "leg " + std::to_string(i) + " ends before it starts");
  }
  if (!out.empty()) return out;

  // Re-derive everything from the handover list and compare exactly.
  EvalResult fresh;
  try {
    fresh = evaluate_schedule(inst, dist, handovers_of(schedule));
  } catch (const Error& e) {
    flag(ViolationCode::BadLeg, std::string("re-evaluation failed: ") + e.what());
    return out;
  }
  for (size_t i = 0; i < schedule.legs.size(); ++i) {
    const Leg& got = schedule.legs[i];
    const Leg& want = fresh.schedule.legs[i];
    if (got.approach_distance != want.approach_distance ||
        got.carry_distance != want.carry_distance)
      flag(ViolationCode::DistanceInconsistency,
           "leg " + std::to_string(i) + " stores distances that do not match "
           "shortest-path re-computation");
    if (got.pickup_time != want.pickup_time ||
        got.dropoff_time != want.dropoff_time)
      flag(ViolationCode::TimeInconsistency,
           "leg " + std::to_string(i) + " stores times that do not match "
           "re-computation");
  }
  return out;
}

Rat combined_value(const ObjectiveReport& report, const Rat& epsilon) {
  if (epsilon <= 0 || epsilon >= 1)
    throw EpsilonOutOfRange("epsilon must satisfy 0 < eps < 1, got " +
                            rat_str(epsilon));
  return epsilon * report.delivery_time + (1 - epsilon) * report.energy;
}

Handovers handovers_of(const Schedule& schedule) {
  Handovers out;
  out.reserve(schedule.legs.size());
  for (const Leg& leg : schedule.legs)
    out.push_back(Handover{leg.agent, leg.dropoff});
  return out;
}

}  // namespace delivery
