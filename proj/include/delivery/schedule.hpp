#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delivery/metric.hpp"
#include "delivery/model.hpp"
#include "delivery/rational.hpp"

namespace delivery {

// One carrying leg: the agent walks from its start to `pickup`, picks the
// package up there and carries it to `dropoff`. Distances are shortest-path
// distances; explicit routes are never stored.
struct Leg {
  int agent = 0;
  GraphPoint pickup;
  GraphPoint dropoff;
  Rat pickup_time;
  Rat dropoff_time;
  Rat approach_distance;  // start -> pickup, package-free
  Rat carry_distance;     // pickup -> dropoff, carrying
};

// A full delivery schedule. The empty schedule is the (only) valid schedule
// for s == t instances.
struct Schedule {
  std::vector<Leg> legs;
};

struct ObjectiveReport {
  Rat delivery_time;             // T
  Rat energy;                    // E
  std::optional<Rat> combined;   // eps*T + (1-eps)*E when requested
};

// A handover list is the compact description of a schedule: who carries, in
// order, and where each carrier drops the package. Pick-up locations are
// implied (previous drop-off; the first pick-up is at s).
struct Handover {
  int agent = 0;
  GraphPoint dropoff;
};
using Handovers = std::vector<Handover>;

struct EvalResult {
  Schedule schedule;
  ObjectiveReport report;
};

// Expands a handover list into a timed schedule and its objectives:
//   pickup_time_i  = max(previous dropoff_time, d(p_i, pickup_i) / v_i)
//   dropoff_time_i = pickup_time_i + d(pickup_i, dropoff_i) / v_i
//   E              = sum_i w_i * (approach_i + carry_i)
// Throws UnknownAgent, UnreachablePoint, EmptyHandoverList, ParseError (on a
// duplicated agent id or when the last dropoff is not t).
// An empty handover list is accepted exactly when s == t (empty schedule).
EvalResult evaluate_schedule(const Instance& inst, const Handovers& handovers);
EvalResult evaluate_schedule(const Instance& inst, const DistanceMatrix& dist,
                             const Handovers& handovers);

enum class ViolationCode {
  WrongEndpoints,
  ContinuityBreak,
  DuplicateAgent,
  TimeInconsistency,
  DistanceInconsistency,
  BadLeg,
};

struct Violation {
  ViolationCode code;
  std::string message;
};

// Checks every schedule invariant and re-derives all times and distances via
// evaluate_schedule, comparing exactly. Returns the (possibly empty) list of
// violations instead of throwing.
std::vector<Violation> validate_schedule(const Instance& inst,
                                         const Schedule& schedule);
std::vector<Violation> validate_schedule(const Instance& inst,
                                         const DistanceMatrix& dist,
                                         const Schedule& schedule);

// eps*T + (1-eps)*E, exact. Throws EpsilonOutOfRange unless 0 < eps < 1.
Rat combined_value(const ObjectiveReport& report, const Rat& epsilon);

// Handover list of an existing schedule (inverse of evaluate_schedule).
Handovers handovers_of(const Schedule& schedule);

}  // namespace delivery
