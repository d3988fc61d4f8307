#pragma once

#include <iosfwd>
#include <string>

#include "delivery/model.hpp"
#include "delivery/schedule.hpp"

namespace delivery {

// Text formats. Both are line oriented, '#' starts a comment, blank lines
// are ignored, and every file begins with a version tag line.
//
// Instance ("delivery-instance v1"):
//   nodes <count>
//   edge <u> <v> <length>          # length as num/den (or plain integer)
//   agent <id> <start> <weight> <velocity>
//   source <node>
//   target <node>
//
// Schedule ("delivery-schedule v1"):
//   leg <agent> <point> <point> <pickup_time> <dropoff_time> <approach> <carry>
//   report T <rat> E <rat> [combined <rat>]
// where <point> is either "node <id>" or "edge <u> <v> <offset-from-u>".
//
// All rationals are serialized exactly; round-trips are lossless.

Instance parse_instance(std::istream& in);
Instance parse_instance_file(const std::string& path);
std::string serialize_instance(const Instance& inst);

struct ScheduleFile {
  Schedule schedule;
  ObjectiveReport report;
};

ScheduleFile parse_schedule(std::istream& in);
ScheduleFile parse_schedule_file(const std::string& path);
std::string serialize_schedule(const Schedule& schedule,
                               const ObjectiveReport& report);

void write_file(const std::string& path, const std::string& content);

}  // namespace delivery
