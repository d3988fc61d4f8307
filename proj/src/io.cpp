#include "delivery/io.hpp"

#include <fstream>
#include <sstream>

#include "delivery/errors.hpp"

namespace delivery {

namespace {

constexpr const char* kInstanceTag = "delivery-instance v1";
constexpr const char* kScheduleTag = "delivery-schedule v1";

// Splits a line into whitespace tokens, dropping everything after '#'.
std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line.substr(0, line.find('#')));
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

int parse_int(const std::string& s, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + s + "'");
  }
}

// Reads the version tag from the first non-empty line.
void expect_tag(std::istream& in, const char* tag) {
  std::string line;
  while (std::getline(in, line)) {
    if (tokenize(line).empty()) continue;
    // The tag line is matched verbatim (minus trailing whitespace).
    std::string trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\r' ||
                                trimmed.back() == '\t'))
      trimmed.pop_back();
    if (trimmed != tag)
      throw ParseError("expected format tag '" + std::string(tag) +
                       "', got '" + trimmed + "'");
    return;
  }
  throw ParseError(std::string("missing format tag '") + tag + "'");
}

std::string point_str(const GraphPoint& p) { return p.str(); }

}  // namespace

Instance parse_instance(std::istream& in) {
  expect_tag(in, kInstanceTag);
  Instance inst;
  bool have_nodes = false, have_source = false, have_target = false;
  int next_agent_id = 0;
  std::string line;
  while (std::getline(in, line)) {
    auto t = tokenize(line);
    if (t.empty()) continue;
    if (t[0] == "nodes" && t.size() == 2) {
      inst.graph.node_count = parse_int(t[1], "node count");
      have_nodes = true;
    } else if (t[0] == "edge" && t.size() == 4) {
      Edge e;
      e.u = parse_int(t[1], "node id");
      e.v = parse_int(t[2], "node id");
      if (e.u > e.v) std::swap(e.u, e.v);
      e.length = parse_rat(t[3]);
      inst.graph.edges.push_back(std::move(e));
    } else if (t[0] == "agent" && (t.size() == 4 || t.size() == 5)) {
      Agent a;
      size_t i = 1;
      a.id = t.size() == 5 ? parse_int(t[i++], "agent id") : next_agent_id;
      a.start = parse_int(t[i++], "agent start");
      a.weight = parse_rat(t[i++]);
      a.velocity = parse_rat(t[i++]);
      next_agent_id = a.id + 1;
      inst.agents.push_back(std::move(a));
    } else if (t[0] == "source" && t.size() == 2) {
      inst.source = parse_int(t[1], "source");
      have_source = true;
    } else if (t[0] == "target" && t.size() == 2) {
      inst.target = parse_int(t[1], "target");
      have_target = true;
    } else {
      throw ParseError("unrecognized instance line: '" + line + "'");
    }
  }
  if (!have_nodes || !have_source || !have_target)
    throw ParseError("instance file misses nodes/source/target");
  inst.validate();
  return inst;
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_instance(in);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << kInstanceTag << "\n";
  out << "nodes " << inst.graph.node_count << "\n";
  for (const Edge& e : inst.graph.edges)
    out << "edge " << e.u << " " << e.v << " " << rat_str(e.length) << "\n";
  for (const Agent& a : inst.agents)
    out << "agent " << a.id << " " << a.start << " " << rat_str(a.weight)
        << " " << rat_str(a.velocity) << "\n";
  out << "source " << inst.source << "\n";
  out << "target " << inst.target << "\n";
  return out.str();
}

ScheduleFile parse_schedule(std::istream& in) {
  // Schedule files are self-contained except for edge lengths, which are
  // only needed to canonicalize interior points; parsing therefore takes the
  // raw tokens at face value and validates points lazily. To keep the format
  // simple we require the caller to re-validate against an instance.
  ScheduleFile sf;
  expect_tag(in, kScheduleTag);
  std::string line;
  // A permissive graph: interior points are reconstructed without length
  // checks (u < v already canonical in files we write).
  while (std::getline(in, line)) {
    auto t = tokenize(line);
    if (t.empty()) continue;
    if (t[0] == "leg" && t.size() >= 2) {
      Leg leg;
      leg.agent = parse_int(t[1], "agent id");
      size_t i = 2;
      auto raw_point = [&]() {
        if (i >= t.size()) throw ParseError("truncated point");
        if (t[i] == "node") {
          NodeId n = parse_int(t.at(i + 1), "node id");
          i += 2;
          return GraphPoint::node(n);
        }
        if (t[i] == "edge") {
          NodeId u = parse_int(t.at(i + 1), "node id");
          NodeId v = parse_int(t.at(i + 2), "node id");
          Rat off = parse_rat(t.at(i + 3));
          i += 4;
          if (u > v) throw ParseError("interior point not canonical");
          return GraphPoint{u, v, off};
        }
        throw ParseError("expected point, got '" + t[i] + "'");
      };
      leg.pickup = raw_point();
      leg.dropoff = raw_point();
      if (i + 3 >= t.size()) throw ParseError("truncated leg line");
      leg.pickup_time = parse_rat(t[i++]);
      leg.dropoff_time = parse_rat(t[i++]);
      leg.approach_distance = parse_rat(t[i++]);
      leg.carry_distance = parse_rat(t[i++]);
      sf.schedule.legs.push_back(std::move(leg));
    } else if (t[0] == "report") {
      for (size_t i = 1; i + 1 < t.size(); i += 2) {
        if (t[i] == "T") sf.report.delivery_time = parse_rat(t[i + 1]);
        else if (t[i] == "E") sf.report.energy = parse_rat(t[i + 1]);
        else if (t[i] == "combined") sf.report.combined = parse_rat(t[i + 1]);
        else throw ParseError("unknown report field '" + t[i] + "'");
      }
    } else {
      throw ParseError("unrecognized schedule line: '" + line + "'");
    }
  }
  return sf;
}

ScheduleFile parse_schedule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_schedule(in);
}

std::string serialize_schedule(const Schedule& schedule,
                               const ObjectiveReport& report) {
  std::ostringstream out;
  out << kScheduleTag << "\n";
  for (const Leg& leg : schedule.legs) {
    out << "leg " << leg.agent << " " << point_str(leg.pickup) << " "
        << point_str(leg.dropoff) << " " << rat_str(leg.pickup_time) << " "
        << rat_str(leg.dropoff_time) << " " << rat_str(leg.approach_distance)
        << " " << rat_str(leg.carry_distance) << "\n";
  }
  out << "report T " << rat_str(report.delivery_time) << " E "
      << rat_str(report.energy);
  if (report.combined) out << " combined " << rat_str(*report.combined);
  out << "\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

}  // namespace delivery
