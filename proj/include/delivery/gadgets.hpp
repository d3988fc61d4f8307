#pragma once

#include <array>
#include <string>
#include <vector>

#include "delivery/model.hpp"
#include "delivery/schedule.hpp"

namespace delivery {

// Reduction from embedded planar 3-CNF formulas to delivery instances whose
// time-optimal, energy-minimal schedules encode satisfying assignments.

struct Literal {
  int variable = 0;  // 1-based
  bool negated = false;
};

// A 3-CNF formula together with a fixed plane embedding. The embedding is
// part of the input: per variable, the ordered lists of incident clauses,
// split by literal polarity (in a plane embedding all positive literal edges
// of a variable leave on one side of the variable cycle, all negative ones on
// the other). This module never computes an embedding.
struct EmbeddedFormula {
  int variable_count = 0;                     // x
  std::vector<std::vector<Literal>> clauses;  // y clauses, 1..3 literals each

  // Ordered incident clause indices (0-based) per variable. Clauses with the
  // plain literal u_j attach, in list order, to the path the package takes
  // when u_j is false; negated ones to the path taken when u_j is true. That
  // way the helping agents of a clause sit next to exactly the paths of its
  // falsified literals.
  std::vector<std::vector<int>> pos_side;
  std::vector<std::vector<int>> neg_side;

  int clause_count() const { return static_cast<int>(clauses.size()); }

  // Structural validation; throws MalformedFormula.
  void validate() const;
  bool satisfied_by(const std::vector<bool>& assignment) const;
};

// Formula file format ("delivery-formula v1", '#' comments):
//   delivery-formula v1
//   variables <x>
//   clauses <y>
//   clause <i> <lit> [<lit> [<lit>]]   one line per clause, ids 1..y in order
//   embed <j> pos [<i>...]             ordered incident clause ids
//   embed <j> neg [<i>...]
// Every clause literal must appear in exactly one matching embed list.
EmbeddedFormula parse_formula(const std::string& text);
EmbeddedFormula parse_formula_file(const std::string& path);
std::string serialize_formula(const EmbeddedFormula& f);

enum class NodeRole {
  Source,     // package source s
  Junction,   // chain nodes u_1 .. u_{x+1}
  Perch,      // seat of the fastest agent
  Target,     // package target t
  PathInner,  // internal node of a variable path
  ClauseNode,
  HelperNode,
};

struct NodeInfo {
  NodeRole role = NodeRole::Source;
  int variable = 0;     // Junction: j of u_j; PathInner/HelperNode: owning variable
  bool true_path = false;  // PathInner/HelperNode: which of the two paths
  int inner = 0;        // PathInner: position 1..2y-1; HelperNode: the odd
                        // position it hangs off
  int clause = -1;      // ClauseNode: 0-based clause index
};

enum class AgentKind { Slow, Fast, VeryFast };

struct GadgetInstance {
  Instance instance;
  EmbeddedFormula formula;
  std::vector<NodeInfo> nodes;          // per node id
  std::vector<AgentKind> agent_kinds;   // parallel to instance.agents
  NodeId source = 0;
  NodeId target = 0;
  NodeId perch = 0;
  std::vector<NodeId> junctions;        // u_1 .. u_{x+1}
  // paths[j-1][side]: u_j, inner nodes 1..2y-1, u_{j+1}; side 0 = the path
  // for u_j = true, side 1 = the path for u_j = false.
  std::vector<std::array<std::vector<NodeId>, 2>> paths;

  // The two extremal objective values every satisfying schedule attains.
  Rat min_time() const;    // 32 x^2 y^2
  Rat min_energy() const;  // 2 x y
};

// Builds the delivery instance: chain u_1..u_{x+1} between s and t, two
// internal paths per variable, clause and helper nodes attached to every odd
// path node, agents slow (v=1,w=0) / fast (v=2,w=1) / very fast (v=8,w=0).
// Throws MalformedFormula.
GadgetInstance build_delivery_instance(const EmbeddedFormula& formula);

// The canonical extremal schedule of a satisfying assignment
// (assignment[j-1] = value of variable j). Evaluates to exactly
// (min_time, min_energy). Throws UnsatisfiedAssignment.
Schedule assignment_to_schedule(const GadgetInstance& gadget,
                                const std::vector<bool>& assignment);

// Reads the satisfying assignment back from any valid schedule attaining
// (min_time, min_energy): per variable, which path carried the package.
// Throws NotExtremalSchedule when the schedule is invalid, misses the
// extremal values, or does not traverse exactly one path per variable.
std::vector<bool> schedule_to_assignment(const GadgetInstance& gadget,
                                         const Schedule& schedule);

// Variant (iii) hardness form: the same instance with every agent weight
// multiplied by epsilon/8. Throws EpsilonOutOfRange.
Instance scale_for_combined(const GadgetInstance& gadget, const Rat& epsilon);

}  // namespace delivery
