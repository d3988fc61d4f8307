#include "delivery/gadgets.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "delivery/errors.hpp"

namespace delivery {

namespace {

std::vector<std::string> formula_tokens(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

int formula_int(const std::string& tok, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw MalformedFormula(std::string("bad ") + what + ": '" + tok + "'");
  }
}

Literal parse_literal(const std::string& tok) {
  std::string body = tok;
  Literal lit;
  if (!body.empty() && body[0] == '!') {
    lit.negated = true;
    body = body.substr(1);
  }
  if (body.size() < 2 || body[0] != 'u')
    throw MalformedFormula("bad literal '" + tok + "' (expected u<j> or !u<j>)");
  lit.variable = formula_int(body.substr(1), "variable index");
  return lit;
}

std::string literal_str(const Literal& lit) {
  return (lit.negated ? "!u" : "u") + std::to_string(lit.variable);
}

}  // namespace

void EmbeddedFormula::validate() const {
  if (variable_count < 1)
    throw MalformedFormula("at least one variable is required");
  if (clauses.empty()) throw MalformedFormula("at least one clause is required");
  const int x = variable_count;
  const int y = clause_count();
  if (static_cast<int>(pos_side.size()) != x ||
      static_cast<int>(neg_side.size()) != x)
    throw MalformedFormula("embedding lists must cover every variable");
  for (int i = 0; i < y; ++i) {
    const auto& cl = clauses[i];
    if (cl.empty() || cl.size() > 3)
      throw MalformedFormula("clause " + std::to_string(i + 1) +
                             " must have 1 to 3 literals");
    for (size_t a = 0; a < cl.size(); ++a) {
      if (cl[a].variable < 1 || cl[a].variable > x)
        throw MalformedFormula("clause " + std::to_string(i + 1) +
                               " references unknown variable " +
                               std::to_string(cl[a].variable));
      for (size_t b = a + 1; b < cl.size(); ++b)
        if (cl[a].variable == cl[b].variable)
          throw MalformedFormula("clause " + std::to_string(i + 1) +
                                 " uses variable u" +
                                 std::to_string(cl[a].variable) + " twice");
    }
  }
  // The embedding must list exactly the incident clauses, each once, on the
  // side of its polarity.
  for (int j = 1; j <= x; ++j) {
    for (int side = 0; side < 2; ++side) {
      const auto& list = side == 0 ? pos_side[j - 1] : neg_side[j - 1];
      const bool want_neg = side == 1;
      for (size_t a = 0; a < list.size(); ++a) {
        int ci = list[a];
        if (ci < 0 || ci >= y)
          throw MalformedFormula("embedding of u" + std::to_string(j) +
                                 " references unknown clause " +
                                 std::to_string(ci + 1));
        for (size_t b = a + 1; b < list.size(); ++b)
          if (list[b] == ci)
            throw MalformedFormula("embedding of u" + std::to_string(j) +
                                   " lists clause " + std::to_string(ci + 1) +
                                   " twice");
        bool found = false;
        for (const auto& lit : clauses[ci])
          if (lit.variable == j && lit.negated == want_neg) found = true;
        if (!found)
          throw MalformedFormula(
              "embedding of u" + std::to_string(j) + " lists clause " +
              std::to_string(ci + 1) + " on the wrong side");
      }
    }
  }
  for (int i = 0; i < y; ++i)
    for (const auto& lit : clauses[i]) {
      const auto& list =
          lit.negated ? neg_side[lit.variable - 1] : pos_side[lit.variable - 1];
      if (std::count(list.begin(), list.end(), i) != 1)
        throw MalformedFormula("literal " + literal_str(lit) + " of clause " +
                               std::to_string(i + 1) +
                               " is missing from the embedding");
    }
}

bool EmbeddedFormula::satisfied_by(const std::vector<bool>& assignment) const {
  for (const auto& cl : clauses) {
    bool sat = false;
    for (const auto& lit : cl)
      if (assignment[lit.variable - 1] != lit.negated) sat = true;
    if (!sat) return false;
  }
  return true;
}

EmbeddedFormula parse_formula(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    auto toks = formula_tokens(line);
    if (!toks.empty()) rows.push_back(std::move(toks));
  }
  size_t at = 0;
  auto next = [&]() -> const std::vector<std::string>& {
    if (at >= rows.size()) throw MalformedFormula("unexpected end of formula");
    return rows[at++];
  };

  {
    const auto& head = next();
    if (head.size() != 2 || head[0] != "delivery-formula" || head[1] != "v1")
      throw MalformedFormula("missing 'delivery-formula v1' header");
  }
  EmbeddedFormula f;
  {
    const auto& row = next();
    if (row.size() != 2 || row[0] != "variables")
      throw MalformedFormula("expected 'variables <x>'");
    f.variable_count = formula_int(row[1], "variable count");
  }
  int y = 0;
  {
    const auto& row = next();
    if (row.size() != 2 || row[0] != "clauses")
      throw MalformedFormula("expected 'clauses <y>'");
    y = formula_int(row[1], "clause count");
    if (y < 1) throw MalformedFormula("at least one clause is required");
  }
  for (int i = 1; i <= y; ++i) {
    const auto& row = next();
    if (row.size() < 3 || row.size() > 5 || row[0] != "clause")
      throw MalformedFormula("expected 'clause " + std::to_string(i) +
                             " <lit>...'");
    if (formula_int(row[1], "clause id") != i)
      throw MalformedFormula("clause lines must be numbered 1.." +
                             std::to_string(y) + " in order");
    std::vector<Literal> lits;
    for (size_t a = 2; a < row.size(); ++a) lits.push_back(parse_literal(row[a]));
    f.clauses.push_back(std::move(lits));
  }
  if (f.variable_count < 1)
    throw MalformedFormula("at least one variable is required");
  f.pos_side.assign(f.variable_count, {});
  f.neg_side.assign(f.variable_count, {});
  std::vector<std::array<bool, 2>> seen(f.variable_count, {false, false});
  while (at < rows.size()) {
    const auto& row = next();
    if (row.size() < 3 || row[0] != "embed" || (row[2] != "pos" && row[2] != "neg"))
      throw MalformedFormula("expected 'embed <j> pos|neg [<clause>...]'");
    int j = formula_int(row[1], "variable index");
    if (j < 1 || j > f.variable_count)
      throw MalformedFormula("embed line for unknown variable u" +
                             std::to_string(j));
    const int side = row[2] == "pos" ? 0 : 1;
    if (seen[j - 1][side])
      throw MalformedFormula("duplicate embed line for u" + std::to_string(j) +
                             " " + row[2]);
    seen[j - 1][side] = true;
    auto& list = side == 0 ? f.pos_side[j - 1] : f.neg_side[j - 1];
    for (size_t a = 3; a < row.size(); ++a)
      list.push_back(formula_int(row[a], "clause id") - 1);
  }
  f.validate();
  return f;
}

EmbeddedFormula parse_formula_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedFormula("cannot open formula file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_formula(buf.str());
}

std::string serialize_formula(const EmbeddedFormula& f) {
  f.validate();
  std::ostringstream out;
  out << "delivery-formula v1\n";
  out << "variables " << f.variable_count << "\n";
  out << "clauses " << f.clause_count() << "\n";
  for (int i = 0; i < f.clause_count(); ++i) {
    out << "clause " << i + 1;
    for (const auto& lit : f.clauses[i]) out << " " << literal_str(lit);
    out << "\n";
  }
  for (int j = 1; j <= f.variable_count; ++j) {
    out << "embed " << j << " pos";
    for (int ci : f.pos_side[j - 1]) out << " " << ci + 1;
    out << "\n";
    out << "embed " << j << " neg";
    for (int ci : f.neg_side[j - 1]) out << " " << ci + 1;
    out << "\n";
  }
  return out.str();
}

Rat GadgetInstance::min_time() const {
  Rat xr(formula.variable_count), yr(formula.clause_count());
  return 32 * xr * xr * yr * yr;
}

Rat GadgetInstance::min_energy() const {
  Rat xr(formula.variable_count), yr(formula.clause_count());
  return 2 * xr * yr;
}

GadgetInstance build_delivery_instance(const EmbeddedFormula& formula) {
  formula.validate();
  const int x = formula.variable_count;
  const int y = formula.clause_count();
  const Rat xr(x), yr(y);
  const Rat base = 12 * xr * xr * yr * yr;   // first edge; also the length scale
  const Rat big = 128 * xr * xr * yr * yr;   // the two edges only the fastest agent crosses
  const Rat gap = 4 * xr * yr - 1;           // carried by slow agents
  const Rat hop = 2;                         // carried by fast agents

  GadgetInstance g;
  g.formula = formula;
  Graph& graph = g.instance.graph;

  auto add_node = [&](NodeInfo info) -> NodeId {
    g.nodes.push_back(info);
    return graph.node_count++;
  };
  auto add_edge = [&](NodeId a, NodeId b, const Rat& len) {
    if (a > b) std::swap(a, b);
    graph.edges.push_back({a, b, len});
  };

  g.source = add_node({NodeRole::Source, 0, false, 0, -1});
  g.junctions.resize(x + 1);
  for (int j = 1; j <= x + 1; ++j)
    g.junctions[j - 1] = add_node({NodeRole::Junction, j, false, 0, -1});
  g.perch = add_node({NodeRole::Perch, 0, false, 0, -1});
  g.target = add_node({NodeRole::Target, 0, false, 0, -1});

  add_edge(g.source, g.junctions[0], base);
  add_edge(g.junctions[x], g.perch, big);
  add_edge(g.junctions[x], g.target, big);

  // Two internal paths per variable, edges alternating hop / gap so that a
  // fast agent sits immediately left of every hop edge.
  g.paths.assign(x, {});
  for (int j = 1; j <= x; ++j)
    for (int side = 0; side < 2; ++side) {
      auto& path = g.paths[j - 1][side];
      path.push_back(g.junctions[j - 1]);
      for (int pos = 1; pos <= 2 * y - 1; ++pos)
        path.push_back(add_node({NodeRole::PathInner, j, side == 0, pos, -1}));
      path.push_back(g.junctions[j]);
      for (int e = 0; e + 1 < static_cast<int>(path.size()); ++e)
        add_edge(path[e], path[e + 1], e % 2 == 0 ? hop : gap);
    }

  std::vector<NodeId> clause_node(y);
  for (int i = 0; i < y; ++i)
    clause_node[i] = add_node({NodeRole::ClauseNode, 0, false, 0, i});

  // Attachments: the l-th odd inner node of a path connects to the l-th
  // embedded clause of that side, or to a fresh helper node once the side's
  // clause list is exhausted. The edge length equals the package's no-wait
  // arrival time at that inner node, so a slow agent stationed there arrives
  // exactly on time.
  std::vector<NodeId> helper_nodes;
  for (int j = 1; j <= x; ++j)
    for (int side = 0; side < 2; ++side) {
      // Positive literals attach to the path used when the variable is
      // false (side 1), negated literals to the true path (side 0).
      const auto& list =
          side == 0 ? formula.neg_side[j - 1] : formula.pos_side[j - 1];
      for (int l = 1; l <= y; ++l) {
        const NodeId inner = g.paths[j - 1][side][2 * l - 1];
        Rat len = base + (j - 1) * (4 * xr * yr * yr) + (l - 1) * (4 * xr * yr) + 1;
        if (l <= static_cast<int>(list.size())) {
          add_edge(inner, clause_node[list[l - 1]], len);
        } else {
          NodeId h = add_node({NodeRole::HelperNode, j, side == 0, 2 * l - 1, -1});
          helper_nodes.push_back(h);
          add_edge(inner, h, len);
        }
      }
    }

  // Agents. Ids are assigned in construction order, starting at 1.
  auto add_agent = [&](NodeId at, AgentKind kind) {
    Rat w, v;
    switch (kind) {
      case AgentKind::Slow: w = 0; v = 1; break;
      case AgentKind::Fast: w = 1; v = 2; break;
      case AgentKind::VeryFast: w = 0; v = 8; break;
    }
    int id = static_cast<int>(g.instance.agents.size()) + 1;
    g.instance.agents.push_back({id, at, w, v});
    g.agent_kinds.push_back(kind);
  };

  add_agent(g.source, AgentKind::Slow);
  for (int j = 1; j <= x; ++j)
    add_agent(g.junctions[j - 1], AgentKind::Fast);
  for (int j = 1; j <= x; ++j)
    for (int side = 0; side < 2; ++side)
      for (int pos = 2; pos <= 2 * y - 2; pos += 2)
        add_agent(g.paths[j - 1][side][pos], AgentKind::Fast);
  for (int i = 0; i < y; ++i) {
    const int deg = static_cast<int>(formula.clauses[i].size());
    for (int c = 0; c < deg - 1; ++c)
      add_agent(clause_node[i], AgentKind::Slow);
  }
  for (NodeId h : helper_nodes) add_agent(h, AgentKind::Slow);
  add_agent(g.perch, AgentKind::VeryFast);

  g.instance.source = g.source;
  g.instance.target = g.target;

  const int want_k = 4 * x * y - x - y + 2;
  if (static_cast<int>(g.instance.agents.size()) != want_k)
    throw Error("internal: gadget agent census mismatch");
  g.instance.validate();
  return g;
}

namespace {

// The unique agent of the given kind stationed at `node` (smallest id).
int agent_at(const GadgetInstance& g, NodeId node, AgentKind kind) {
  for (size_t i = 0; i < g.instance.agents.size(); ++i)
    if (g.instance.agents[i].start == node && g.agent_kinds[i] == kind)
      return g.instance.agents[i].id;
  throw Error("internal: gadget agent lookup failed");
}

}  // namespace

Schedule assignment_to_schedule(const GadgetInstance& gadget,
                                const std::vector<bool>& assignment) {
  const EmbeddedFormula& f = gadget.formula;
  const int x = f.variable_count;
  const int y = f.clause_count();
  if (static_cast<int>(assignment.size()) != x)
    throw BadParameters("the assignment must give a value for every variable");
  if (!f.satisfied_by(assignment))
    throw UnsatisfiedAssignment("the assignment does not satisfy the formula");

  // Slow agents stationed on each clause node, in id order; each helps on at
  // most one path, and a satisfied clause leaves at least one literal unused,
  // so the deg-1 agents always suffice.
  std::vector<std::vector<int>> clause_agents(y);
  std::vector<size_t> clause_used(y, 0);
  for (size_t i = 0; i < gadget.instance.agents.size(); ++i) {
    const NodeInfo& info = gadget.nodes[gadget.instance.agents[i].start];
    if (info.role == NodeRole::ClauseNode &&
        gadget.agent_kinds[i] == AgentKind::Slow)
      clause_agents[info.clause].push_back(gadget.instance.agents[i].id);
  }

  Handovers hs;
  auto drop = [&](int agent_id, NodeId at) {
    hs.push_back({agent_id, GraphPoint::node(at)});
  };
  const auto adj = gadget.instance.graph.adjacency();

  drop(agent_at(gadget, gadget.source, AgentKind::Slow), gadget.junctions[0]);
  for (int j = 1; j <= x; ++j) {
    const int side = assignment[j - 1] ? 0 : 1;
    const auto& path = gadget.paths[j - 1][side];
    drop(agent_at(gadget, path[0], AgentKind::Fast), path[1]);
    for (int l = 1; l <= y; ++l) {
      // The slow agent attached to the l-th odd inner node.
      const NodeId inner = path[2 * l - 1];
      int slow_id = -1;
      for (const auto& [nb, ei] : adj[inner]) {
        (void)ei;
        const NodeInfo& info = gadget.nodes[nb];
        if (info.role == NodeRole::HelperNode) {
          slow_id = agent_at(gadget, nb, AgentKind::Slow);
        } else if (info.role == NodeRole::ClauseNode) {
          if (clause_used[info.clause] >= clause_agents[info.clause].size())
            throw Error("internal: gadget ran out of clause agents");
          slow_id = clause_agents[info.clause][clause_used[info.clause]++];
        }
      }
      if (slow_id < 0)
        throw Error("internal: gadget inner node lacks an attached agent");
      drop(slow_id, path[2 * l]);
      if (l < y) drop(agent_at(gadget, path[2 * l], AgentKind::Fast), path[2 * l + 1]);
    }
  }
  drop(agent_at(gadget, gadget.perch, AgentKind::VeryFast), gadget.target);

  EvalResult res = evaluate_schedule(gadget.instance, hs);
  if (res.report.delivery_time != gadget.min_time() ||
      res.report.energy != gadget.min_energy())
    throw Error("internal: gadget schedule misses the extremal objectives");
  return res.schedule;
}

std::vector<bool> schedule_to_assignment(const GadgetInstance& gadget,
                                         const Schedule& schedule) {
  const auto violations = validate_schedule(gadget.instance, schedule);
  if (!violations.empty())
    throw NotExtremalSchedule("the schedule does not validate: " +
                              violations.front().message);
  EvalResult ev = evaluate_schedule(gadget.instance, handovers_of(schedule));
  if (ev.report.delivery_time != gadget.min_time() ||
      ev.report.energy != gadget.min_energy())
    throw NotExtremalSchedule(
        "the schedule does not attain the extremal time and energy");

  // Which of the two paths carried the package, per variable.
  const int x = gadget.formula.variable_count;
  std::vector<int> mask(x, 0);
  auto witness = [&](const GraphPoint& p) {
    NodeId cand[2] = {p.u, p.v};
    for (NodeId nid : cand) {
      const NodeInfo& info = gadget.nodes[nid];
      if (info.role == NodeRole::PathInner)
        mask[info.variable - 1] |= info.true_path ? 1 : 2;
    }
  };
  for (const Leg& leg : schedule.legs) {
    witness(leg.pickup);
    witness(leg.dropoff);
  }
  std::vector<bool> assignment(x);
  for (int j = 0; j < x; ++j) {
    if (mask[j] == 1)
      assignment[j] = true;
    else if (mask[j] == 2)
      assignment[j] = false;
    else
      throw NotExtremalSchedule(
          "the schedule must traverse exactly one path per variable");
  }
  if (!gadget.formula.satisfied_by(assignment))
    throw Error("internal: extremal schedule yielded a non-satisfying assignment");
  return assignment;
}

Instance scale_for_combined(const GadgetInstance& gadget, const Rat& epsilon) {
  if (epsilon <= 0 || epsilon >= 1)
    throw EpsilonOutOfRange("epsilon must satisfy 0 < eps < 1");
  Instance scaled = gadget.instance;
  const Rat factor = epsilon / 8;
  for (auto& a : scaled.agents) {
    Rat w = a.weight * factor;
    a.weight = w;
  }
  return scaled;
}

}  // namespace delivery
