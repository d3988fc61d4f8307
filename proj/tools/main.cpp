#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "delivery/combined.hpp"
#include "delivery/envelope.hpp"
#include "delivery/errors.hpp"
#include "delivery/fast_dp.hpp"
#include "delivery/gadgets.hpp"
#include "delivery/gen.hpp"
#include "delivery/io.hpp"
#include "delivery/line.hpp"
#include "delivery/oracle.hpp"
#include "delivery/path_solver.hpp"
#include "delivery/uniform_graph.hpp"

namespace {

using namespace delivery;

std::string show(const Rat& q) {
  std::ostringstream os;
  os << rat_str(q) << " (~" << rat_approx(q) << ")";
  return os.str();
}

void print_report(const ObjectiveReport& r) {
  std::cout << "T = " << show(r.delivery_time) << "\n";
  std::cout << "E = " << show(r.energy) << "\n";
  if (r.combined) std::cout << "combined = " << show(*r.combined) << "\n";
  std::cout << "# decimal values in (~...) are display-only approximations\n";
}

void emit_schedule(const std::string& path, const Schedule& schedule,
                   const ObjectiveReport& report) {
  if (!path.empty()) write_file(path, serialize_schedule(schedule, report));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

int parse_int(const std::string& tok, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw BadParameters(std::string("bad ") + what + ": '" + tok + "'");
  }
}

// "<agent> node <id>" or "<agent> edge <u> <v> <offset-from-u>"
Handover parse_handover(const Graph& g, const std::string& text) {
  const auto t = split_ws(text);
  if (t.size() == 3 && t[1] == "node")
    return {parse_int(t[0], "agent id"),
            GraphPoint::node(parse_int(t[2], "node id"))};
  if (t.size() == 5 && t[1] == "edge")
    return {parse_int(t[0], "agent id"),
            GraphPoint::on_edge(g, parse_int(t[2], "node id"),
                                parse_int(t[3], "node id"), parse_rat(t[4]))};
  throw BadParameters("bad handover '" + text +
                      "' (want '<agent> node <id>' or '<agent> edge <u> <v> <off>')");
}

std::vector<bool> parse_assignment(const std::string& s, int variables) {
  if (static_cast<int>(s.size()) != variables)
    throw BadParameters("assignment must have one character per variable");
  std::vector<bool> a(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 't' || s[i] == 'T' || s[i] == '1')
      a[i] = true;
    else if (s[i] == 'f' || s[i] == 'F' || s[i] == '0')
      a[i] = false;
    else
      throw BadParameters("assignment characters must be t/1 or f/0");
  }
  return a;
}

// Maps a line solution back onto the path instance and re-evaluates, so the
// emitted file carries graph points and exact times.
EvalResult line_solution_on_graph(const Instance& inst,
                                  const PathLayout& layout,
                                  const LineSolution& sol) {
  Handovers hs;
  for (const auto& leg : sol.legs)
    hs.push_back({leg.agent, layout.point_at(inst.graph, leg.dropoff)});
  return evaluate_schedule(inst, hs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deliver: exact single-package delivery scheduling on graphs"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- solve ----------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "run a solver on an instance file");
  std::string solve_input, solve_output, solve_variant = "fast", solve_eps;
  solve->add_option("--input", solve_input, "instance file")->required();
  solve->add_option("--variant", solve_variant, "fast | lex | combined");
  solve->add_option("--epsilon", solve_eps, "epsilon for --variant combined");
  solve->add_option("--output", solve_output, "write the schedule file here");
  solve->callback([&]() {
    const Instance inst = parse_instance_file(solve_input);
    if (solve_variant == "fast") {
      EvalResult res = solve_fast(inst);
      print_report(res.report);
      emit_schedule(solve_output, res.schedule, res.report);
    } else if (solve_variant == "lex") {
      EvalResult res;
      try {
        res = solve_path(inst);
      } catch (const NotAPath&) {
        try {
          res = solve_uniform(inst);
        } catch (const NonUniformVelocities&) {
          throw BadParameters(
              "variant lex is solved exactly only on path graphs or with "
              "uniform velocities; the general case is NP-hard - try "
              "'oracle --variant lex' on tiny instances");
        }
      }
      print_report(res.report);
      emit_schedule(solve_output, res.schedule, res.report);
    } else if (solve_variant == "combined") {
      if (solve_eps.empty())
        throw BadParameters("--variant combined requires --epsilon");
      EvalResult res = solve_combined_3approx(inst, parse_rat(solve_eps));
      std::cout << "# 3-approximate schedule (the exact optimum is NP-hard)\n";
      print_report(res.report);
      emit_schedule(solve_output, res.schedule, res.report);
    } else {
      throw BadParameters("unknown variant '" + solve_variant + "'");
    }
  });

  // ---- validate -------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "check a schedule file");
  std::string val_input, val_schedule;
  validate->add_option("--input", val_input, "instance file")->required();
  validate->add_option("--schedule", val_schedule, "schedule file")->required();
  validate->callback([&]() {
    const Instance inst = parse_instance_file(val_input);
    const ScheduleFile sf = parse_schedule_file(val_schedule);
    const auto violations = validate_schedule(inst, sf.schedule);
    if (violations.empty()) {
      std::cout << "ok\n";
    } else {
      for (const auto& v : violations)
        std::cout << "violation: " << v.message << "\n";
      exit_code = 1;
    }
  });

  // ---- evaluate -------------------------------------------------------
  auto* evaluate = app.add_subcommand(
      "evaluate", "expand a handover list into a timed schedule");
  std::string eval_input, eval_output, eval_eps;
  std::vector<std::string> eval_handovers;
  evaluate->add_option("--input", eval_input, "instance file")->required();
  evaluate
      ->add_option("--handover", eval_handovers,
                   "'<agent> node <id>' or '<agent> edge <u> <v> <off>', in "
                   "carry order")
      ->required();
  evaluate->add_option("--epsilon", eval_eps, "also report the combined value");
  evaluate->add_option("--output", eval_output, "write the schedule file here");
  evaluate->callback([&]() {
    const Instance inst = parse_instance_file(eval_input);
    Handovers hs;
    for (const auto& text : eval_handovers)
      hs.push_back(parse_handover(inst.graph, text));
    EvalResult res = evaluate_schedule(inst, hs);
    if (!eval_eps.empty())
      res.report.combined = combined_value(res.report, parse_rat(eval_eps));
    print_report(res.report);
    emit_schedule(eval_output, res.schedule, res.report);
  });

  // ---- oracle ---------------------------------------------------------
  auto* oracle = app.add_subcommand(
      "oracle", "brute-force reference solvers (tiny instances only)");
  std::string orc_input, orc_output, orc_variant = "fast", orc_eps;
  int orc_refine = 1;
  oracle->add_option("--input", orc_input, "instance file")->required();
  oracle->add_option("--variant", orc_variant, "fast | lex | combined");
  oracle->add_option("--refine", orc_refine,
                     "split every edge into this many pieces (fast/combined)");
  oracle->add_option("--epsilon", orc_eps, "epsilon for --variant combined");
  oracle->add_option("--output", orc_output, "write the schedule file here");
  oracle->callback([&]() {
    const Instance inst = parse_instance_file(orc_input);
    if (orc_variant == "fast") {
      EvalResult res = oracle_fast_subdivided(inst, orc_refine);
      print_report(res.report);
      emit_schedule(orc_output, res.schedule, res.report);
    } else if (orc_variant == "lex") {
      EvalResult res;
      try {
        const PathLayout layout = path_layout(inst);
        const LineSolution sol = oracle_path_lex(line_of_instance(inst, layout));
        res = line_solution_on_graph(inst, layout, sol);
      } catch (const NotAPath&) {
        res = oracle_uniform_lex(inst);
      }
      print_report(res.report);
      emit_schedule(orc_output, res.schedule, res.report);
    } else if (orc_variant == "combined") {
      if (orc_eps.empty())
        throw BadParameters("--variant combined requires --epsilon");
      EvalResult res = oracle_combined(inst, parse_rat(orc_eps), orc_refine);
      print_report(res.report);
      emit_schedule(orc_output, res.schedule, res.report);
    } else {
      throw BadParameters("unknown variant '" + orc_variant + "'");
    }
  });

  // ---- gadget ---------------------------------------------------------
  auto* gadget = app.add_subcommand(
      "gadget", "3-CNF hardness gadgets and their schedules");
  gadget->require_subcommand(1);
  std::string gd_formula, gd_output, gd_assignment, gd_schedule, gd_eps;

  auto* gd_build = gadget->add_subcommand(
      "build", "build the delivery instance of an embedded formula");
  gd_build->add_option("--formula", gd_formula, "formula file")->required();
  gd_build->add_option("--output", gd_output, "write the instance file here");
  gd_build->callback([&]() {
    const GadgetInstance g =
        build_delivery_instance(parse_formula_file(gd_formula));
    const std::string text = serialize_instance(g.instance);
    if (gd_output.empty())
      std::cout << text;
    else
      write_file(gd_output, text);
    std::cout << "# extremal objectives: T = " << rat_str(g.min_time())
              << ", E = " << rat_str(g.min_energy()) << "\n";
  });

  auto* gd_sched = gadget->add_subcommand(
      "schedule", "canonical schedule of a satisfying assignment");
  gd_sched->add_option("--formula", gd_formula, "formula file")->required();
  gd_sched
      ->add_option("--assignment", gd_assignment,
                   "one char per variable: t/1 or f/0")
      ->required();
  gd_sched->add_option("--output", gd_output, "write the schedule file here");
  gd_sched->callback([&]() {
    const GadgetInstance g =
        build_delivery_instance(parse_formula_file(gd_formula));
    const Schedule sched = assignment_to_schedule(
        g, parse_assignment(gd_assignment, g.formula.variable_count));
    const EvalResult res = evaluate_schedule(g.instance, handovers_of(sched));
    print_report(res.report);
    emit_schedule(gd_output, res.schedule, res.report);
  });

  auto* gd_assign = gadget->add_subcommand(
      "assignment", "read the satisfying assignment off an extremal schedule");
  gd_assign->add_option("--formula", gd_formula, "formula file")->required();
  gd_assign->add_option("--schedule", gd_schedule, "schedule file")->required();
  gd_assign->callback([&]() {
    const GadgetInstance g =
        build_delivery_instance(parse_formula_file(gd_formula));
    const auto assignment =
        schedule_to_assignment(g, parse_schedule_file(gd_schedule).schedule);
    for (size_t j = 0; j < assignment.size(); ++j)
      std::cout << (j ? " " : "") << "u" << j + 1 << "="
                << (assignment[j] ? "true" : "false");
    std::cout << "\n";
  });

  auto* gd_scale = gadget->add_subcommand(
      "scale", "scale agent weights by epsilon/8 for the combined objective");
  gd_scale->add_option("--formula", gd_formula, "formula file")->required();
  gd_scale->add_option("--epsilon", gd_eps, "epsilon in (0,1)")->required();
  gd_scale->add_option("--output", gd_output, "write the instance file here");
  gd_scale->callback([&]() {
    const GadgetInstance g =
        build_delivery_instance(parse_formula_file(gd_formula));
    const std::string text =
        serialize_instance(scale_for_combined(g, parse_rat(gd_eps)));
    if (gd_output.empty())
      std::cout << text;
    else
      write_file(gd_output, text);
  });

  // ---- gen ------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "deterministic random instances");
  std::string gen_kind = "graph", gen_output;
  int gen_nodes = 6, gen_agents = 3;
  std::uint64_t gen_seed = 1;
  gen->add_option("--kind", gen_kind, "path | graph");
  gen->add_option("--nodes", gen_nodes, "node count (>= 2)");
  gen->add_option("--agents", gen_agents, "agent count (>= 1)");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--output", gen_output, "write the instance file here");
  gen->callback([&]() {
    GenKind kind;
    if (gen_kind == "path")
      kind = GenKind::Path;
    else if (gen_kind == "graph")
      kind = GenKind::Graph;
    else
      throw BadParameters("unknown kind '" + gen_kind + "'");
    const std::string text =
        serialize_instance(gen_random(kind, gen_nodes, gen_agents, gen_seed));
    if (gen_output.empty())
      std::cout << text;
    else
      write_file(gen_output, text);
  });

  // ---- envelope -------------------------------------------------------
  auto* envelope =
      app.add_subcommand("envelope", "structural dumps of the line machinery");
  envelope->require_subcommand(1);
  auto* env_dump = envelope->add_subcommand(
      "dump", "holding lines and their upper envelope for a path instance");
  std::string env_input;
  env_dump->add_option("--input", env_input, "path instance file")->required();
  env_dump->callback([&]() {
    const Instance inst = parse_instance_file(env_input);
    const PathLayout layout = path_layout(inst);
    const LineInstance li = line_of_instance(inst, layout);
    std::vector<EnvLine> lines;
    const auto rays = compute_rays(li, &lines);
    std::cout << "rays:\n";
    for (const auto& r : rays) {
      std::cout << "  agent " << r.agent_id << (r.left ? " left" : " right")
                << " x0=" << rat_str(r.x0) << " y0=" << rat_str(r.y0)
                << " slope=" << rat_str(r.slope)
                << (r.discarded ? " discarded" : "") << "\n";
    }
    std::cout << "envelope:\n";
    for (const auto& seg : upper_envelope_segments(lines)) {
      std::cout << "  [" << rat_str(seg.x_from) << ", " << seg.x_to.str()
                << ") y = " << rat_str(seg.a) << " x + " << rat_str(seg.b)
                << " owner " << seg.owner << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 3;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 4;
  }
  return exit_code;
}
