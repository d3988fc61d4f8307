// Acceptance gate for the delivery suite: ten end-to-end checks, each with a
// wall-clock budget, printing exactly one PASS/FAIL line. The process exits
// non-zero when any check fails, so ctest can gate a release on this binary.
// Every randomized check derives its instances from fixed literal seeds; a
// rerun is bit-identical. All objective comparisons are exact rational
// equality; the only tolerance anywhere is the wall-clock budget itself.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "delivery/combined.hpp"
#include "delivery/envelope.hpp"
#include "delivery/errors.hpp"
#include "delivery/fast_dp.hpp"
#include "delivery/gadgets.hpp"
#include "delivery/gen.hpp"
#include "delivery/line.hpp"
#include "delivery/metric.hpp"
#include "delivery/model.hpp"
#include "delivery/oracle.hpp"
#include "delivery/path_solver.hpp"
#include "delivery/rational.hpp"
#include "delivery/schedule.hpp"
#include "delivery/uniform_graph.hpp"
#include "test_util.hpp"

using namespace delivery;
using testutil::TestRng;

namespace {

std::string pair_str(const Rat& t, const Rat& e) {
  return "(" + rat_str(t) + ", " + rat_str(e) + ")";
}

// ---------------------------------------------------------------------------
// 1. The evaluator reproduces the two-leg relay arithmetic exactly: (T, E) =
//    (8, 72) for the weight-4/weight-2 relay fixture.
std::string crit_two_leg(std::vector<std::string>&) {
  EvalResult r =
      evaluate_schedule(testutil::two_leg_fixture(), testutil::two_leg_handovers());
  if (r.report.delivery_time != Rat(8) || r.report.energy != Rat(72))
    return "expected (8, 72), got " +
           pair_str(r.report.delivery_time, r.report.energy);
  return "";
}

// ---------------------------------------------------------------------------
// 2. The convex combination of the epsilon fixture at eps = 4/5 is exactly
//    99/5.
std::string crit_combined_value(std::vector<std::string>&) {
  EvalResult r =
      evaluate_schedule(testutil::epsilon_fixture(), testutil::epsilon_handovers());
  Rat c = combined_value(r.report, Rat(4) / 5);
  if (c != Rat(99) / 5) return "expected 99/5, got " + rat_str(c);
  return "";
}

// ---------------------------------------------------------------------------
// 3. On the two-variable, one-clause gadget for (u1 | !u2): the fast solver
//    reaches T = 128 exactly, and the canonical schedule of u1=true evaluates
//    to exactly (128, 4) and validates.
EmbeddedFormula two_var_one_clause() {
  EmbeddedFormula f;
  f.variable_count = 2;
  f.clauses = {{{1, false}, {2, true}}};
  f.pos_side = {{0}, {}};
  f.neg_side = {{}, {0}};
  return f;
}

std::string crit_gadget_extremes(std::vector<std::string>&) {
  GadgetInstance g = build_delivery_instance(two_var_one_clause());
  EvalResult fast = solve_fast(g.instance);
  if (fast.report.delivery_time != Rat(128))
    return "solve_fast returned T = " + rat_str(fast.report.delivery_time) +
           ", expected 128";
  Schedule sch = assignment_to_schedule(g, {true, false});
  auto viol = validate_schedule(g.instance, sch);
  if (!viol.empty())
    return "canonical schedule fails validation: " + viol.front().message;
  EvalResult ev = evaluate_schedule(g.instance, handovers_of(sch));
  if (ev.report.delivery_time != g.min_time() ||
      ev.report.energy != g.min_energy() || g.min_time() != Rat(128) ||
      g.min_energy() != Rat(4))
    return "canonical schedule evaluates to " +
           pair_str(ev.report.delivery_time, ev.report.energy) +
           ", expected (128, 4)";
  return "";
}

// ---------------------------------------------------------------------------
// 4. Round trip on five small satisfiable formulas (x <= 3, y <= 2):
//    decoding the canonical schedule of a satisfying assignment yields a
//    satisfying assignment again.
std::string crit_gadget_round_trip(std::vector<std::string>&) {
  struct Case {
    EmbeddedFormula f;
    std::vector<bool> assignment;
  };
  std::vector<Case> cases;

  {  // (u1)
    EmbeddedFormula f;
    f.variable_count = 1;
    f.clauses = {{{1, false}}};
    f.pos_side = {{0}};
    f.neg_side = {{}};
    cases.push_back({f, {true}});
  }
  cases.push_back({two_var_one_clause(), {true, false}});
  {  // (u1 | u2) & (!u1 | u2)
    EmbeddedFormula f;
    f.variable_count = 2;
    f.clauses = {{{1, false}, {2, false}}, {{1, true}, {2, false}}};
    f.pos_side = {{0}, {0, 1}};
    f.neg_side = {{1}, {}};
    cases.push_back({f, {true, true}});
  }
  {  // (u1 | u2 | u3) & (!u1 | !u2 | u3)
    EmbeddedFormula f;
    f.variable_count = 3;
    f.clauses = {{{1, false}, {2, false}, {3, false}},
                 {{1, true}, {2, true}, {3, false}}};
    f.pos_side = {{0}, {0}, {0, 1}};
    f.neg_side = {{1}, {1}, {}};
    cases.push_back({f, {true, false, true}});
  }
  {  // (u1 | u2 | u3)
    EmbeddedFormula f;
    f.variable_count = 3;
    f.clauses = {{{1, false}, {2, false}, {3, false}}};
    f.pos_side = {{0}, {0}, {0}};
    f.neg_side = {{}, {}, {}};
    cases.push_back({f, {true, true, true}});
  }

  for (size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    if (!c.f.satisfied_by(c.assignment))
      return "case " + std::to_string(i + 1) +
             ": the chosen assignment is not satisfying (test bug)";
    GadgetInstance g = build_delivery_instance(c.f);
    Schedule sch = assignment_to_schedule(g, c.assignment);
    std::vector<bool> decoded = schedule_to_assignment(g, sch);
    if (!c.f.satisfied_by(decoded))
      return "case " + std::to_string(i + 1) +
             ": decoded assignment does not satisfy the formula";
  }
  return "";
}

// ---------------------------------------------------------------------------
// 5. Path solver vs the line oracle on 300 seeded random line instances
//    (k <= 6), embedded as path graphs; (T, E) must agree bit-exactly.
//    Afterwards a non-gating scaling sanity: solve_path wall time on
//    generated paths with n = k in {2^10 .. 2^14} should grow by at most
//    ~2.4x per doubling. Ratios are printed; overruns warn but never fail.
Instance path_instance_of_line(const LineInstance& li) {
  std::vector<Rat> xs{Rat(0), li.target};
  for (const LineAgent& a : li.agents) xs.push_back(a.pos);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  auto index_of = [&](const Rat& x) {
    return static_cast<int>(
        std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
  };
  Instance inst;
  inst.graph.node_count = static_cast<int>(xs.size());
  for (size_t i = 1; i < xs.size(); ++i)
    inst.graph.edges.push_back({static_cast<NodeId>(i - 1),
                                static_cast<NodeId>(i), Rat(xs[i] - xs[i - 1])});
  inst.source = index_of(Rat(0));
  inst.target = index_of(li.target);
  for (const LineAgent& a : li.agents)
    inst.agents.push_back({a.id, index_of(a.pos), a.weight, a.velocity});
  return inst;
}

std::string crit_path_solver(std::vector<std::string>& info) {
  for (int i = 0; i < 300; ++i) {
    TestRng rng(81000 + i);
    int k = 1 + rng.pick(6);
    LineInstance li = testutil::random_line_instance(rng, k);
    Instance inst = path_instance_of_line(li);
    EvalResult got = solve_path(inst);
    LineSolution want = oracle_path_lex(li);
    if (got.report.delivery_time != want.time ||
        got.report.energy != want.energy)
      return "seed " + std::to_string(81000 + i) + ": solver " +
             pair_str(got.report.delivery_time, got.report.energy) +
             " vs oracle " + pair_str(want.time, want.energy);
  }

  // Scaling sanity (informational): best-of-N wall time per size.
  double prev = 0.0;
  for (int e = 10; e <= 14; ++e) {
    const int k = 1 << e;
    Instance inst = gen_random(GenKind::Path, k, k, 777000u + static_cast<unsigned>(k));
    const int reps = k <= 4096 ? 3 : 2;
    double best = 1e100;
    size_t legs = 0;
    for (int rep = 0; rep < reps; ++rep) {
      auto t0 = std::chrono::steady_clock::now();
      EvalResult r = solve_path(inst);
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                     .count();
      best = std::min(best, s);
      legs = r.schedule.legs.size();
    }
    char line[160];
    if (prev > 0.005) {
      double ratio = best / prev;
      std::snprintf(line, sizeof line,
                    "scaling: k = %5d  %7.3f s  (x%.2f per doubling)%s  [%zu legs]",
                    k, best, ratio, ratio > 2.4 ? "  RATIO-WARN" : "", legs);
    } else {
      std::snprintf(line, sizeof line, "scaling: k = %5d  %7.3f s  [%zu legs]",
                    k, best, legs);
    }
    info.push_back(line);
    prev = best;
  }
  return "";
}

// ---------------------------------------------------------------------------
// 6. Uniform-velocity solver vs its oracle on 100 seeded graphs (n <= 6,
//    k <= 4), plus agreement with the path solver on 50 path-shaped
//    instances.
std::string crit_uniform_solver(std::vector<std::string>&) {
  for (int i = 0; i < 100; ++i) {
    TestRng rng(82000 + i);
    int n = 2 + rng.pick(5);
    int k = 1 + rng.pick(4);
    Instance inst = testutil::with_uniform_velocity(
        gen_random(GenKind::Graph, n, k, 82000u + static_cast<unsigned>(i)),
        Rat(1 + rng.pick(4)));
    EvalResult got = solve_uniform(inst);
    EvalResult want = oracle_uniform_lex(inst);
    if (got.report.delivery_time != want.report.delivery_time ||
        got.report.energy != want.report.energy)
      return "seed " + std::to_string(82000 + i) + ": solver " +
             pair_str(got.report.delivery_time, got.report.energy) +
             " vs oracle " +
             pair_str(want.report.delivery_time, want.report.energy);
  }
  for (int i = 0; i < 50; ++i) {
    TestRng rng(83000 + i);
    int n = 2 + rng.pick(5);
    int k = 1 + rng.pick(4);
    Instance inst = testutil::with_uniform_velocity(
        gen_random(GenKind::Path, n, k, 83000u + static_cast<unsigned>(i)),
        Rat(1 + rng.pick(4)));
    EvalResult got = solve_uniform(inst);
    EvalResult want = solve_path(inst);
    if (got.report.delivery_time != want.report.delivery_time ||
        got.report.energy != want.report.energy)
      return "path seed " + std::to_string(83000 + i) + ": uniform " +
             pair_str(got.report.delivery_time, got.report.energy) +
             " vs path " +
             pair_str(want.report.delivery_time, want.report.energy);
  }
  return "";
}

// ---------------------------------------------------------------------------
// 7. Fast solver vs the subdivided oracle on 100 seeded instances (n <= 6,
//    k <= 4): never above the oracle at any refinement, and every instance
//    certified exactly equal to the oracle -- at some dyadic D in {1..64}, or
//    failing that at the subdivision matched to the solver schedule's own
//    meet denominators. Dyadic grids cannot certify everything: interception
//    offsets carry denominators like v_i + v_j, so odd factors are generic
//    with heterogeneous velocities and plateaus appear in the dyadic ladder
//    (the grids nest, hence levels never rise). Such instances must still
//    show a net decrease across the ladder, are flagged, and the
//    denominator-matched rerun must reproduce the solver value exactly.
std::string crit_fast_vs_oracle(std::vector<std::string>& info) {
  const int parts_list[] = {1, 2, 4, 8, 16, 32, 64};
  int matched = 0;
  int refined = 0;
  for (int i = 0; i < 100; ++i) {
    TestRng rng(84000 + i);
    int n = 2 + rng.pick(5);
    int k = 1 + rng.pick(4);
    Instance inst =
        gen_random(GenKind::Graph, n, k, 84000u + static_cast<unsigned>(i));
    EvalResult fr = solve_fast(inst);
    const Rat fast = fr.report.delivery_time;
    std::vector<Rat> level;
    for (int parts : parts_list) {
      Rat od = oracle_fast_subdivided(inst, parts).report.delivery_time;
      if (fast > od)
        return "seed " + std::to_string(84000 + i) + ": solver T " +
               rat_str(fast) + " exceeds oracle " + rat_str(od) + " at D=" +
               std::to_string(parts);
      level.push_back(od);
    }
    bool eq = false;
    for (const Rat& od : level) eq = eq || od == fast;
    if (eq) {
      ++matched;
    } else {
      for (size_t j = 0; j + 1 < level.size(); ++j)
        if (level[j + 1] > level[j])
          return "seed " + std::to_string(84000 + i) +
                 ": oracle value rose from D=" + std::to_string(parts_list[j]) +
                 " to D=" + std::to_string(parts_list[j + 1]);
      if (!(level.back() < level.front()))
        return "seed " + std::to_string(84000 + i) +
               ": unmatched instance without a decreasing oracle sequence";

      // Denominator-matched refinement: the smallest grid containing every
      // in-edge handover of the solver schedule uses the lcm of the
      // denominators of offset/length over those points.
      mpz_class dm(1);
      bool inside = false;
      for (const Leg& l : fr.schedule.legs)
        for (const GraphPoint* p : {&l.pickup, &l.dropoff}) {
          if (p->is_node()) continue;
          inside = true;
          Rat frac = p->offset / inst.graph.find_edge(p->u, p->v)->length;
          dm = lcm(dm, frac.get_den());
        }
      if (!inside)
        return "seed " + std::to_string(84000 + i) +
               ": node-only solver schedule unmatched even at D=1";
      if (dm > 4096)
        return "seed " + std::to_string(84000 + i) +
               ": refinement needs D=" + dm.get_str() +
               ", beyond the certification cap";
      int d = static_cast<int>(dm.get_si());
      Rat od = oracle_fast_subdivided(inst, d).report.delivery_time;
      if (od != fast)
        return "seed " + std::to_string(84000 + i) +
               ": denominator-matched oracle at D=" + std::to_string(d) +
               " gives " + rat_str(od) + " vs solver " + rat_str(fast);
      ++refined;
      info.push_back("flagged for refinement: seed " + std::to_string(84000 + i) +
                     " (solver " + rat_str(fast) + ", oracle at D=64 " +
                     rat_str(level.back()) + ", matched at D=" +
                     std::to_string(d) + ")");
    }
  }
  if (matched + refined < 95)
    return "only " + std::to_string(matched + refined) +
           " of 100 instances certified against the oracle";
  info.push_back("oracle matched at a dyadic D on " + std::to_string(matched) +
                 " of 100 instances; denominator-matched refinement certified "
                 "the remaining " + std::to_string(refined));
  return "";
}

// ---------------------------------------------------------------------------
// 8. 3-approximation on 100 seeded instances: value within a factor 3 of the
//    subdivided combined oracle (D=16), and on every oracle-optimal schedule
//    the last carrier attains the minimum unit cost among involved agents.
std::string crit_three_approx(std::vector<std::string>&) {
  const Rat eps_cycle[] = {Rat(1) / 4, Rat(1) / 2, Rat(4) / 5};
  for (int i = 0; i < 100; ++i) {
    TestRng rng(85000 + i);
    int n = 2 + rng.pick(4);
    int k = 1 + rng.pick(3);
    Instance inst =
        gen_random(GenKind::Graph, n, k, 85000u + static_cast<unsigned>(i));
    const Rat& eps = eps_cycle[i % 3];

    EvalResult approx = solve_combined_3approx(inst, eps);
    Rat av = combined_value(approx.report, eps);
    EvalResult orc = oracle_combined(inst, eps, 16);
    Rat ov = combined_value(orc.report, eps);
    if (av > 3 * ov)
      return "seed " + std::to_string(85000 + i) + ": approx " + rat_str(av) +
             " > 3x oracle " + rat_str(ov);

    if (orc.schedule.legs.empty())
      return "seed " + std::to_string(85000 + i) +
             ": oracle produced an empty schedule for s != t";
    auto unit = [&](int agent_id) -> Rat {
      for (const Agent& a : inst.agents)
        if (a.id == agent_id) return eps / a.velocity + (1 - eps) * a.weight;
      return Rat(-1);
    };
    Rat last = unit(orc.schedule.legs.back().agent);
    for (const Leg& leg : orc.schedule.legs) {
      if (unit(leg.agent) < last)
        return "seed " + std::to_string(85000 + i) +
               ": last carrier unit cost " + rat_str(last) +
               " is not minimal (agent " + std::to_string(leg.agent) +
               " has " + rat_str(unit(leg.agent)) + ")";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 9. Envelope structures vs naive scans: 1000 randomized operation
//    sequences, every answer bit-identical (600 upper-envelope sequences,
//    400 windowed-minimum sequences).
std::string crit_envelope_oracle(std::vector<std::string>&) {
  int done_env = 0, done_win = 0;
  for (int sq = 0; sq < 1000; ++sq) {
    TestRng rng(86000 + sq);
    if (sq % 5 < 3) {
      ++done_env;
      NaiveLineSet naive;
      LineEnvelope tree;
      int owner = 0;
      const int ops = 10 + rng.pick(40);
      for (int op = 0; op < ops; ++op) {
        int what = naive.empty() ? 0 : rng.pick(3);
        if (what == 0) {
          Rat a = rng.half_step(-6, 6);
          Rat b = rng.half_step(-10, 10);
          naive.insert(a, b, owner);
          tree.insert(a, b, owner);
          ++owner;
        } else if (what == 1) {
          Rat x = rng.half_step(-8, 12);
          EnvMax m1 = naive.max_at(x);
          EnvMax m2 = tree.max_at(x);
          if (m1.value != m2.value || m1.slope != m2.slope ||
              m1.owner != m2.owner)
            return "sequence " + std::to_string(86000 + sq) +
                   ": max_at diverges at x = " + rat_str(x);
        } else {
          Rat c = rng.half_step(-10, 30);
          Rat m = Rat(1 + rng.pick(8)) / Rat(1 + rng.pick(3));
          auto h1 = naive.leftmost_intersection(c, m);
          auto h2 = tree.leftmost_intersection(c, m);
          if (h1.has_value() != h2.has_value())
            return "sequence " + std::to_string(86000 + sq) +
                   ": leftmost_intersection presence diverges";
          if (h1 && (h1->x != h2->x || h1->y != h2->y ||
                     h1->slope != h2->slope || h1->owner != h2->owner))
            return "sequence " + std::to_string(86000 + sq) +
                   ": leftmost_intersection answer diverges";
        }
      }
    } else {
      ++done_win;
      NaiveWindowMin naive;
      WindowedLineMin tree;
      Rat key(0);
      int owner = 0;
      const int ops = 10 + rng.pick(40);
      for (int op = 0; op < ops; ++op) {
        int what = owner == 0 ? 0 : rng.pick(3);
        if (what == 0) {
          key += Rat(rng.pick(5)) / 2;
          Rat a = rng.half_step(-6, 6);
          Rat b = rng.half_step(-10, 10);
          naive.add(key, a, b, owner);
          tree.add(key, a, b, owner);
          ++owner;
        } else if (what == 1) {
          Rat lo = rng.half_step(-2, 10);
          Rat hi = lo + Rat(1 + rng.pick(12)) / 2;
          Rat x = rng.half_step(-5, 5);
          bool inc = rng.pick(2) == 1;
          auto w1 = naive.min_in_open(lo, hi, x, inc);
          auto w2 = tree.min_in_open(lo, hi, x, inc);
          if (w1.has_value() != w2.has_value())
            return "sequence " + std::to_string(86000 + sq) +
                   ": min_in_open presence diverges";
          if (w1 && (w1->value != w2->value || w1->owner != w2->owner))
            return "sequence " + std::to_string(86000 + sq) +
                   ": min_in_open answer diverges";
        } else {
          Rat hi = rng.half_step(-2, 12);
          Rat x = rng.half_step(-5, 5);
          auto w1 = naive.min_prefix(hi, x);
          auto w2 = tree.min_prefix(hi, x);
          if (w1.has_value() != w2.has_value())
            return "sequence " + std::to_string(86000 + sq) +
                   ": min_prefix presence diverges";
          if (w1 && (w1->value != w2->value || w1->owner != w2->owner))
            return "sequence " + std::to_string(86000 + sq) +
                   ": min_prefix answer diverges";
        }
      }
    }
  }
  if (done_env + done_win != 1000)
    return "sequence bookkeeping is off (test bug)";
  return "";
}

// ---------------------------------------------------------------------------
// 10. Metric invariances on 200 seeded instances: subdividing every edge
//     leaves all original pairwise distances unchanged, and scaling all
//     weights by c scales E by exactly c while T is unchanged.
std::string crit_metric_invariances(std::vector<std::string>&) {
  const Rat scales[] = {Rat(3) / 2, Rat(7) / 3};
  for (int i = 0; i < 200; ++i) {
    TestRng rng(87000 + i);
    int n = 2 + rng.pick(5);
    int k = 1 + rng.pick(4);
    Instance inst =
        gen_random(GenKind::Graph, n, k, 87000u + static_cast<unsigned>(i));

    DistanceMatrix base = apsp(inst.graph);
    for (int parts : {2, 3}) {
      SubdividedGraph sub = subdivide(inst.graph, parts);
      DistanceMatrix ds = apsp(sub.graph);
      for (NodeId u = 0; u < inst.graph.node_count; ++u)
        for (NodeId v = 0; v < inst.graph.node_count; ++v)
          if (!(ds.at(u, v) == base.at(u, v)))
            return "seed " + std::to_string(87000 + i) +
                   ": subdivision (parts=" + std::to_string(parts) +
                   ") changed d(" + std::to_string(u) + "," +
                   std::to_string(v) + ")";
    }

    Handovers hs = handovers_of(solve_fast(inst).schedule);
    EvalResult base_ev = evaluate_schedule(inst, hs);
    for (const Rat& c : scales) {
      EvalResult scaled =
          evaluate_schedule(testutil::with_scaled_weights(inst, c), hs);
      if (scaled.report.delivery_time != base_ev.report.delivery_time)
        return "seed " + std::to_string(87000 + i) +
               ": weight scaling changed T";
      if (scaled.report.energy != c * base_ev.report.energy)
        return "seed " + std::to_string(87000 + i) +
               ": energy is not linear in the weights (c = " + rat_str(c) + ")";
    }
  }
  return "";
}

struct Criterion {
  int number;
  const char* label;
  double budget_seconds;
  std::function<std::string(std::vector<std::string>&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "evaluator two-leg arithmetic", 1, crit_two_leg},
      {2, "evaluator combined objective", 1, crit_combined_value},
      {3, "gadget fast-delivery extremes", 10, crit_gadget_extremes},
      {4, "gadget assignment round-trip", 30, crit_gadget_round_trip},
      {5, "path solver vs line oracle", 60, crit_path_solver},
      {6, "uniform solver vs oracle", 120, crit_uniform_solver},
      {7, "fast solver vs subdivided oracle", 300, crit_fast_vs_oracle},
      {8, "3-approximation and last-carrier rule", 300, crit_three_approx},
      {9, "envelope structures vs naive scans", 30, crit_envelope_oracle},
      {10, "metric invariances", 30, crit_metric_invariances},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::vector<std::string> info;
    std::string note;
    auto t0 = std::chrono::steady_clock::now();
    try {
      note = c.run(info);
    } catch (const std::exception& e) {
      note = std::string("unexpected exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (note.empty() && secs >= c.budget_seconds) note = "over the time budget";
    if (note.empty()) {
      std::printf("criterion %2d: PASS  %-40s (%6.2f s / %3.0f s)\n", c.number,
                  c.label, secs, c.budget_seconds);
    } else {
      ++failures;
      std::printf("criterion %2d: FAIL  %-40s (%6.2f s / %3.0f s)  %s\n",
                  c.number, c.label, secs, c.budget_seconds, note.c_str());
    }
    for (const std::string& line : info)
      std::printf("              - %s\n", line.c_str());
    std::fflush(stdout);
  }

  if (failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
  } else {
    std::printf("acceptance: %d of 10 criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
