#include "delivery/gen.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "delivery/errors.hpp"

namespace delivery {

namespace {

// std::uniform_int_distribution is implementation-defined; plain modulo on
// the (fully specified) mt19937_64 stream keeps instances byte-identical
// across platforms. The slight modulo bias is irrelevant for test data.
std::uint64_t pick(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

Rat random_length(std::mt19937_64& rng) {
  // Integer or half-integer in [1, 20]: numerator 2..40 over 2. Divide
  // instead of using the two-argument constructor: mpq_class(n, d) does not
  // canonicalize, and non-canonical values break gmp comparisons downstream.
  return Rat(2 + static_cast<long>(pick(rng, 39))) / 2;
}

}  // namespace

Instance gen_random(GenKind kind, int n, int k, std::uint64_t seed) {
  if (n < 2) throw BadParameters("generated instances need at least 2 nodes");
  if (k < 1) throw BadParameters("generated instances need at least 1 agent");

  std::mt19937_64 rng(seed);
  Instance inst;
  inst.graph.node_count = n;

  // Scrambled labels so path instances exercise layout reconstruction.
  std::vector<NodeId> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[pick(rng, static_cast<std::uint64_t>(i) + 1)]);

  auto add_edge = [&](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    inst.graph.edges.push_back({a, b, random_length(rng)});
  };

  if (kind == GenKind::Path) {
    for (int i = 0; i + 1 < n; ++i) add_edge(perm[i], perm[i + 1]);
  } else {
    // Random spanning tree first (connectivity), then a few extra edges.
    for (int i = 1; i < n; ++i)
      add_edge(perm[i], perm[pick(rng, static_cast<std::uint64_t>(i))]);
    const int extra = static_cast<int>(pick(rng, static_cast<std::uint64_t>(n)));
    for (int e = 0; e < extra; ++e) {
      NodeId a = static_cast<NodeId>(pick(rng, static_cast<std::uint64_t>(n)));
      NodeId b = static_cast<NodeId>(pick(rng, static_cast<std::uint64_t>(n)));
      if (a == b || inst.graph.edge_index(a, b) >= 0) continue;
      add_edge(a, b);
    }
  }

  inst.source = static_cast<NodeId>(pick(rng, static_cast<std::uint64_t>(n)));
  inst.target = static_cast<NodeId>(pick(rng, static_cast<std::uint64_t>(n - 1)));
  if (inst.target >= inst.source) ++inst.target;  // distinct by construction

  for (int i = 0; i < k; ++i) {
    Agent a;
    a.id = i + 1;
    a.start = static_cast<NodeId>(pick(rng, static_cast<std::uint64_t>(n)));
    a.weight = Rat(static_cast<long>(pick(rng, 9)));
    a.velocity = Rat(1 + static_cast<long>(pick(rng, 8)));
    inst.agents.push_back(a);
  }

  inst.validate();
  return inst;
}

}  // namespace delivery
