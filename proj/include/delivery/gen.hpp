#pragma once

#include <cstdint>

#include "delivery/model.hpp"

namespace delivery {

enum class GenKind { Path, Graph };

// Deterministic pseudo-random instance: the same arguments always produce the
// same instance, on every platform (the generator never uses
// implementation-defined distributions). Edge lengths are integer or
// half-integer rationals in [1, 20], weights integers in [0, 8], velocities
// integers in {1..8}; source and target are distinct and always connected.
// Throws BadParameters for n < 2 or k < 1.
Instance gen_random(GenKind kind, int n, int k, std::uint64_t seed);

}  // namespace delivery
