#pragma once

#include <cstdint>
#include <optional>

#include "bcond/network.hpp"

namespace bcond {

struct GeneratorParams {
  int node_count = 1;
  int max_parents = 0;
  int max_states = 2;   // state counts drawn from [2, max_states]
  int loop_target = 0;  // number of undirected loops (cyclomatic number)
  std::uint64_t seed = 0;
  // When set, every CPT row gives its first state exactly this mass and
  // splits the remainder evenly. Supports homogeneous-asymmetry studies.
  std::optional<double> asymmetry;
};

// Deterministic: identical params give a bit-identical network.
BeliefNetwork generate_random(const GeneratorParams& params);

}  // namespace bcond
