#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bcond/network.hpp"

namespace bcond {

// Canonical multiply connected topologies for convergence studies.

// Single diamond A -> B, A -> C, B -> D, C -> D. Non-root tables are
// uniform; the root prior is given (defaults to uniform binary).
BeliefNetwork make_diamond(const std::vector<double>& root_prior = {0.5, 0.5});

// Disjoint diamonds, one per entry of root_cards; loop i has root d<i>a
// (that many states) over binary b/c/d nodes. The greedy cutset picks
// exactly the roots, so instance weights are products of root priors.
//
// With cpt_seed 0 every table row is uniform; otherwise rows are random.
// root_first_mass, when set, gives each root's first state that mass and
// splits the rest evenly (the homogeneous-asymmetry construction).
BeliefNetwork make_diamond_grid(const std::vector<int>& root_cards,
                                std::uint64_t cpt_seed = 0,
                                std::optional<double> root_first_mass =
                                    std::nullopt);

}  // namespace bcond
