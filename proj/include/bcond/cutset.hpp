#pragma once

#include <cstdint>
#include <vector>

#include "bcond/network.hpp"

namespace bcond {

// Loop-cutset members, in selection order. Instantiating every member
// renders the network singly connected: a member's outgoing arcs are
// absorbed into its children's tables, while its own table stays behind
// as evidence on its parents.
struct Cutset {
  std::vector<int> members;
};

// One full assignment of states to the cutset members. The index is the
// mixed-radix encoding of the assignment (last member varies fastest).
struct CutsetInstance {
  std::uint64_t index = 0;
  std::vector<int> assignment;
};

// Greedy heuristic: repeatedly peel the acyclic fringe, then take the
// highest-degree core node that has at most one inbound arc inside the
// core (ties by variable name). Not minimal, but always valid and
// deterministic. Singly connected input yields the empty cutset.
Cutset find_loop_cutset(const BeliefNetwork& net);

// A second deterministic cutset for concurrent analyses: same greedy with
// the tie-break reversed, or a strict superset of the primary when both
// heuristics agree.
Cutset find_loop_cutset_alternate(const BeliefNetwork& net);

// True iff conditioning on cs makes the network singly connected.
bool verify_cutset(const BeliefNetwork& net, const Cutset& cs);

// Product of member cardinalities; empty cutset counts 1. Throws when the
// product overflows the safe integer range.
std::uint64_t instance_count(const BeliefNetwork& net, const Cutset& cs);

std::vector<CutsetInstance> enumerate_instances(const BeliefNetwork& net,
                                                const Cutset& cs);
CutsetInstance instance_at(const BeliefNetwork& net, const Cutset& cs,
                           std::uint64_t index);

// The singly connected subproblem for one instance: the transformed
// network plus the member clamps to absorb as evidence.
struct SplitResult {
  BeliefNetwork network;
  Evidence clamps;
};

SplitResult split_network(const BeliefNetwork& net, const Cutset& cs,
                          const CutsetInstance& instance);

}  // namespace bcond
