#pragma once

#include <cstdint>
#include <vector>

#include "bcond/network.hpp"
#include "bcond/parallel.hpp"

namespace bcond {

// Brute-force inference by total enumeration of the joint. Deliberately
// naive; the ground truth for everything desk-scale.
namespace oracle {

constexpr std::uint64_t kDefaultStateCap = std::uint64_t{1} << 22;

struct JointQuery {
  Evidence evidence;
  int target = -1;
};

// p(target | evidence). Throws when the full joint exceeds the cap or the
// evidence has probability zero.
std::vector<double> exact_posterior_enumeration(
    const BeliefNetwork& net, const JointQuery& query,
    std::uint64_t state_cap = kDefaultStateCap,
    ExecPolicy policy = default_policy());

struct AllPosteriors {
  std::vector<std::vector<double>> per_variable;
  double evidence_probability = 1.0;
};

// One enumeration pass accumulating every variable's posterior. The space
// is split into fixed lexicographic chunks, each summed with compensation
// and merged in chunk order, so serial and parallel lanes agree bitwise.
AllPosteriors all_posteriors(const BeliefNetwork& net, const Evidence& ev,
                             std::uint64_t state_cap = kDefaultStateCap,
                             ExecPolicy policy = default_policy());

}  // namespace oracle
}  // namespace bcond
