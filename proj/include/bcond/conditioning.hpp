#pragma once

#include <span>
#include <vector>

#include "bcond/cutset.hpp"
#include "bcond/network.hpp"
#include "bcond/parallel.hpp"

namespace bcond {

// One cutset instance solved against a sequence of evidence items.
struct InstanceSolution {
  double weight = 0.0;  // p(c_1..c_m), the prior instance mass
  // p(item_k | item_1..k-1, instance); zero once the context dies.
  std::vector<double> item_likelihoods;
  // p(x | all items, instance), per node. When the context dies these
  // hold the last usable beliefs and `usable` is false.
  std::vector<std::vector<double>> beliefs;
  bool usable = true;
};

InstanceSolution solve_instance(const BeliefNetwork& net, const Cutset& cs,
                                const CutsetInstance& instance,
                                std::span<const Evidence> items);

// Solves every instance. The parallel lane writes into index-addressed
// slots, so results are bit-identical to the serial lane.
std::vector<InstanceSolution> solve_all_instances(
    const BeliefNetwork& net, const Cutset& cs,
    std::span<const Evidence> items,
    ExecPolicy policy = default_policy());

struct InstanceWeightTable {
  std::vector<double> weights;  // sums to 1 after every normalization
};

// Prior instance masses, w_i = p(c_1..c_m), via each subproblem's
// accumulated normalizer.
InstanceWeightTable init_instance_weights(const BeliefNetwork& net,
                                          const Cutset& cs,
                                          ExecPolicy policy = default_policy());

// p(x) = sum_i p(x | instance i) w_i; requires every instance solved.
std::vector<double> prior_marginal(
    const std::vector<InstanceSolution>& solutions,
    const InstanceWeightTable& weights, int variable);

struct UpdateResult {
  InstanceWeightTable weights;  // w_i* = l_i w_i / p(e)
  double evidence_probability = 0.0;
};

// Throws ImpossibleEvidenceError when p(e) = 0.
UpdateResult exact_update(const InstanceWeightTable& weights,
                          std::span<const double> likelihoods);

std::vector<double> exact_posterior(
    const std::vector<InstanceSolution>& solutions,
    const InstanceWeightTable& updated_weights, int variable);

// Full exact pipeline: solve all instances against the evidence items and
// chain the weight updates.
struct ExactRun {
  std::vector<InstanceSolution> solutions;
  InstanceWeightTable weights;                 // final, joint with all items
  std::vector<double> item_evidence_probs;     // p(item_k | item_1..k-1)
};

ExactRun exact_infer(const BeliefNetwork& net, const Cutset& cs,
                     std::span<const Evidence> items,
                     ExecPolicy policy = default_policy());

}  // namespace bcond
