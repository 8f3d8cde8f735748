#include "bcond/conditioning.hpp"

#include "bcond/polytree.hpp"

namespace bcond {

InstanceSolution solve_instance(const BeliefNetwork& net, const Cutset& cs,
                                const CutsetInstance& instance,
                                std::span<const Evidence> items) {
  auto split = split_network(net, cs, instance);
  PropagationState state(std::move(split.network));

  InstanceSolution sol;
  state.absorb(split.clamps);
  sol.weight = state.evidence_probability();
  for (const auto& item : items) {
    sol.item_likelihoods.push_back(state.absorb(item));
  }
  sol.usable = state.usable();
  sol.beliefs.reserve(net.size());
  for (int v = 0; v < net.size(); ++v) {
    sol.beliefs.push_back(state.belief(v));
  }
  return sol;
}

std::vector<InstanceSolution> solve_all_instances(const BeliefNetwork& net,
                                                  const Cutset& cs,
                                                  std::span<const Evidence> items,
                                                  ExecPolicy policy) {
  if (instance_count(net, cs) > (std::uint64_t{1} << 26)) {
    throw Error("cutset has too many instances for a full conditioning pass");
  }
  const auto instances = enumerate_instances(net, cs);
  std::vector<InstanceSolution> solutions(instances.size());
  parallel_for(instances.size(), policy, [&](std::size_t i) {
    solutions[i] = solve_instance(net, cs, instances[i], items);
  });
  return solutions;
}

InstanceWeightTable init_instance_weights(const BeliefNetwork& net,
                                          const Cutset& cs,
                                          ExecPolicy policy) {
  InstanceWeightTable table;
  const auto solutions = solve_all_instances(net, cs, {}, policy);
  table.weights.reserve(solutions.size());
  for (const auto& s : solutions) table.weights.push_back(s.weight);
  return table;
}

std::vector<double> prior_marginal(
    const std::vector<InstanceSolution>& solutions,
    const InstanceWeightTable& weights, int variable) {
  if (solutions.size() != weights.weights.size() || solutions.empty()) {
    throw Error("prior_marginal needs every instance solved");
  }
  std::vector<double> out(solutions.front().beliefs[variable].size(), 0.0);
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    const double w = weights.weights[i];
    if (w == 0.0) continue;
    const auto& b = solutions[i].beliefs[variable];
    for (std::size_t x = 0; x < out.size(); ++x) out[x] += w * b[x];
  }
  return out;
}

UpdateResult exact_update(const InstanceWeightTable& weights,
                          std::span<const double> likelihoods) {
  if (weights.weights.size() != likelihoods.size()) {
    throw Error("exact_update: likelihood per instance required");
  }
  UpdateResult result;
  result.weights.weights.resize(weights.weights.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < likelihoods.size(); ++i) {
    result.weights.weights[i] = likelihoods[i] * weights.weights[i];
    norm += result.weights.weights[i];
  }
  if (norm <= 0.0) {
    throw ImpossibleEvidenceError("evidence has probability zero");
  }
  for (auto& w : result.weights.weights) w /= norm;
  result.evidence_probability = norm;
  return result;
}

std::vector<double> exact_posterior(
    const std::vector<InstanceSolution>& solutions,
    const InstanceWeightTable& updated_weights, int variable) {
  return prior_marginal(solutions, updated_weights, variable);
}

ExactRun exact_infer(const BeliefNetwork& net, const Cutset& cs,
                     std::span<const Evidence> items, ExecPolicy policy) {
  ExactRun run;
  run.solutions = solve_all_instances(net, cs, items, policy);
  run.weights.weights.reserve(run.solutions.size());
  for (const auto& s : run.solutions) run.weights.weights.push_back(s.weight);

  for (std::size_t k = 0; k < items.size(); ++k) {
    std::vector<double> likelihoods;
    likelihoods.reserve(run.solutions.size());
    for (const auto& s : run.solutions) {
      likelihoods.push_back(s.item_likelihoods[k]);
    }
    auto updated = exact_update(run.weights, likelihoods);
    run.weights = std::move(updated.weights);
    run.item_evidence_probs.push_back(updated.evidence_probability);
  }
  return run;
}

}  // namespace bcond
