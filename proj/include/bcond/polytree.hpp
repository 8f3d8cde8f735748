#pragma once

#include <vector>

#include "bcond/network.hpp"

namespace bcond {

// Exact belief propagation for singly connected networks. Evidence is
// absorbed incrementally; each absorption reruns one collect/distribute
// sweep (linear in total table size) and reports the likelihood of the
// new observations given everything absorbed before.
//
// Messages are kept unnormalized, so the total mass at a component's
// pivot is exactly the probability of that component's evidence; the
// product over components is the state's accumulated normalizer.
class PropagationState {
 public:
  // Throws unless the network's undirected skeleton is acyclic.
  explicit PropagationState(BeliefNetwork net);

  // Returns p(ev | previously absorbed evidence). A re-observation with
  // the same state is a no-op factor of 1; a contradictory one returns 0
  // and flags the state unusable (distinct from an invalid call, which
  // throws). After a zero-likelihood absorption the beliefs keep their
  // pre-evidence values.
  double absorb(const Evidence& ev);

  // p(v | absorbed evidence); sums to 1.
  const std::vector<double>& belief(int v) const;

  // Probability of everything absorbed so far; 1 when nothing absorbed.
  double evidence_probability() const { return evidence_prob_; }

  bool usable() const { return usable_; }
  int observed_state(int v) const { return observed_[v]; }
  const BeliefNetwork& network() const { return net_; }

 private:
  void sweep();
  // Message from `v` across the arc to neighbor `w`.
  void send_message(int v, int w_child, int parent_pos, bool v_is_parent);
  std::vector<double> lambda_times_obs(int v, int skip_child) const;
  std::vector<double> pi_self(int v) const;

  BeliefNetwork net_;
  std::vector<int> observed_;
  // child_arcs_[v]: (child c, position of v in c's parent list).
  std::vector<std::vector<std::pair<int, int>>> child_arcs_;
  // Messages keyed by (child, parent position).
  std::vector<std::vector<std::vector<double>>> pi_from_parent_;
  std::vector<std::vector<std::vector<double>>> lambda_to_parent_;
  std::vector<std::vector<double>> beliefs_;
  double evidence_prob_ = 1.0;
  bool usable_ = true;
};

}  // namespace bcond
