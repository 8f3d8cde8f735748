#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "bcond/conditioning.hpp"
#include "bcond/cutset.hpp"
#include "bcond/network.hpp"
#include "bcond/parallel.hpp"

namespace bcond {

// Anytime bound refinement over cutset instances.
//
// Weights are exact per instance while no evidence is in play (they are
// joint masses, no normalizer involved), so the initialization phase and
// any "exact weights" ledger carry degenerate intervals. Once evidence
// arrives, a weight is a normalized quantity whose denominator is only
// partially known, and every instance carries an interval instead:
//
//   solved    w in [ num^L / (Sum num^U + unsolved caps),  num^U / Sum num^L ]
//   stale     w in [ 0, cap / Sum num^L ]      cap = previous upper weight
//   frozen    w in [ 0, U' ]                   U' fixed when evidence arrived
//
// where num = (likelihood of the new evidence in the instance) times the
// instance's previous weight interval, sums run over instances solved
// under the current evidence, and U' divides the previous upper weight by
// the residual-mass denominator (see freeze_upper_bound): cap / (Sum w^L +
// [1 - Sum w^U]) over the instances that were current when the evidence
// arrived. Instances pending when evidence arrives can still be solved;
// instances that were already stale can never be and freeze permanently.

enum class InstanceStatus { SolvedCurrent, SolvedStale, Frozen };

struct WeightInterval {
  double lower = 0.0;
  double upper = 0.0;
};

struct InstanceEntry {
  InstanceStatus status = InstanceStatus::SolvedStale;
  // Weight interval at the close of the previous evidence epoch; the
  // exact prior mass before any evidence. Upper side doubles as the
  // Eq.-3 numerator cap and as the pending-queue sort key.
  double prev_lower = 0.0;
  double prev_upper = 0.0;
  // Current-epoch solve results (SolvedCurrent only).
  double likelihood = 0.0;
  double num_lower = 0.0;
  double num_upper = 0.0;
  // Current interval, upper clamped to 1; raw value kept for audit.
  double w_lower = 0.0;
  double w_upper = 0.0;
  double w_upper_raw = 0.0;
  std::vector<std::vector<double>> beliefs;  // per node, SolvedCurrent only
  bool beliefs_usable = false;
};

struct InstanceLedger {
  // True while weights are exact masses (initialization, or a test ledger
  // fed exact posterior weights): intervals are degenerate and the bound
  // width is exactly the unsolved mass.
  bool exact_weights = true;
  bool tightened_normalization = false;
  std::vector<int> cardinalities;  // states per network variable
  std::vector<InstanceEntry> entries;
  int solved_current = 0;   // h
  int solved_previous = 0;  // j

  int total() const { return static_cast<int>(entries.size()); }
};

// Recomputes every non-frozen interval from the recorded numerators.
void weight_bounds(InstanceLedger& ledger);

// Per-state posterior interval for one variable.
std::vector<WeightInterval> posterior_bounds(const InstanceLedger& ledger,
                                             int variable);

struct BoundSnapshot {
  std::int64_t step = 0;
  std::vector<int> variables;  // tracked variable ids
  std::vector<std::vector<WeightInterval>> bounds;  // parallel to variables
  double width = 0.0;  // max over tracked variable-states of upper - lower
};

struct StepRecord {
  std::int64_t step = 0;     // total work units, initialization included
  int epoch = 0;             // 0 = initialization
  std::int64_t instance = -1;  // -1 for markers (session start, observe)
  double instance_weight_upper = 0.0;  // solved instance's upper weight
  BoundSnapshot snapshot;
};

struct SessionOptions {
  ExecPolicy policy = default_policy();
  bool tightened_normalization = false;
  // Evaluation aid: solve pending instances lightest-first instead of the
  // default heaviest-first.
  bool sort_ascending = false;
  std::uint64_t max_instances = std::uint64_t{1} << 22;
  // Variables to track in snapshots; empty tracks all non-evidence ones.
  std::vector<int> tracked;
  // Large batch runs can skip per-step snapshots in the trace.
  bool record_trace = true;
};

struct StopCriteria {
  std::optional<double> epsilon;        // stop when width <= epsilon
  std::optional<std::int64_t> budget;   // max further solve steps
};

class Session {
 public:
  // Solves every instance for the prior (one trace step each, heaviest
  // weight first) and ends in the completely solved state.
  Session(BeliefNetwork net, Cutset cs, SessionOptions options = {});

  // Rolls the ledger into a new evidence epoch: current instances become
  // pending, instances never solved under the previous evidence freeze
  // with their upper bounds fixed, and bounds restart from the new
  // intervals.
  void observe(const Evidence& ev);

  // Pending instances, heaviest upper weight first, ties by index.
  std::vector<std::uint64_t> order_pending() const;
  bool has_pending() const;

  // Solves the head of the pending queue against the current evidence.
  StepRecord solve_next();

  // Runs solve_next until a criterion is met or nothing is pending.
  void run_until(const StopCriteria& stop);

  BoundSnapshot current_bounds() const;
  std::vector<WeightInterval> posterior(int variable) const;

  const InstanceLedger& ledger() const { return ledger_; }
  const std::vector<StepRecord>& trace() const { return trace_; }
  const BeliefNetwork& network() const { return net_; }
  const Cutset& cutset() const { return cutset_; }
  int epoch() const { return epoch_; }
  std::int64_t work_units() const { return work_units_; }
  std::int64_t work_since_init() const;
  // All instances solved under the current evidence.
  bool complete() const;
  // Every instance solved, jointly impossible evidence.
  bool impossible_evidence() const { return impossible_; }
  const std::vector<Evidence>& evidence_history() const { return items_; }

 private:
  void record_marker();
  StepRecord integrate_solution(std::uint64_t index, InstanceSolution solution);
  std::vector<int> tracked_variables() const;
  BoundSnapshot make_snapshot() const;

  BeliefNetwork net_;
  Cutset cutset_;
  SessionOptions options_;
  std::vector<CutsetInstance> instances_;
  InstanceLedger ledger_;
  std::vector<Evidence> items_;
  std::vector<StepRecord> trace_;
  std::int64_t work_units_ = 0;
  std::int64_t init_units_ = 0;
  int epoch_ = 0;
  bool impossible_ = false;
};

// Replays an evidence stream: each item becomes visible when the
// post-initialization solve counter reaches its arrival step. Items still
// queued when solving stops early are observed at the final counter so
// the session ends reflecting all evidence.
Session run_with_stream(BeliefNetwork net, Cutset cs,
                        const EvidenceStream& stream,
                        const StopCriteria& stop,
                        SessionOptions options = {});

}  // namespace bcond
