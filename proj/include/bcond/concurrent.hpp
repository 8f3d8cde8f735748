#pragma once

#include <vector>

#include "bcond/bounded.hpp"

namespace bcond {

// Intersection of several sound bound sets over identical variables:
// greatest lower and least upper bound per variable-state.
struct CombinedBounds {
  std::vector<int> variables;
  std::vector<std::vector<WeightInterval>> bounds;
  double width = 0.0;
};

CombinedBounds combine_bounds(const std::vector<BoundSnapshot>& snapshots);

enum class ConcurrentSchedule { RoundRobin };

struct ConcurrentStep {
  std::int64_t work = 0;   // total work units charged so far (post-init)
  int analysis = -1;       // which analysis solved (-1 for markers)
  StepRecord record;       // that analysis' step
  CombinedBounds combined; // intersection across all analyses
};

struct ConcurrentRun {
  std::vector<Session> sessions;
  std::vector<ConcurrentStep> steps;
  std::vector<std::int64_t> solves_per_analysis;
};

// Runs one bounded analysis per cutset over the same evidence stream,
// default round-robin, one solve per analysis per turn. Arrival steps
// count total work units across analyses. `budget` caps post-init solves.
ConcurrentRun run_concurrent(const BeliefNetwork& net,
                             const std::vector<Cutset>& cutsets,
                             const EvidenceStream& stream,
                             std::int64_t budget,
                             ConcurrentSchedule schedule =
                                 ConcurrentSchedule::RoundRobin,
                             SessionOptions options = {});

}  // namespace bcond
