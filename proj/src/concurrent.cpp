#include "bcond/concurrent.hpp"

#include <algorithm>

namespace bcond {

CombinedBounds combine_bounds(const std::vector<BoundSnapshot>& snapshots) {
  if (snapshots.empty()) throw Error("combine_bounds: no snapshots");
  const auto& first = snapshots.front();
  for (const auto& snap : snapshots) {
    if (snap.variables != first.variables) {
      throw Error("combine_bounds: snapshots track different variables");
    }
  }
  CombinedBounds out;
  out.variables = first.variables;
  out.bounds = first.bounds;
  for (std::size_t s = 1; s < snapshots.size(); ++s) {
    const auto& snap = snapshots[s];
    for (std::size_t v = 0; v < out.bounds.size(); ++v) {
      if (snap.bounds[v].size() != out.bounds[v].size()) {
        throw Error("combine_bounds: snapshots disagree on state counts");
      }
      for (std::size_t x = 0; x < out.bounds[v].size(); ++x) {
        out.bounds[v][x].lower =
            std::max(out.bounds[v][x].lower, snap.bounds[v][x].lower);
        out.bounds[v][x].upper =
            std::min(out.bounds[v][x].upper, snap.bounds[v][x].upper);
      }
    }
  }
  double width = 0.0;
  for (const auto& states : out.bounds) {
    for (const auto& iv : states) {
      width = std::max(width, iv.upper - iv.lower);
    }
  }
  out.width = width;
  return out;
}

ConcurrentRun run_concurrent(const BeliefNetwork& net,
                             const std::vector<Cutset>& cutsets,
                             const EvidenceStream& stream, std::int64_t budget,
                             ConcurrentSchedule schedule,
                             SessionOptions options) {
  if (cutsets.empty()) throw Error("run_concurrent: need at least one cutset");
  if (budget < 0) throw Error("run_concurrent: budget must be >= 0");
  (void)schedule;  // RoundRobin is the only schedule

  ConcurrentRun run;
  run.sessions.reserve(cutsets.size());
  for (const auto& cs : cutsets) {
    run.sessions.emplace_back(net, cs, options);
  }
  const std::size_t analyses = run.sessions.size();
  run.solves_per_analysis.assign(analyses, 0);

  std::int64_t work = 0;
  std::size_t next_item = 0;

  auto combined_now = [&] {
    std::vector<BoundSnapshot> snaps;
    snaps.reserve(analyses);
    for (const auto& s : run.sessions) snaps.push_back(s.current_bounds());
    return combine_bounds(snaps);
  };
  auto push_marker = [&] {
    ConcurrentStep step;
    step.work = work;
    step.analysis = -1;
    step.combined = combined_now();
    run.steps.push_back(std::move(step));
  };
  auto deliver_due = [&] {
    while (next_item < stream.items.size() &&
           stream.items[next_item].arrival_step <= work) {
      for (auto& s : run.sessions) s.observe(stream.items[next_item].evidence);
      ++next_item;
      push_marker();
    }
  };

  deliver_due();
  push_marker();  // initial combined snapshot

  std::size_t turn = 0;
  while (work < budget) {
    int chosen = -1;
    for (std::size_t i = 0; i < analyses; ++i) {
      const std::size_t idx = (turn + i) % analyses;
      if (run.sessions[idx].has_pending()) {
        chosen = static_cast<int>(idx);
        turn = idx + 1;
        break;
      }
    }
    if (chosen < 0) {
      if (next_item < stream.items.size()) {
        // Nothing left to solve; later evidence is taken up immediately.
        for (auto& s : run.sessions) {
          s.observe(stream.items[next_item].evidence);
        }
        ++next_item;
        push_marker();
        continue;
      }
      break;
    }
    ConcurrentStep step;
    step.record = run.sessions[chosen].solve_next();
    ++work;
    ++run.solves_per_analysis[chosen];
    step.work = work;
    step.analysis = chosen;
    step.combined = combined_now();
    run.steps.push_back(std::move(step));
    deliver_due();
  }
  return run;
}

}  // namespace bcond
