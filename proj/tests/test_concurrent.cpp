#include <doctest.h>

#include "bcond/concurrent.hpp"
#include "bcond/generator.hpp"
#include "bcond/oracle.hpp"
#include "fixtures.hpp"

using namespace bcond;
using namespace bcond::testing;

namespace {

EvidenceStream at_step_zero(const Evidence& ev) {
  EvidenceStream stream;
  stream.items.push_back({ev, 0});
  return stream;
}

}  // namespace

TEST_CASE("combine_bounds: identity, intersection, mismatches") {
  BoundSnapshot a;
  a.variables = {0};
  a.bounds = {{{0.2, 0.9}, {0.1, 0.8}}};
  auto one = combine_bounds({a});
  CHECK(one.bounds[0][0].lower == 0.2);
  CHECK(one.bounds[0][0].upper == 0.9);

  BoundSnapshot b = a;
  b.bounds = {{{0.4, 0.95}, {0.05, 0.6}}};
  auto both = combine_bounds({a, b});
  CHECK(both.bounds[0][0].lower == 0.4);
  CHECK(both.bounds[0][0].upper == 0.9);
  CHECK(both.bounds[0][1].lower == 0.1);
  CHECK(both.bounds[0][1].upper == 0.6);

  BoundSnapshot c;
  c.variables = {1};
  c.bounds = {{{0.0, 1.0}}};
  CHECK_THROWS_AS(combine_bounds({a, c}), Error);
  CHECK_THROWS_AS(combine_bounds({}), Error);
}

TEST_CASE("run_concurrent: budget zero emits only the initial snapshot") {
  auto net = make_diamond({0.3, 0.7});
  Evidence ev;
  ev.assignments[net.require_index("D")] = 0;
  auto run = run_concurrent(net, {find_loop_cutset(net),
                                  find_loop_cutset_alternate(net)},
                            at_step_zero(ev), 0);
  CHECK(run.solves_per_analysis == std::vector<std::int64_t>{0, 0});
  for (const auto& step : run.steps) CHECK(step.analysis == -1);
}

TEST_CASE("run_concurrent: identical cutsets track the fresher analysis") {
  auto net = make_diamond({0.3, 0.7});
  auto cs = find_loop_cutset(net);
  Evidence ev;
  ev.assignments[net.require_index("D")] = 0;
  auto run = run_concurrent(net, {cs, cs}, at_step_zero(ev), 100);
  for (const auto& step : run.steps) {
    if (step.analysis < 0) continue;
    const auto& snap = step.record.snapshot;
    for (std::size_t vi = 0; vi < snap.variables.size(); ++vi) {
      for (std::size_t x = 0; x < snap.bounds[vi].size(); ++x) {
        CHECK(step.combined.bounds[vi][x].lower == snap.bounds[vi][x].lower);
        CHECK(step.combined.bounds[vi][x].upper == snap.bounds[vi][x].upper);
      }
    }
  }
}

TEST_CASE("run_concurrent: containment, soundness, accounting") {
  for (std::uint64_t seed = 70; seed < 80; ++seed) {
    auto net = generate_random(sweep_params(seed, 10, 3));
    auto primary = find_loop_cutset(net);
    auto alternate = find_loop_cutset_alternate(net);
    REQUIRE(primary.members != alternate.members);
    const Evidence ev = random_evidence(net, seed, 1);
    auto expect = oracle::all_posteriors(net, ev);

    auto run = run_concurrent(net, {primary, alternate}, at_step_zero(ev),
                              10'000);
    std::int64_t solves = 0;
    for (const auto& step : run.steps) {
      solves += step.analysis >= 0;
      const auto& combined = step.combined;
      for (std::size_t vi = 0; vi < combined.variables.size(); ++vi) {
        const int v = combined.variables[vi];
        for (std::size_t x = 0; x < combined.bounds[vi].size(); ++x) {
          const double truth = expect.per_variable[v][x];
          CHECK(truth >= combined.bounds[vi][x].lower - 1e-9);
          CHECK(truth <= combined.bounds[vi][x].upper + 1e-9);
        }
      }
    }
    CHECK(solves ==
          run.solves_per_analysis[0] + run.solves_per_analysis[1]);
    CHECK(run.steps.back().combined.width <= 1e-9);

    // Per-step containment against the per-step snapshots.
    std::vector<Session> replay;
    replay.emplace_back(net, primary);
    replay.emplace_back(net, alternate);
    for (auto& s : replay) s.observe(ev);
    for (const auto& step : run.steps) {
      if (step.analysis < 0) continue;
      replay[step.analysis].solve_next();
      std::vector<BoundSnapshot> snaps;
      for (const auto& s : replay) snaps.push_back(s.current_bounds());
      for (std::size_t si = 0; si < snaps.size(); ++si) {
        for (std::size_t vi = 0; vi < snaps[si].variables.size(); ++vi) {
          for (std::size_t x = 0; x < snaps[si].bounds[vi].size(); ++x) {
            CHECK(step.combined.bounds[vi][x].lower >=
                  snaps[si].bounds[vi][x].lower - 1e-12);
            CHECK(step.combined.bounds[vi][x].upper <=
                  snaps[si].bounds[vi][x].upper + 1e-12);
          }
        }
      }
      const double min_width =
          std::min(snaps[0].width, snaps[1].width);
      CHECK(step.combined.width <= min_width + 1e-12);
    }
  }
}
